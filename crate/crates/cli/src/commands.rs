use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;

use serde::Serialize;
use trie_runs::formats::{parse_edge_list, parse_string_set, write_dot, write_edge_list, ParseError};
use trie_runs::generate::{generate, GenKind, GeneratorSpec};
use trie_runs::runs::count_runs;
use trie_runs::{
    enumerate_runs, run_stats, CommonSuffixTrie, Direction, Label, LexOrder, Parallelism, RunRecord, RunStats,
    TrieIndex,
};

use crate::fail::{Fail, PARSE};
use crate::{DirectionArg, DotArgs, Format, GenArgs, GenSpecArgs, InputArgs, KindArg, RunsArgs, StatsArgs};

pub fn read_input(path: Option<&Path>) -> Result<Vec<u8>, Fail> {
    match path {
        Some(p) => fs::read(p).map_err(|e| Fail::new(PARSE, format!("{}: {e}", p.display()))),
        None => {
            let mut buf = Vec::new();
            io::stdin().read_to_end(&mut buf)?;
            Ok(buf)
        }
    }
}

pub fn write_output(path: Option<&Path>, text: &str) -> Result<(), Fail> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

pub fn load_trie(args: &InputArgs) -> Result<CommonSuffixTrie, Fail> {
    let bytes = read_input(args.input.as_deref())?;
    let text =
        String::from_utf8(bytes).map_err(|e| ParseError { line: 0, message: format!("input is not UTF-8: {e}") })?;
    let trie = match args.format {
        Format::Edges => CommonSuffixTrie::from_edges(&parse_edge_list(&text)?)?,
        Format::Strings => {
            let direction = match args.direction {
                DirectionArg::Leafward => Direction::Leafward,
                DirectionArg::Rootward => Direction::Rootward,
            };
            CommonSuffixTrie::from_strings(&parse_string_set(&text)?, direction)?
        }
    };
    Ok(trie)
}

/// Worker count for `--parallel`: all cores, capped by `TRIE_RUNS_THREADS`.
pub fn parallelism(parallel: bool) -> Result<Parallelism, Fail> {
    if !parallel {
        return Ok(Parallelism::Sequential);
    }
    let mut n = std::thread::available_parallelism().map_or(1, |n| n.get());
    if let Ok(cap) = std::env::var("TRIE_RUNS_THREADS") {
        let cap: usize = cap
            .trim()
            .parse()
            .map_err(|_| Fail::new(PARSE, format!("TRIE_RUNS_THREADS must be a positive integer, got {cap:?}")))?;
        n = n.min(cap.max(1));
    }
    Ok(Parallelism::Threads(n))
}

pub fn generator_spec(args: &GenSpecArgs, size: usize) -> Result<GeneratorSpec, Fail> {
    let kind = match args.kind {
        KindArg::Random => GenKind::Random,
        KindArg::Path => GenKind::Path,
        KindArg::FibonacciPath => GenKind::FibonacciPath,
        KindArg::ThueMorsePath => GenKind::ThueMorsePath,
        KindArg::Caterpillar => GenKind::Caterpillar,
    };
    let mut spec = GeneratorSpec::new(kind, size, args.alphabet, args.branching, args.seed);
    if let Some(p) = &args.pattern {
        if kind != GenKind::Path {
            return Err(Fail::new(PARSE, "--pattern applies to the path kind only"));
        }
        spec.pattern = Some(p.bytes().map(Label::from).collect());
    }
    Ok(spec)
}

pub fn gen(args: &GenArgs) -> Result<(), Fail> {
    let trie = generate(&generator_spec(&args.spec, args.size)?)?;
    write_output(args.output.as_deref(), &write_edge_list(&trie))
}

#[derive(Serialize)]
struct RunJson {
    deep: u32,
    shallow: u32,
    period: u32,
    length: u32,
    exponent_num: u64,
    exponent_den: u64,
}

impl From<&RunRecord> for RunJson {
    fn from(r: &RunRecord) -> Self {
        let e = r.exponent();
        RunJson {
            deep: r.deep.0,
            shallow: r.shallow.0,
            period: r.period,
            length: r.length,
            exponent_num: *e.numer(),
            exponent_den: *e.denom(),
        }
    }
}

#[derive(Serialize)]
struct StatsJson {
    count: u64,
    edge_count: u64,
    runs_per_edge: String,
    sum_exponents: String,
    sum_floor_exponent_minus_one: u64,
    max_exponent: Option<String>,
    /// `[period, count]` pairs by increasing period.
    histogram: Vec<[u64; 2]>,
}

impl From<&RunStats> for StatsJson {
    fn from(s: &RunStats) -> Self {
        StatsJson {
            count: s.count,
            edge_count: s.edge_count,
            runs_per_edge: format!("{}/{}", s.count, s.edge_count),
            sum_exponents: format!("{}/{}", s.sum_exponents.numer(), s.sum_exponents.denom()),
            sum_floor_exponent_minus_one: s.sum_floor_exponent_minus_one,
            max_exponent: s.max_exponent.map(|e| format!("{}/{}", e.numer(), e.denom())),
            histogram: s.histogram.iter().map(|(&p, &c)| [u64::from(p), c]).collect(),
        }
    }
}

fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn plural(n: usize) -> &'static str {
    if n == 1 {
        ""
    } else {
        "s"
    }
}

fn summary_line(s: &RunStats) -> String {
    format!(
        "{} run{} over {} edges; sum of exponents {}; max exponent {}",
        s.count,
        plural(s.count as usize),
        s.edge_count,
        s.sum_exponents,
        s.max_exponent.map_or("-".to_string(), |e| e.to_string()),
    )
}

pub fn runs(args: &RunsArgs) -> Result<(), Fail> {
    let par = parallelism(args.parallel)?;
    let index = TrieIndex::build(load_trie(&args.input)?);
    let runs = enumerate_runs(&index, par)?;
    let records: Vec<RunJson> = runs.iter().map(RunJson::from).collect();
    write_output(args.output.as_deref(), &to_json(&records))?;
    let stats = run_stats(&runs, index.trie());
    if args.stats {
        eprint!("{}", to_json(&StatsJson::from(&stats)));
    } else {
        eprintln!("{}", summary_line(&stats));
    }
    Ok(())
}

pub fn count(args: &RunsArgs) -> Result<(), Fail> {
    let par = parallelism(args.parallel)?;
    let index = TrieIndex::build(load_trie(&args.input)?);
    let confirmed = count_runs(&index, par)?;
    let n = confirmed.len();
    let mut out = format!("{n} run{}", plural(n));
    if n > 0 {
        let list: Vec<String> = confirmed.iter().map(|c| format!("({}, p={})", c.shallow, c.period)).collect();
        write!(out, "; shallow endpoints: [{}]", list.join(", ")).unwrap();
    }
    out.push('\n');
    write_output(args.output.as_deref(), &out)
}

fn dump_suffixes(index: &TrieIndex) -> String {
    let so = index.suffixes();
    let mut out = String::from("rank\tnode\tsdepth\tisa0\tisa1\tlcp0\n");
    for (i, &v) in so.sorted_nodes().iter().enumerate() {
        let r = i as u32 + 1;
        writeln!(out, "{r}\t{}\t{}\t{}\t{}\t{}", v.0, index.trie().sdepth(v), so.isa0(v), so.isa1(v), so.lcp0(r))
            .unwrap();
    }
    out
}

fn dump_lyndon(index: &TrieIndex) -> String {
    let ly = index.lyndon();
    let mut out = String::from("node\tnsv0\tllen0\tnsv1\tllen1\n");
    for v in index.trie().nodes() {
        let [n0, n1] = LexOrder::BOTH.map(|o| ly.nsv(v, o).0);
        let [l0, l1] = LexOrder::BOTH.map(|o| ly.llen(v, o));
        writeln!(out, "{}\t{n0}\t{l0}\t{n1}\t{l1}", v.0).unwrap();
    }
    out
}

pub fn stats(args: &StatsArgs) -> Result<(), Fail> {
    let par = parallelism(args.parallel)?;
    let index = TrieIndex::build(load_trie(&args.input)?);
    let text = if args.dump_suffixes {
        dump_suffixes(&index)
    } else if args.dump_lyndon {
        dump_lyndon(&index)
    } else {
        let runs = enumerate_runs(&index, par)?;
        to_json(&StatsJson::from(&run_stats(&runs, index.trie())))
    };
    write_output(args.output.as_deref(), &text)
}

pub fn export_dot(args: &DotArgs) -> Result<(), Fail> {
    let index = TrieIndex::build(load_trie(&args.input)?);
    let highlight = match args.highlight {
        None => None,
        Some(i) => {
            let runs = enumerate_runs(&index, Parallelism::Sequential)?;
            let n = runs.len();
            let r = *runs
                .get(i)
                .ok_or_else(|| Fail::new(PARSE, format!("run index {i} out of range ({n} run{})", plural(n))))?;
            Some(r)
        }
    };
    write_output(args.output.as_deref(), &write_dot(index.trie(), highlight.as_ref()))
}
