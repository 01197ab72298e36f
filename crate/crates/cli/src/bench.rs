use std::fmt::Write as _;
use std::time::{Duration, Instant};

use serde::Deserialize;
use trie_runs::generate::generate;
use trie_runs::runs::enumerate_runs_counted;
use trie_runs::{run_stats, TrieIndex};

use crate::commands::{generator_spec, parallelism, read_input, write_output};
use crate::fail::{Fail, INTERNAL, PARSE};
use crate::BenchArgs;

const DEFAULT_THRESHOLDS: &str = include_str!("../bench_thresholds.toml");

#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Thresholds {
    pub max_step_ratio_per_decade: f64,
    pub max_normalized_growth: f64,
    pub min_timed_us: u64,
}

impl Thresholds {
    pub fn parse(text: &str) -> Result<Self, Fail> {
        toml::from_str(text).map_err(|e| Fail::new(PARSE, format!("bad thresholds file: {e}")))
    }
}

struct Row {
    n: u64,
    edges: u64,
    build: [Duration; 4],
    runs_time: Duration,
    candidates: u64,
    lce_root: u64,
    lce_down: u64,
    runs: u64,
    sum_exponents: String,
    sum_floor: u64,
}

impl Row {
    fn total(&self) -> Duration {
        self.build.iter().sum::<Duration>() + self.runs_time
    }
}

fn us(d: Duration) -> u128 {
    d.as_micros()
}

/// Warnings for rows whose timing grows faster than the thresholds allow.
fn advisories(rows: &[Row], th: &Thresholds) -> Vec<String> {
    let timed: Vec<&Row> = rows.iter().filter(|r| us(r.total()) >= u128::from(th.min_timed_us)).collect();
    let mut out = Vec::new();
    for w in timed.windows(2) {
        let ratio = w[1].total().as_secs_f64() / w[0].total().as_secs_f64();
        let decades = (w[1].n as f64 / w[0].n as f64).log10();
        let limit = th.max_step_ratio_per_decade.powf(decades);
        if ratio > limit {
            out.push(format!("N {} -> {}: time ratio {ratio:.2} exceeds {limit:.2}", w[0].n, w[1].n));
        }
    }
    let norm = |r: &Row| r.total().as_secs_f64() / (r.n as f64 * (r.n as f64).log2().powi(2));
    if let Some(first) = timed.first() {
        for r in &timed[1..] {
            let g = norm(r) / norm(first);
            if g > th.max_normalized_growth {
                out.push(format!(
                    "N {}: t/(N log^2 N) grew {g:.2}x over N {}, above {}",
                    r.n, first.n, th.max_normalized_growth
                ));
            }
        }
    }
    out
}

pub fn run(args: &BenchArgs) -> Result<(), Fail> {
    if args.sizes.is_empty() || args.sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Fail::new(PARSE, "--sizes must be non-empty and strictly ascending"));
    }
    let thresholds = match &args.thresholds {
        Some(p) => Thresholds::parse(&String::from_utf8_lossy(&read_input(Some(p))?))?,
        None => Thresholds::parse(DEFAULT_THRESHOLDS)?,
    };
    let par = parallelism(args.parallel)?;
    let mut rows = Vec::new();
    for &n in &args.sizes {
        let trie = generate(&generator_spec(&args.spec, n)?)?;
        let (index, timings) = TrieIndex::build_timed(trie);
        let t = Instant::now();
        let (runs, counts) = enumerate_runs_counted(&index, par)?;
        let runs_time = t.elapsed();
        let stats = run_stats(&runs, index.trie());
        rows.push(Row {
            n: index.trie().node_count() as u64,
            edges: stats.edge_count,
            build: [timings.orders, timings.suffixes, timings.lyndon, timings.grid],
            runs_time,
            candidates: counts.candidates,
            lce_root: counts.lce_root,
            lce_down: counts.lce_down,
            runs: stats.count,
            sum_exponents: stats.sum_exponents.to_string(),
            sum_floor: stats.sum_floor_exponent_minus_one,
        });
    }

    let mut out = String::from("n\tedges");
    if !args.counts_only {
        out.push_str("\torders_us\tsuffixes_us\tlyndon_us\tgrid_us\truns_us\ttotal_us\tcumulative_us");
    }
    out.push_str(
        "\tcandidates\tlce_root\tlce_down\truns\truns_per_edge\tsum_exponents\tsum_floor_exponent_minus_one\n",
    );
    let mut cumulative = Duration::ZERO;
    for r in &rows {
        write!(out, "{}\t{}", r.n, r.edges).unwrap();
        if !args.counts_only {
            cumulative += r.total();
            for d in r.build.iter().chain([&r.runs_time, &r.total(), &cumulative]) {
                write!(out, "\t{}", us(*d)).unwrap();
            }
        }
        writeln!(
            out,
            "\t{}\t{}\t{}\t{}\t{}/{}\t{}\t{}",
            r.candidates, r.lce_root, r.lce_down, r.runs, r.runs, r.edges, r.sum_exponents, r.sum_floor
        )
        .unwrap();
    }
    write_output(args.output.as_deref(), &out)?;

    if !args.counts_only {
        for warning in advisories(&rows, &thresholds) {
            eprintln!("advisory: {warning}");
        }
    }
    for r in &rows {
        if r.runs >= r.edges {
            return Err(Fail::new(INTERNAL, format!("N {}: {} runs is not below {} edges", r.n, r.runs, r.edges)));
        }
        if r.sum_floor > 2 * (r.n - 1) {
            return Err(Fail::new(INTERNAL, format!("N {}: exponent sum {} exceeds 2(N-1)", r.n, r.sum_floor)));
        }
    }
    Ok(())
}
