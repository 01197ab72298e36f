//! Cross-checks of the production structures against [`crate::oracles`].
//!
//! Each check returns the first disagreement as a [`Finding`] carrying the
//! trie in edge-list form, so a failure can be replayed from the CLI.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::formats::write_edge_list;
use crate::index::TrieIndex;
use crate::oracles;
use crate::range_index::GridSeq;
use crate::runs::{enumerate_runs, Parallelism};
use crate::suffix_order::LexOrder;
use crate::trie::{Label, NodeId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub structure: &'static str,
    pub query: String,
    /// The trie in edge-list format.
    pub trie: String,
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} disagrees with its oracle on {}", self.structure, self.query)?;
        write!(f, "{}", self.trie)
    }
}

#[derive(Clone, Debug, Default)]
pub struct OracleReport {
    pub checks: Vec<(&'static str, Option<Finding>)>,
    /// Number of individual comparisons performed per check.
    pub comparisons: Vec<(&'static str, u64)>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, f)| f.is_none())
    }

    pub fn first_failure(&self) -> Option<&Finding> {
        self.checks.iter().find_map(|(_, f)| f.as_ref())
    }
}

type Check = Result<u64, (String, &'static str)>;

fn fail<T>(structure: &'static str, query: String) -> Result<T, (String, &'static str)> {
    Err((query, structure))
}

/// Ranks, reversed ranks, and adjacent LCPs against materialized sorting.
pub fn check_suffix_order(index: &TrieIndex) -> Check {
    let trie = index.trie();
    let so = index.suffixes();
    let sorted = oracles::naive_suffix_sort(trie, LexOrder::Natural);
    for (r, &v) in sorted.iter().enumerate() {
        if so.isa0(v) != r as u32 + 1 {
            return fail("suffix_order", format!("isa0({v}) = {}, expected {}", so.isa0(v), r + 1));
        }
    }
    let reversed = oracles::naive_suffix_sort(trie, LexOrder::Reversed);
    for (r, &v) in reversed.iter().enumerate() {
        if so.isa1(v) != r as u32 + 1 {
            return fail("suffix_order", format!("isa1({v}) = {}, expected {}", so.isa1(v), r + 1));
        }
    }
    for r in 2..=sorted.len() {
        let want = oracles::naive_lcp(trie, sorted[r - 2], sorted[r - 1]);
        if so.lcp0(r as u32) != want {
            return fail("suffix_order", format!("lcp0[{r}] = {}, expected {want}", so.lcp0(r as u32)));
        }
    }
    Ok(2 * sorted.len() as u64)
}

/// `lce_to_root` on `queries` random pairs (or all pairs when there are fewer).
pub fn check_lce_to_root(index: &TrieIndex, rng: &mut impl Rng, queries: usize) -> Check {
    let trie = index.trie();
    let n = trie.node_count() as u32;
    if n < 2 {
        return Ok(0);
    }
    let all = (n as usize) * (n as usize - 1) <= queries;
    let pairs: Vec<(u32, u32)> = if all {
        (1..=n).flat_map(|u| (1..=n).filter(move |&v| v != u).map(move |v| (u, v))).collect()
    } else {
        (0..queries)
            .map(|_| loop {
                let (u, v) = (rng.gen_range(1..=n), rng.gen_range(1..=n));
                if u != v {
                    break (u, v);
                }
            })
            .collect()
    };
    for &(u, v) in &pairs {
        let (u, v) = (NodeId(u), NodeId(v));
        let got = index.suffixes().lce_to_root(u, v).expect("distinct real nodes");
        let want = oracles::naive_lcp(trie, u, v);
        if got != want {
            return fail("lce_to_root", format!("lce_to_root({u}, {v}) = {got}, expected {want}"));
        }
    }
    Ok(pairs.len() as u64)
}

/// NSV against an ancestor scan, and Lyndon lengths against Duval's first factor.
pub fn check_lyndon(index: &TrieIndex) -> Check {
    let trie = index.trie();
    let so = index.suffixes();
    let ly = index.lyndon();
    let mut compared = 0;
    for order in LexOrder::BOTH {
        let mut rank = vec![0u32; trie.node_count() + 1];
        for v in trie.nodes() {
            rank[v.index()] = so.rank(v, order);
        }
        let naive = oracles::naive_nsv_on_trie(trie, &rank);
        for v in trie.nodes() {
            compared += 1;
            if ly.nsv(v, order) != naive[v.index()] {
                return fail(
                    "lyndon_nsv",
                    format!("nsv[{order:?}]({v}) = {}, expected {}", ly.nsv(v, order), naive[v.index()]),
                );
            }
            if v == NodeId::ROOT {
                continue;
            }
            let s = trie.suffix(v);
            let want = oracles::longest_lyndon_prefix_len(&s, order);
            let got = ly.llen(v, order) as usize;
            if got != want || !oracles::is_lyndon(&s[..got], order) {
                return fail("lyndon_nsv", format!("llen[{order:?}]({v}) = {got}, expected {want}"));
            }
        }
    }
    Ok(compared)
}

fn column(index: &TrieIndex, seq: GridSeq) -> Vec<u32> {
    let orders = index.orders();
    (1..=index.trie().node_count() as u32)
        .map(|x| {
            let v = orders.node_at_bfs(x);
            match seq {
                GridSeq::Pre => orders.pre(v),
                GridSeq::Post => orders.post(v),
                GridSeq::Lex => index.suffixes().isa0(v),
            }
        })
        .collect()
}

/// Range predecessor/successor on random intervals of all three sequences.
pub fn check_range_queries(index: &TrieIndex, rng: &mut impl Rng, queries: usize) -> Check {
    let n = index.trie().node_count() as u32;
    let grid = index.grid();
    let cols = [GridSeq::Pre, GridSeq::Post, GridSeq::Lex].map(|s| (s, column(index, s)));
    for q in 0..queries {
        let (seq, ys) = &cols[q % 3];
        let x1 = rng.gen_range(1..=n);
        let x2 = rng.gen_range(x1..=n);
        let y = rng.gen_range(0..=n + 1);
        let got = (grid.range_pred(*seq, x1, x2, y).unwrap(), grid.range_succ(*seq, x1, x2, y).unwrap());
        let want = (oracles::naive_range_pred(ys, x1, x2, y), oracles::naive_range_succ(ys, x1, x2, y));
        if got != want {
            return fail("range_index", format!("{seq:?} [{x1}, {x2}] y={y}: got {got:?}, expected {want:?}"));
        }
    }
    Ok(2 * queries as u64)
}

/// Descendant intervals and depth-constrained LCE on random (node, depth) pairs.
pub fn check_lce_down(index: &TrieIndex, rng: &mut impl Rng, queries: usize) -> Check {
    let trie = index.trie();
    let grid = index.grid();
    let n = trie.node_count() as u32;
    let max_d = trie.max_sdepth();
    if max_d < 2 {
        return Ok(0);
    }
    let mut done = 0;
    for _ in 0..queries {
        let v = NodeId(rng.gen_range(1..=n));
        if trie.sdepth(v) >= max_d {
            continue;
        }
        let d = rng.gen_range(trie.sdepth(v) + 1..=max_d);
        done += 1;
        let naive_nodes = oracles::naive_descendants_at_depth(trie, v, d);
        let interval: Vec<NodeId> = match grid.descendants_at_depth(v, d).unwrap() {
            Some((i, j)) => (i..=j).map(|x| index.orders().node_at_bfs(x)).collect(),
            None => Vec::new(),
        };
        if interval != naive_nodes {
            return fail(
                "range_index",
                format!("descendants_at_depth({v}, {d}) = {interval:?}, expected {naive_nodes:?}"),
            );
        }
        let got = grid.lce_down(index.suffixes(), v, d).unwrap();
        let want = oracles::naive_lce_down(trie, v, d);
        let ok = match (got, want) {
            (None, None) => true,
            (Some((u, l)), Some(w)) => l == w && oracles::naive_lcp(trie, u, v) == w && naive_nodes.contains(&u),
            _ => false,
        };
        if !ok {
            return fail("lce_down", format!("lce_down({v}, {d}) = {got:?}, expected lcp {want:?}"));
        }
    }
    Ok(done)
}

/// The full run set against the pair scan, plus per-record materialization checks.
pub fn check_runs(index: &TrieIndex) -> Check {
    let trie = index.trie();
    let runs = match enumerate_runs(index, Parallelism::Sequential) {
        Ok(r) => r,
        Err(e) => return fail("runs_engine", e.to_string()),
    };
    for r in &runs {
        if let Err(why) = oracles::check_run(trie, r) {
            return fail("runs_engine", format!("{r:?}: {why}"));
        }
    }
    let got: std::collections::BTreeSet<_> = runs.iter().copied().collect();
    let want = oracles::trie_runs_bruteforce(trie);
    if got != want {
        let missing: Vec<_> = want.difference(&got).collect();
        let extra: Vec<_> = got.difference(&want).collect();
        return fail("runs_engine", format!("missing {missing:?}, unexpected {extra:?}"));
    }
    Ok(runs.len() as u64)
}

/// Runs every check on one trie.
pub fn cross_check(index: &TrieIndex, queries: usize, seed: u64) -> OracleReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let results: Vec<(&'static str, Check)> = vec![
        ("suffix_order", check_suffix_order(index)),
        ("lce_to_root", check_lce_to_root(index, &mut rng, queries)),
        ("lyndon_nsv", check_lyndon(index)),
        ("range_index", check_range_queries(index, &mut rng, queries)),
        ("lce_down", check_lce_down(index, &mut rng, queries)),
        ("runs_engine", check_runs(index)),
    ];
    let mut report = OracleReport::default();
    for (name, res) in results {
        match res {
            Ok(n) => {
                report.comparisons.push((name, n));
                report.checks.push((name, None));
            }
            Err((query, structure)) => {
                report.comparisons.push((name, 0));
                report.checks.push((name, Some(Finding { structure, query, trie: write_edge_list(index.trie()) })));
            }
        }
    }
    report
}

/// Symbols of a path trie's leaf-to-root word, without the sentinel.
pub fn path_word(index: &TrieIndex) -> Option<Vec<Label>> {
    let trie = index.trie();
    let leaf = trie.nodes().last()?;
    if trie.sdepth(leaf) as usize != trie.node_count() {
        return None;
    }
    let mut s = trie.suffix(leaf);
    s.pop();
    Some(s)
}
