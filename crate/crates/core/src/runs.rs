//! Run enumeration.
//!
//! Every run has, for the order under which the label following its shallow
//! end is smaller than the label one period earlier, an L-root occurrence that
//! is a longest Lyndon prefix. Each node's longest Lyndon prefix is therefore
//! a candidate. A candidate is kept only if it is the last L-root occurrence
//! before the shallow end (`z < p`) and the mismatch at the shallow end agrees
//! with its order; it is confirmed if the period reaches `2p` below the
//! shallow end, and the deep end is then found by extending toward the leaves.

use std::collections::BTreeMap;

use num::rational::{BigRational, Ratio};
use num::{BigInt, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::index::TrieIndex;
use crate::suffix_order::LexOrder;
use crate::trie::{CommonSuffixTrie, NodeId};

/// A longest Lyndon prefix `str(deep, end)` considered as an L-root.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub deep: NodeId,
    pub end: NodeId,
    pub period: u32,
    pub order: LexOrder,
}

/// A candidate that passed confirmation. `anchor` lies on the run's path
/// exactly `2 * period` edges below `shallow`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Confirmation {
    pub shallow: NodeId,
    pub anchor: NodeId,
    pub period: u32,
    pub candidate: Candidate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RunRecord {
    pub deep: NodeId,
    pub shallow: NodeId,
    pub period: u32,
    pub length: u32,
}

impl RunRecord {
    /// `length / period`, reduced.
    pub fn exponent(&self) -> Ratio<u64> {
        Ratio::new(u64::from(self.length), u64::from(self.period))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Parallelism {
    #[default]
    Sequential,
    /// Confirm and extend candidates on this many worker threads.
    Threads(usize),
}

/// Query counters gathered during enumeration.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QueryCounts {
    pub candidates: u64,
    pub lce_root: u64,
    pub lce_down: u64,
    pub confirmations: u64,
}

impl std::ops::AddAssign for QueryCounts {
    fn add_assign(&mut self, o: Self) {
        self.candidates += o.candidates;
        self.lce_root += o.lce_root;
        self.lce_down += o.lce_down;
        self.confirmations += o.confirmations;
    }
}

/// One candidate per real non-root node and order, in natural rank order.
pub fn collect_candidates(index: &TrieIndex) -> Vec<Candidate> {
    let lyndon = index.lyndon();
    index
        .suffixes()
        .sorted_nodes()
        .iter()
        .filter(|&&v| v != NodeId::ROOT)
        .flat_map(|&v| {
            LexOrder::BOTH.map(|order| Candidate {
                deep: v,
                end: lyndon.nsv(v, order),
                period: lyndon.llen(v, order),
                order,
            })
        })
        .collect()
}

/// Checks whether `c` is the last L-root of a run, returning the run's
/// shallow endpoint and an anchor node `2p` below it.
pub fn try_confirm_run(index: &TrieIndex, c: &Candidate) -> Option<Confirmation> {
    confirm(index, c, &mut QueryCounts::default())
}

fn confirm(index: &TrieIndex, c: &Candidate, counts: &mut QueryCounts) -> Option<Confirmation> {
    if c.end.is_bottom() {
        // The Lyndon prefix includes the sentinel edge; no period spans it.
        return None;
    }
    let trie = index.trie();
    let p = c.period;
    counts.lce_root += 1;
    let z = index.suffixes().lce(c.deep, c.end);
    if z >= p {
        return None;
    }
    let after = trie.suffix_char_unchecked(c.deep, p + z + 1);
    let before = trie.suffix_char_unchecked(c.deep, z + 1);
    if !c.order.less(after, before) {
        return None;
    }
    let shallow = trie.ancestor(c.end, z);
    let top = trie.ancestor(c.deep, z);
    counts.lce_down += 1;
    let (anchor, lcp) = index.grid().lce_down_unchecked(index.suffixes(), top, trie.sdepth(shallow) + 2 * p)?;
    (lcp >= p).then_some(Confirmation { shallow, anchor, period: p, candidate: *c })
}

/// Descendant of `cur` exactly `t` edges below it that continues the period
/// `p`, given that `cur` is at least `2p` below the run's shallow end.
fn continuation(index: &TrieIndex, cur: NodeId, t: u32, p: u32, counts: &mut QueryCounts) -> Option<NodeId> {
    if t == 0 {
        return Some(cur);
    }
    let trie = index.trie();
    // The descendant's suffix must agree with suf(ref) on p labels, where ref
    // sits p edges above the descendant.
    let reference = trie.ancestor(cur, p - t);
    counts.lce_down += 1;
    let (node, lcp) = index.grid().lce_down_unchecked(index.suffixes(), reference, trie.sdepth(reference) + p)?;
    (lcp >= p).then_some(node)
}

/// Follows the period of a confirmed run down from `anchor` and returns the
/// run's deep endpoint.
pub fn extend_to_deep_endpoint(index: &TrieIndex, shallow: NodeId, anchor: NodeId, period: u32) -> NodeId {
    debug_assert_eq!(index.trie().sdepth(anchor), index.trie().sdepth(shallow) + 2 * period);
    extend(index, anchor, period, &mut QueryCounts::default())
}

fn extend(index: &TrieIndex, anchor: NodeId, p: u32, counts: &mut QueryCounts) -> NodeId {
    let mut cur = anchor;
    while let Some(next) = continuation(index, cur, p, p, counts) {
        cur = next;
    }
    // Largest remainder t < p; the predicate is monotone in t.
    let mut good = (0, cur);
    let mut bad = p;
    let mut t = 1;
    while t < p {
        match continuation(index, cur, t, p, counts) {
            Some(node) => {
                good = (t, node);
                t *= 2;
            }
            None => {
                bad = t;
                break;
            }
        }
    }
    while bad - good.0 > 1 {
        let mid = good.0 + (bad - good.0) / 2;
        match continuation(index, cur, mid, p, counts) {
            Some(node) => good = (mid, node),
            None => bad = mid,
        }
    }
    good.1
}

fn with_threads<T: Send>(parallelism: Parallelism, job: impl FnOnce() -> T + Send) -> T {
    match parallelism {
        Parallelism::Sequential => job(),
        Parallelism::Threads(n) => {
            rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build().expect("thread pool").install(job)
        }
    }
}

fn confirm_all(index: &TrieIndex, parallelism: Parallelism, counts: &mut QueryCounts) -> Result<Vec<Confirmation>> {
    let candidates = collect_candidates(index);
    counts.candidates += candidates.len() as u64;
    let (mut found, c) = match parallelism {
        Parallelism::Sequential => {
            let mut c = QueryCounts::default();
            let found: Vec<Confirmation> = candidates.iter().filter_map(|cand| confirm(index, cand, &mut c)).collect();
            (found, c)
        }
        Parallelism::Threads(_) => with_threads(parallelism, || {
            candidates
                .par_chunks(4096)
                .map(|chunk| {
                    let mut c = QueryCounts::default();
                    let found: Vec<Confirmation> =
                        chunk.iter().filter_map(|cand| confirm(index, cand, &mut c)).collect();
                    (found, c)
                })
                .reduce(
                    || (Vec::new(), QueryCounts::default()),
                    |(mut a, mut ca), (b, cb)| {
                        a.extend(b);
                        ca += cb;
                        (a, ca)
                    },
                )
        }),
    };
    *counts += c;
    counts.confirmations += found.len() as u64;

    let trie = index.trie();
    let so = index.suffixes();
    found.sort_by_key(|c| (trie.sdepth(c.shallow), so.isa0(c.shallow), so.isa0(c.anchor)));
    if let Some(w) = found.windows(2).find(|w| (w[0].shallow, w[0].anchor) == (w[1].shallow, w[1].anchor)) {
        return Err(Error::DuplicateConfirmation { shallow: w[0].shallow.0, anchor: w[0].anchor.0 });
    }
    Ok(found)
}

/// Confirmation phase only: the shallow endpoint and period of every run,
/// sorted by (sdepth, natural rank) of the shallow endpoint.
pub fn count_runs(index: &TrieIndex, parallelism: Parallelism) -> Result<Vec<Confirmation>> {
    confirm_all(index, parallelism, &mut QueryCounts::default())
}

/// All runs of the trie, sorted by (sdepth of shallow, rank of shallow,
/// rank of deep).
pub fn enumerate_runs(index: &TrieIndex, parallelism: Parallelism) -> Result<Vec<RunRecord>> {
    enumerate_runs_counted(index, parallelism).map(|(runs, _)| runs)
}

pub fn enumerate_runs_counted(index: &TrieIndex, parallelism: Parallelism) -> Result<(Vec<RunRecord>, QueryCounts)> {
    let mut counts = QueryCounts::default();
    let confirmed = confirm_all(index, parallelism, &mut counts)?;
    let trie = index.trie();
    let to_record = |c: &Confirmation, counts: &mut QueryCounts| {
        let deep = extend(index, c.anchor, c.period, counts);
        RunRecord { deep, shallow: c.shallow, period: c.period, length: trie.sdepth(deep) - trie.sdepth(c.shallow) }
    };
    let mut runs: Vec<RunRecord> = match parallelism {
        Parallelism::Sequential => confirmed.iter().map(|c| to_record(c, &mut counts)).collect(),
        Parallelism::Threads(_) => {
            let (runs, c) = with_threads(parallelism, || {
                confirmed
                    .par_chunks(1024)
                    .map(|chunk| {
                        let mut c = QueryCounts::default();
                        let runs: Vec<RunRecord> = chunk.iter().map(|conf| to_record(conf, &mut c)).collect();
                        (runs, c)
                    })
                    .reduce(
                        || (Vec::new(), QueryCounts::default()),
                        |(mut a, mut ca), (b, cb)| {
                            a.extend(b);
                            ca += cb;
                            (a, ca)
                        },
                    )
            });
            counts += c;
            runs
        }
    };
    let so = index.suffixes();
    runs.sort_by_key(|r| (trie.sdepth(r.shallow), so.isa0(r.shallow), so.isa0(r.deep)));
    if let Some(w) = runs.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateConfirmation { shallow: w[0].shallow.0, anchor: w[0].deep.0 });
    }
    Ok((runs, counts))
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunStats {
    pub count: u64,
    pub edge_count: u64,
    pub sum_exponents: BigRational,
    /// Sum over runs of `max(floor(e) - 1, 1)`.
    pub sum_floor_exponent_minus_one: u64,
    pub max_exponent: Option<Ratio<u64>>,
    pub histogram: BTreeMap<u32, u64>,
}

pub fn run_stats(runs: &[RunRecord], trie: &CommonSuffixTrie) -> RunStats {
    let mut sum = BigRational::zero();
    let mut floors = 0u64;
    let mut max: Option<Ratio<u64>> = None;
    let mut histogram = BTreeMap::new();
    for r in runs {
        let e = r.exponent();
        sum += BigRational::new(BigInt::from(*e.numer()), BigInt::from(*e.denom()));
        floors += (e.to_integer() - 1).max(1);
        max = Some(max.map_or(e, |m| m.max(e)));
        *histogram.entry(r.period).or_insert(0) += 1;
    }
    RunStats {
        count: runs.len() as u64,
        edge_count: trie.edge_count() as u64,
        sum_exponents: sum,
        sum_floor_exponent_minus_one: floors,
        max_exponent: max,
        histogram,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trie::{Direction, EdgeRow};

    fn index_of(strings: &[&str]) -> TrieIndex {
        TrieIndex::build(CommonSuffixTrie::from_byte_strings(strings, Direction::Rootward).unwrap())
    }

    pub(crate) fn branched_abab() -> CommonSuffixTrie {
        let r = |child, parent, label: u8| EdgeRow { child, parent, label: u32::from(label) };
        CommonSuffixTrie::from_edges(&[
            r(1, None, 0),
            r(2, Some(1), b'b'),
            r(3, Some(2), b'a'),
            r(4, Some(3), b'b'),
            r(5, Some(4), b'a'),
            r(6, Some(3), b'c'),
        ])
        .unwrap()
    }

    #[test]
    fn trivial_tries_have_no_runs() {
        for s in ["", "a", "ab"] {
            let idx = index_of(&[s]);
            assert!(enumerate_runs(&idx, Parallelism::Sequential).unwrap().is_empty());
            assert!(count_runs(&idx, Parallelism::Sequential).unwrap().is_empty());
        }
        let idx = index_of(&["a"]);
        assert!(!collect_candidates(&idx).is_empty());
    }

    #[test]
    fn square_aa() {
        let idx = index_of(&["aa"]);
        let runs = enumerate_runs(&idx, Parallelism::Sequential).unwrap();
        assert_eq!(runs, vec![RunRecord { deep: NodeId(3), shallow: NodeId::ROOT, period: 1, length: 2 }]);
        let stats = run_stats(&runs, idx.trie());
        assert_eq!(stats.sum_exponents, BigRational::from_integer(2.into()));
    }

    #[test]
    fn unary_path() {
        let idx = index_of(&["aaaa"]);
        let runs = enumerate_runs(&idx, Parallelism::Sequential).unwrap();
        assert_eq!(runs.len(), 1);
        assert_eq!(runs[0].deep, NodeId(5));
        assert_eq!(runs[0].exponent(), Ratio::from_integer(4));
    }

    #[test]
    fn e2_hand_trace() {
        let idx = TrieIndex::build(branched_abab());
        let t = idx.trie();
        let n1 = NodeId(2);
        let n2 = NodeId(3);
        let n3 = t.child_with_label(n2, u32::from(b'b')).unwrap();
        let n4 = t.child_with_label(n3, u32::from(b'a')).unwrap();

        let cands = collect_candidates(&idx);
        assert!(cands.len() <= 2 * (t.node_count() - 1));
        let c = Candidate { deep: n3, end: n1, period: 2, order: LexOrder::Reversed };
        assert!(cands.contains(&c));
        assert_eq!(idx.suffixes().lce_to_root(n3, n1).unwrap(), 1);

        let conf = try_confirm_run(&idx, &c).unwrap();
        assert_eq!((conf.shallow, conf.anchor, conf.period), (NodeId::ROOT, n4, 2));
        assert_eq!(extend_to_deep_endpoint(&idx, conf.shallow, conf.anchor, 2), n4);

        let runs = enumerate_runs(&idx, Parallelism::Sequential).unwrap();
        assert_eq!(runs, vec![RunRecord { deep: n4, shallow: NodeId::ROOT, period: 2, length: 4 }]);
        assert_eq!(runs[0].exponent(), Ratio::from_integer(2));
        let stats = run_stats(&runs, t);
        assert_eq!(stats.count, 1);
        assert!(stats.count < stats.edge_count);
    }

    #[test]
    fn deeper_occurrence_is_filtered() {
        // In "ababab", the "ba" starting one edge above the leaf is followed
        // by another "ba", so z >= p.
        let idx = index_of(&["ababab"]);
        let v = NodeId(6);
        let c = Candidate {
            deep: v,
            end: idx.lyndon().nsv(v, LexOrder::Reversed),
            period: idx.lyndon().llen(v, LexOrder::Reversed),
            order: LexOrder::Reversed,
        };
        assert_eq!(c.period, 2);
        assert!(idx.suffixes().lce_to_root(c.deep, c.end).unwrap() >= 2);
        assert_eq!(try_confirm_run(&idx, &c), None);
    }

    #[test]
    fn candidate_without_room_below_is_rejected() {
        // "aabaa": the L-root "ab"/"ba" candidates have no 2p-deep continuation.
        let idx = index_of(&["aabaa"]);
        let runs = enumerate_runs(&idx, Parallelism::Sequential).unwrap();
        let periods: Vec<u32> = runs.iter().map(|r| r.period).collect();
        assert_eq!(periods, vec![1, 1]);
        for c in collect_candidates(&idx) {
            if c.period >= 2 {
                assert_eq!(try_confirm_run(&idx, &c), None, "{c:?}");
            }
        }
    }

    #[test]
    fn remainder_extension() {
        // "abcabcab" read rootward: run of period 3 with a remainder of 2.
        let idx = index_of(&["abcabcab"]);
        let runs = enumerate_runs(&idx, Parallelism::Sequential).unwrap();
        assert_eq!(runs, vec![RunRecord { deep: NodeId(9), shallow: NodeId::ROOT, period: 3, length: 8 }]);
    }

    #[test]
    fn parallel_matches_sequential() {
        let idx = index_of(&["abaababaabaab", "aabaabaabb", "bbabbabba", "cabcabcab"]);
        let seq = enumerate_runs(&idx, Parallelism::Sequential).unwrap();
        let par = enumerate_runs(&idx, Parallelism::Threads(3)).unwrap();
        assert_eq!(seq, par);
        assert!(!seq.is_empty());
    }
}
