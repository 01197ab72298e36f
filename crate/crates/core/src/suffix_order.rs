//! Lexicographic ranks of node suffixes, adjacent LCPs, and LCE toward the root.
//!
//! Ranks are computed by prefix doubling over the binary-lifting table of the
//! trie: the prefix of length `2k` of `suf(v)` is the prefix of length `k`
//! followed by the prefix of length `k` of the suffix `k` edges higher.

use crate::error::{Error, Result};
use crate::trie::{CommonSuffixTrie, Label, NodeId};

/// One of the two lexicographic orders on labels.
///
/// `Natural` compares labels as integers, which puts the sentinel last.
/// `Reversed` is its mirror image and puts the sentinel first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LexOrder {
    Natural = 0,
    Reversed = 1,
}

impl LexOrder {
    pub const BOTH: [LexOrder; 2] = [LexOrder::Natural, LexOrder::Reversed];

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    /// Strict `a ≺ b` under this order.
    #[inline]
    pub fn less(self, a: Label, b: Label) -> bool {
        match self {
            LexOrder::Natural => a < b,
            LexOrder::Reversed => a > b,
        }
    }

    pub fn flip(self) -> LexOrder {
        match self {
            LexOrder::Natural => LexOrder::Reversed,
            LexOrder::Reversed => LexOrder::Natural,
        }
    }
}

/// Sparse table for range-minimum over a fixed array.
#[derive(Clone, Debug)]
pub(crate) struct SparseMin {
    levels: Vec<Vec<u32>>,
}

impl SparseMin {
    pub(crate) fn new(values: Vec<u32>) -> Self {
        let n = values.len();
        let mut levels = vec![values];
        let mut span = 1;
        while 2 * span <= n {
            let prev = levels.last().unwrap();
            let next: Vec<u32> = (0..=n - 2 * span).map(|i| prev[i].min(prev[i + span])).collect();
            levels.push(next);
            span *= 2;
        }
        SparseMin { levels }
    }

    /// Minimum over the inclusive range `[lo, hi]`.
    #[inline]
    pub(crate) fn min(&self, lo: usize, hi: usize) -> u32 {
        debug_assert!(lo <= hi);
        let k = (usize::BITS - 1 - (hi - lo + 1).leading_zeros()) as usize;
        let row = &self.levels[k];
        row[lo].min(row[hi + 1 - (1 << k)])
    }
}

#[derive(Clone, Debug)]
pub struct SuffixOrder {
    /// Rank under the natural order, indexed by node; `isa0[0]` (⊥) is 0.
    isa0: Vec<u32>,
    /// Node at each rank; index 0 holds ⊥ as a placeholder.
    sa0: Vec<NodeId>,
    /// `lcp0[r]` = LCP of the suffixes at ranks `r - 1` and `r`, for `r >= 2`.
    lcp0: Vec<u32>,
    rmq: SparseMin,
}

impl SuffixOrder {
    pub fn build(trie: &CommonSuffixTrie) -> Self {
        let n = trie.node_count();
        let jumps = trie.jump_levels();

        let mut labels: Vec<Label> = trie.nodes().map(|v| trie.in_label(v)).collect();
        labels.sort_unstable();
        labels.dedup();
        let mut rank = vec![0u32; n + 1];
        for v in trie.nodes() {
            rank[v.index()] = labels.binary_search(&trie.in_label(v)).unwrap() as u32 + 1;
        }
        let mut distinct = labels.len();
        let mut tables = vec![rank];

        let mut by_second = vec![0u32; n];
        let mut by_pair = vec![0u32; n];
        while distinct < n {
            let level = tables.len() - 1;
            let cur = &tables[level];
            let up = &jumps[level];
            let second = |v: u32| cur[up[v as usize].index()];
            let buckets = distinct + 1;

            // Counting sort by the second component, then stably by the first.
            let mut count = vec![0u32; buckets + 1];
            for v in 1..=n as u32 {
                count[second(v) as usize + 1] += 1;
            }
            for i in 0..buckets {
                count[i + 1] += count[i];
            }
            for v in 1..=n as u32 {
                let k = second(v) as usize;
                by_second[count[k] as usize] = v;
                count[k] += 1;
            }
            count.iter_mut().for_each(|c| *c = 0);
            for v in 1..=n {
                count[cur[v] as usize] += 1;
            }
            let mut acc = 0;
            for c in count.iter_mut() {
                let here = *c;
                *c = acc;
                acc += here;
            }
            for &v in by_second.iter() {
                let k = cur[v as usize] as usize;
                by_pair[count[k] as usize] = v;
                count[k] += 1;
            }

            let mut next = vec![0u32; n + 1];
            let mut r = 0u32;
            let mut prev: Option<(u32, u32)> = None;
            for &v in by_pair.iter() {
                let key = (cur[v as usize], second(v));
                if prev != Some(key) {
                    r += 1;
                    prev = Some(key);
                }
                next[v as usize] = r;
            }
            distinct = r as usize;
            tables.push(next);
        }

        let isa0 = tables.last().unwrap().clone();
        let mut sa0 = vec![NodeId::BOTTOM; n + 1];
        for v in trie.nodes() {
            sa0[isa0[v.index()] as usize] = v;
        }

        let mut lcp0 = vec![0u32; n + 1];
        for r in 2..=n {
            let (mut u, mut v) = (sa0[r - 1], sa0[r]);
            let mut len = 0;
            for level in (0..tables.len()).rev() {
                let t = &tables[level];
                if t[u.index()] == t[v.index()] {
                    len += 1u32 << level;
                    u = jumps[level][u.index()];
                    v = jumps[level][v.index()];
                }
            }
            lcp0[r] = len;
        }
        let rmq = SparseMin::new(lcp0.clone());
        SuffixOrder { isa0, sa0, lcp0, rmq }
    }

    /// Number of ranked suffixes (real nodes).
    pub fn len(&self) -> usize {
        self.sa0.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn isa0(&self, v: NodeId) -> u32 {
        self.isa0[v.index()]
    }

    /// Rank under the reversed order. Valid because no suffix is a proper
    /// prefix of another.
    #[inline]
    pub fn isa1(&self, v: NodeId) -> u32 {
        self.len() as u32 + 1 - self.isa0[v.index()]
    }

    #[inline]
    pub fn rank(&self, v: NodeId, order: LexOrder) -> u32 {
        match order {
            LexOrder::Natural => self.isa0(v),
            LexOrder::Reversed => self.isa1(v),
        }
    }

    /// Node whose suffix has natural rank `r` (1-based).
    #[inline]
    pub fn node_at(&self, r: u32) -> NodeId {
        self.sa0[r as usize]
    }

    /// Nodes in increasing natural rank.
    pub fn sorted_nodes(&self) -> &[NodeId] {
        &self.sa0[1..]
    }

    /// LCP of the suffixes at ranks `r - 1` and `r`; 0 for `r <= 1`.
    pub fn lcp0(&self, r: u32) -> u32 {
        self.lcp0.get(r as usize).copied().unwrap_or(0)
    }

    /// Length of the longest common prefix of `suf(u)` and `suf(v)`.
    pub fn lce_to_root(&self, u: NodeId, v: NodeId) -> Result<u32> {
        if u == v || u.is_bottom() || v.is_bottom() || u.index() > self.len() || v.index() > self.len() {
            return Err(Error::InvalidNode(u.0));
        }
        Ok(self.lce(u, v))
    }

    #[inline]
    pub(crate) fn lce(&self, u: NodeId, v: NodeId) -> u32 {
        let (a, b) = (self.isa0(u), self.isa0(v));
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.rmq.min(lo as usize + 1, hi as usize)
    }
}
