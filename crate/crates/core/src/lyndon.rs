//! Longest Lyndon prefixes of node suffixes via next-smaller-value on the trie.
//!
//! For each order, nodes are visited in decreasing rank; each is unmarked and
//! then asked for its nearest marked strict ancestor. At that moment exactly
//! the nodes of larger rank are unmarked, so the answer is the nearest
//! ancestor with a smaller suffix, and the path up to it is the longest
//! Lyndon prefix of the node's suffix.

use crate::error::{Error, Result};
use crate::suffix_order::{LexOrder, SuffixOrder};
use crate::trie::{CommonSuffixTrie, NodeId};

/// Decremental nearest-marked-ancestor over a trie.
///
/// Unmarking `v` merges its set into its parent's set; each set remembers the
/// single marked node at its top. `⊥` can never be unmarked.
pub struct MarkedAncestors<'t> {
    trie: &'t CommonSuffixTrie,
    link: Vec<u32>,
    size: Vec<u32>,
    top: Vec<NodeId>,
    marked: Vec<bool>,
}

impl<'t> MarkedAncestors<'t> {
    pub fn new(trie: &'t CommonSuffixTrie) -> Self {
        let len = trie.node_count() + 1;
        MarkedAncestors {
            trie,
            link: (0..len as u32).collect(),
            size: vec![1; len],
            top: (0..len as u32).map(NodeId).collect(),
            marked: vec![true; len],
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.link[x as usize] != x {
            let up = self.link[self.link[x as usize] as usize];
            self.link[x as usize] = up;
            x = up;
        }
        x
    }

    pub fn is_marked(&self, v: NodeId) -> bool {
        self.marked[v.index()]
    }

    /// Nearest marked strict ancestor of `v` (`⊥` if nothing else is marked).
    pub fn nma(&mut self, v: NodeId) -> NodeId {
        if v.is_bottom() {
            return NodeId::BOTTOM;
        }
        let r = self.find(self.trie.parent(v).0);
        self.top[r as usize]
    }

    pub fn unmark(&mut self, v: NodeId) -> Result<()> {
        if v.is_bottom() || v.index() >= self.marked.len() {
            return Err(Error::InvalidNode(v.0));
        }
        if !self.marked[v.index()] {
            return Err(Error::AlreadyUnmarked(v.0));
        }
        self.marked[v.index()] = false;
        let a = self.find(v.0);
        let b = self.find(self.trie.parent(v).0);
        let anchor = self.top[b as usize];
        let (big, small) = if self.size[a as usize] >= self.size[b as usize] { (a, b) } else { (b, a) };
        self.link[small as usize] = big;
        self.size[big as usize] += self.size[small as usize];
        self.top[big as usize] = anchor;
        Ok(())
    }
}

/// Next-smaller-value ancestors and longest Lyndon prefix lengths for both orders.
#[derive(Clone, Debug)]
pub struct LyndonTable {
    nsv: [Vec<NodeId>; 2],
    llen: [Vec<u32>; 2],
}

/// Nearest strict ancestor of every node whose suffix ranks lower under `order`.
pub fn compute_nsv(trie: &CommonSuffixTrie, suffixes: &SuffixOrder, order: LexOrder) -> Vec<NodeId> {
    let n = trie.node_count();
    let mut nsv = vec![NodeId::BOTTOM; n + 1];
    let mut marks = MarkedAncestors::new(trie);
    let by_rank = suffixes.sorted_nodes();
    let mut visit = |v: NodeId| {
        marks.unmark(v).expect("each node is unmarked once");
        nsv[v.index()] = marks.nma(v);
    };
    match order {
        LexOrder::Natural => by_rank.iter().rev().copied().for_each(&mut visit),
        LexOrder::Reversed => by_rank.iter().copied().for_each(&mut visit),
    }
    nsv
}

impl LyndonTable {
    pub fn build(trie: &CommonSuffixTrie, suffixes: &SuffixOrder) -> Self {
        let nsv = LexOrder::BOTH.map(|o| compute_nsv(trie, suffixes, o));
        let llen = [0, 1].map(|l| {
            let mut out = vec![0u32; trie.node_count() + 1];
            for v in trie.nodes() {
                out[v.index()] = trie.sdepth(v) - trie.sdepth(nsv[l][v.index()]);
            }
            out
        });
        LyndonTable { nsv, llen }
    }

    #[inline]
    pub fn nsv(&self, v: NodeId, order: LexOrder) -> NodeId {
        self.nsv[order.index()][v.index()]
    }

    #[inline]
    pub fn llen(&self, v: NodeId, order: LexOrder) -> u32 {
        self.llen[order.index()][v.index()]
    }

    /// End node and length of the longest Lyndon prefix of `suf(v)`.
    pub fn longest_lyndon_prefix(&self, v: NodeId, order: LexOrder) -> Result<(NodeId, u32)> {
        if v.is_bottom() || v == NodeId::ROOT || v.index() >= self.nsv[0].len() {
            return Err(Error::InvalidNode(v.0));
        }
        Ok((self.nsv(v, order), self.llen(v, order)))
    }
}
