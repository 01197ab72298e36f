//! Grid of nodes for depth-constrained longest common extension toward the leaves.
//!
//! Each node is a point whose x coordinate is its bfs position (nodes of equal
//! sdepth are contiguous and in preorder) and whose y coordinate is one of
//! preorder rank, postorder rank, or natural suffix rank. Descendants of `v`
//! at sdepth `d` form a contiguous x interval whose ends are found with one
//! successor query on preorder and one predecessor query on postorder. The
//! descendant whose suffix shares the longest prefix with `suf(v)` is one of
//! the two lexicographic neighbours of `suf(v)` within that interval.

use crate::error::{Error, Result};
use crate::suffix_order::SuffixOrder;
use crate::trie::{CommonSuffixTrie, NodeId, NodeOrders};
use crate::wavelet::WaveletMatrix;

/// Which y coordinate a range query runs against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GridSeq {
    Pre = 0,
    Post = 1,
    Lex = 2,
}

#[derive(Clone, Debug)]
struct Sequence {
    values: WaveletMatrix,
    /// x coordinate holding each y value.
    x_of: Vec<u32>,
}

impl Sequence {
    fn new(ys: &[u32]) -> Self {
        let mut x_of = vec![0u32; ys.len() + 1];
        for (i, &y) in ys.iter().enumerate() {
            x_of[y as usize] = i as u32 + 1;
        }
        Sequence { values: WaveletMatrix::new(ys), x_of }
    }
}

#[derive(Clone, Debug)]
pub struct GridIndex {
    orders: NodeOrders,
    seqs: [Sequence; 3],
    sdepth: Vec<u32>,
}

impl GridIndex {
    pub fn build(trie: &CommonSuffixTrie, orders: NodeOrders, suffixes: &SuffixOrder) -> Self {
        let n = trie.node_count() as u32;
        let column = |f: &dyn Fn(NodeId) -> u32| -> Vec<u32> { (1..=n).map(|x| f(orders.node_at_bfs(x))).collect() };
        let pre = Sequence::new(&column(&|v| orders.pre(v)));
        let post = Sequence::new(&column(&|v| orders.post(v)));
        let lex = Sequence::new(&column(&|v| suffixes.isa0(v)));
        let sdepth = (0..=n).map(|i| trie.sdepth(NodeId(i))).collect();
        GridIndex { orders, seqs: [pre, post, lex], sdepth }
    }

    pub fn orders(&self) -> &NodeOrders {
        &self.orders
    }

    fn len(&self) -> u32 {
        self.sdepth.len() as u32 - 1
    }

    fn check(&self, x1: u32, x2: u32) -> Result<()> {
        if x1 == 0 || x1 > x2 || x2 > self.len() {
            return Err(Error::BadInterval(x1, x2));
        }
        Ok(())
    }

    /// Among points with `x1 <= x <= x2`, the one with the largest `y' <= y`.
    pub fn range_pred(&self, seq: GridSeq, x1: u32, x2: u32, y: u32) -> Result<Option<(u32, u32)>> {
        self.check(x1, x2)?;
        Ok(self.pred(seq, x1, x2, y))
    }

    /// Among points with `x1 <= x <= x2`, the one with the smallest `y' >= y`.
    pub fn range_succ(&self, seq: GridSeq, x1: u32, x2: u32, y: u32) -> Result<Option<(u32, u32)>> {
        self.check(x1, x2)?;
        Ok(self.succ(seq, x1, x2, y))
    }

    #[inline]
    fn pred(&self, seq: GridSeq, x1: u32, x2: u32, y: u32) -> Option<(u32, u32)> {
        let s = &self.seqs[seq as usize];
        s.values.max_at_most(x1 as usize - 1, x2 as usize, y).map(|yv| (s.x_of[yv as usize], yv))
    }

    #[inline]
    fn succ(&self, seq: GridSeq, x1: u32, x2: u32, y: u32) -> Option<(u32, u32)> {
        let s = &self.seqs[seq as usize];
        s.values.min_at_least(x1 as usize - 1, x2 as usize, y).map(|yv| (s.x_of[yv as usize], yv))
    }

    fn check_depth(&self, v: NodeId, d: u32) -> Result<()> {
        if v.is_bottom() || v.index() >= self.sdepth.len() {
            return Err(Error::InvalidNode(v.0));
        }
        if d <= self.sdepth[v.index()] {
            return Err(Error::OutOfRange { node: v.0, value: d, limit: self.sdepth[v.index()] });
        }
        Ok(())
    }

    /// The bfs interval of descendants of `v` with sdepth `d`, or `None` if
    /// there are none.
    pub fn descendants_at_depth(&self, v: NodeId, d: u32) -> Result<Option<(u32, u32)>> {
        self.check_depth(v, d)?;
        Ok(self.descendants(v, d))
    }

    #[inline]
    fn descendants(&self, v: NodeId, d: u32) -> Option<(u32, u32)> {
        let (lo, hi) = self.orders.depth_interval(d)?;
        let (first, _) = self.succ(GridSeq::Pre, lo, hi, self.orders.pre(v))?;
        let (last, _) = self.pred(GridSeq::Post, lo, hi, self.orders.post(v))?;
        (first <= last).then_some((first, last))
    }

    /// Among descendants of `v` at sdepth `d`, one whose suffix has the
    /// longest common prefix with `suf(v)`, with that LCP. Ties go to the
    /// smaller natural rank.
    pub fn lce_down(&self, suffixes: &SuffixOrder, v: NodeId, d: u32) -> Result<Option<(NodeId, u32)>> {
        self.check_depth(v, d)?;
        Ok(self.lce_down_unchecked(suffixes, v, d))
    }

    pub(crate) fn lce_down_unchecked(&self, suffixes: &SuffixOrder, v: NodeId, d: u32) -> Option<(NodeId, u32)> {
        let (lo, hi) = self.descendants(v, d)?;
        let rank = suffixes.isa0(v);
        let below = self.pred(GridSeq::Lex, lo, hi, rank).map(|(_, r)| suffixes.node_at(r));
        let above = self.succ(GridSeq::Lex, lo, hi, rank).map(|(_, r)| suffixes.node_at(r));
        let score = |u: NodeId| (u, suffixes.lce(u, v));
        match (below.map(score), above.map(score)) {
            (Some(a), Some(b)) => Some(if b.1 > a.1 { b } else { a }),
            (a, b) => a.or(b),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trie::{Direction, EdgeRow};

    fn grid_for(t: &CommonSuffixTrie) -> (SuffixOrder, GridIndex) {
        let so = SuffixOrder::build(t);
        let g = GridIndex::build(t, NodeOrders::compute(t), &so);
        (so, g)
    }

    #[test]
    fn pred_succ_on_small_sequence() {
        let s = Sequence::new(&[3, 1, 2]);
        let g = GridIndex {
            orders: NodeOrders::compute(&CommonSuffixTrie::from_byte_strings(&["ab"], Direction::Rootward).unwrap()),
            seqs: [s.clone(), s.clone(), s],
            sdepth: vec![0, 1, 2, 3],
        };
        assert_eq!(g.range_pred(GridSeq::Pre, 1, 3, 2).unwrap(), Some((3, 2)));
        assert_eq!(g.range_pred(GridSeq::Pre, 2, 2, 1).unwrap(), Some((2, 1)));
        assert_eq!(g.range_pred(GridSeq::Pre, 1, 3, 0).unwrap(), None);
        assert_eq!(g.range_succ(GridSeq::Pre, 1, 3, 2).unwrap(), Some((3, 2)));
        assert_eq!(g.range_succ(GridSeq::Pre, 1, 3, 4).unwrap(), None);
        assert!(g.range_pred(GridSeq::Pre, 0, 3, 1).is_err());
        assert!(g.range_pred(GridSeq::Pre, 3, 2, 1).is_err());
        assert!(g.range_succ(GridSeq::Pre, 1, 4, 1).is_err());
    }

    #[test]
    fn path_descendants() {
        let t = CommonSuffixTrie::from_byte_strings(&["abab"], Direction::Rootward).unwrap();
        let (so, g) = grid_for(&t);
        let n2 = NodeId(3);
        let (i, j) = g.descendants_at_depth(n2, 4).unwrap().unwrap();
        assert_eq!(i, j);
        assert_eq!(g.orders().node_at_bfs(i), NodeId(4));
        assert_eq!(g.descendants_at_depth(n2, 6).unwrap(), None);
        assert!(g.descendants_at_depth(n2, 3).is_err());
        assert_eq!(g.lce_down(&so, n2, 5).unwrap(), Some((NodeId(5), 2)));
        assert!(g.lce_down(&so, n2, 2).is_err());
        assert_eq!(g.lce_down(&so, n2, 9).unwrap(), None);
    }

    #[test]
    fn lce_down_ignores_sibling_branch() {
        let r = |child, parent, label: u8| EdgeRow { child, parent, label: u32::from(label) };
        let rows = [
            r(1, None, 0),
            r(2, Some(1), b'b'),
            r(3, Some(2), b'a'),
            r(4, Some(3), b'b'),
            r(5, Some(4), b'a'),
            r(6, Some(3), b'c'),
        ];
        let t = CommonSuffixTrie::from_edges(&rows).unwrap();
        let (so, g) = grid_for(&t);
        let n2 = NodeId(3);
        let n4 = t.child_with_label(t.child_with_label(n2, u32::from(b'b')).unwrap(), u32::from(b'a')).unwrap();
        assert_eq!(g.lce_down(&so, n2, 5).unwrap(), Some((n4, 2)));
        let n5 = t.child_with_label(n2, u32::from(b'c')).unwrap();
        let (i, j) = g.descendants_at_depth(n2, 4).unwrap().unwrap();
        let at4: Vec<NodeId> = (i..=j).map(|x| g.orders().node_at_bfs(x)).collect();
        assert!(at4.contains(&n5));
        assert_eq!(at4.len(), 2);
    }
}
