//! Common-suffix tries.
//!
//! A trie is stored with an auxiliary node `⊥` (id 0) above the root (id 1).
//! The edge `root → ⊥` carries the sentinel label, which is strictly greater
//! than every regular label. The suffix of a node is the label sequence read
//! from the node up to `⊥`, so every suffix ends with the sentinel.
//!
//! Real nodes are numbered densely in preorder, visiting children in
//! ascending label order. This numbering is canonical: two tries with the
//! same shape and labels get the same ids regardless of how they were built.

use std::fmt;

use crate::error::{Error, Result};

/// Edge label. Text inputs use byte values.
pub type Label = u32;

/// Dense node id. `0` is `⊥`, `1` is the root.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct NodeId(pub u32);

impl NodeId {
    pub const BOTTOM: NodeId = NodeId(0);
    pub const ROOT: NodeId = NodeId(1);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_bottom(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            0 => f.write_str("⊥"),
            1 => f.write_str("root"),
            i => write!(f, "{i}"),
        }
    }
}

/// How input strings are laid onto the trie.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Direction {
    /// Each string spells a root-to-leaf path.
    Leafward,
    /// Each string is read from a leaf up to the root, i.e. it is the
    /// suffix of the node where it starts.
    #[default]
    Rootward,
}

/// One row of an edge list. `parent == None` marks the root row, whose label
/// is ignored.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeRow {
    pub child: u64,
    pub parent: Option<u64>,
    pub label: Label,
}

const NO_PARENT: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct CommonSuffixTrie {
    parent: Vec<NodeId>,
    in_label: Vec<Label>,
    child_start: Vec<u32>,
    children: Vec<NodeId>,
    sdepth: Vec<u32>,
    /// `jump[k][v]` is the ancestor `2^k` edges above `v`, saturating at `⊥`.
    jump: Vec<Vec<NodeId>>,
    sentinel: Label,
    external_ids: Option<Vec<u64>>,
}

impl CommonSuffixTrie {
    /// Builds a trie from a set of strings.
    pub fn from_strings<S: AsRef<[Label]>>(strings: &[S], direction: Direction) -> Result<Self> {
        if strings.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut raw = RawTree::with_root();
        for s in strings {
            let s = s.as_ref();
            let mut cur = 0u32;
            let mut insert = |l: Label, cur: &mut u32| -> Result<()> {
                if l == Label::MAX {
                    return Err(Error::SentinelCollision(l));
                }
                *cur = raw.child_or_insert(*cur, l);
                Ok(())
            };
            match direction {
                Direction::Leafward => {
                    for &l in s {
                        insert(l, &mut cur)?;
                    }
                }
                Direction::Rootward => {
                    for &l in s.iter().rev() {
                        insert(l, &mut cur)?;
                    }
                }
            }
        }
        raw.finish(None)
    }

    /// Convenience wrapper over [`from_strings`](Self::from_strings) for byte strings.
    pub fn from_byte_strings<S: AsRef<[u8]>>(strings: &[S], direction: Direction) -> Result<Self> {
        let converted: Vec<Vec<Label>> =
            strings.iter().map(|s| s.as_ref().iter().map(|&b| Label::from(b)).collect()).collect();
        Self::from_strings(&converted, direction)
    }

    /// Builds a trie from `(child, parent, label)` rows. Exactly one row must
    /// have no parent; it names the root.
    pub fn from_edges(rows: &[EdgeRow]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut index_of = std::collections::HashMap::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            if index_of.insert(row.child, i as u32).is_some() {
                return Err(Error::DuplicateNode(row.child));
            }
        }
        let mut root = None;
        let mut parent = vec![NO_PARENT; rows.len()];
        let mut label = vec![0; rows.len()];
        for (i, row) in rows.iter().enumerate() {
            match row.parent {
                None => {
                    if root.is_some() {
                        return Err(Error::Disconnected(row.child));
                    }
                    root = Some(i as u32);
                }
                Some(p) => {
                    let pi = *index_of.get(&p).ok_or(Error::Disconnected(row.child))?;
                    if row.label == Label::MAX {
                        return Err(Error::SentinelCollision(row.label));
                    }
                    parent[i] = pi;
                    label[i] = row.label;
                }
            }
        }
        let root = root.ok_or(Error::NoRoot)?;
        let raw = RawTree { parent, label, children: Vec::new(), root };
        let externals: Vec<u64> = rows.iter().map(|r| r.child).collect();
        raw.finish(Some(externals))
    }

    /// Number of real nodes (everything except `⊥`).
    #[inline]
    pub fn node_count(&self) -> usize {
        self.parent.len() - 1
    }

    /// Number of edges including the sentinel edge `root → ⊥`.
    #[inline]
    pub fn edge_count(&self) -> usize {
        self.node_count()
    }

    /// All real nodes in id (= preorder) order.
    pub fn nodes(&self) -> impl DoubleEndedIterator<Item = NodeId> + ExactSizeIterator {
        (1..self.node_count() as u32 + 1).map(NodeId)
    }

    #[inline]
    pub fn parent(&self, v: NodeId) -> NodeId {
        self.parent[v.index()]
    }

    /// Label of the edge from `v` to its parent. For the root this is the sentinel.
    #[inline]
    pub fn in_label(&self, v: NodeId) -> Label {
        self.in_label[v.index()]
    }

    /// Children of `v`, in ascending label order.
    #[inline]
    pub fn children(&self, v: NodeId) -> &[NodeId] {
        let (s, e) = (self.child_start[v.index()], self.child_start[v.index() + 1]);
        &self.children[s as usize..e as usize]
    }

    pub fn child_with_label(&self, v: NodeId, label: Label) -> Option<NodeId> {
        let kids = self.children(v);
        kids.binary_search_by_key(&label, |&c| self.in_label(c)).ok().map(|i| kids[i])
    }

    /// Edges from `v` to `⊥`; equals the length of the suffix of `v`.
    #[inline]
    pub fn sdepth(&self, v: NodeId) -> u32 {
        self.sdepth[v.index()]
    }

    /// Edges from `v` to the root. Undefined for `⊥`.
    #[inline]
    pub fn depth(&self, v: NodeId) -> u32 {
        self.sdepth(v) - 1
    }

    pub fn max_sdepth(&self) -> u32 {
        self.sdepth.iter().copied().max().unwrap_or(0)
    }

    #[inline]
    pub fn sentinel(&self) -> Label {
        self.sentinel
    }

    /// The id the node carried in the edge list it was built from, if any.
    pub fn external_id(&self, v: NodeId) -> Option<u64> {
        match (&self.external_ids, v.is_bottom()) {
            (Some(ids), false) => Some(ids[v.index() - 1]),
            _ => None,
        }
    }

    /// The ancestor exactly `k` edges above `v`.
    pub fn ancestor_at(&self, v: NodeId, k: u32) -> Result<NodeId> {
        if k > self.sdepth(v) {
            return Err(Error::OutOfRange { node: v.0, value: k, limit: self.sdepth(v) });
        }
        Ok(self.ancestor(v, k))
    }

    /// Unchecked variant of [`ancestor_at`](Self::ancestor_at); saturates at `⊥`.
    #[inline]
    pub(crate) fn ancestor(&self, mut v: NodeId, mut k: u32) -> NodeId {
        let mut level = 0;
        while k != 0 && level < self.jump.len() {
            if k & 1 == 1 {
                v = self.jump[level][v.index()];
            }
            k >>= 1;
            level += 1;
        }
        if k != 0 {
            NodeId::BOTTOM
        } else {
            v
        }
    }

    pub(crate) fn jump_levels(&self) -> &[Vec<NodeId>] {
        &self.jump
    }

    /// The `i`-th symbol (1-based) of the suffix of `v`.
    pub fn suffix_char(&self, v: NodeId, i: u32) -> Result<Label> {
        if i == 0 || i > self.sdepth(v) {
            return Err(Error::OutOfRange { node: v.0, value: i, limit: self.sdepth(v) });
        }
        Ok(self.in_label(self.ancestor(v, i - 1)))
    }

    #[inline]
    pub(crate) fn suffix_char_unchecked(&self, v: NodeId, i: u32) -> Label {
        self.in_label(self.ancestor(v, i - 1))
    }

    /// Materializes the suffix of `v`, sentinel included.
    pub fn suffix(&self, mut v: NodeId) -> Vec<Label> {
        let mut out = Vec::with_capacity(self.sdepth(v) as usize);
        while !v.is_bottom() {
            out.push(self.in_label(v));
            v = self.parent(v);
        }
        out
    }

    /// Whether `a` is an ancestor of `d` (or equal to it).
    pub fn is_ancestor(&self, a: NodeId, d: NodeId) -> bool {
        let (da, dd) = (self.sdepth(a), self.sdepth(d));
        da <= dd && self.ancestor(d, dd - da) == a
    }

    /// Rows describing this trie, in id order, root row first.
    pub fn edge_rows(&self) -> Vec<EdgeRow> {
        self.nodes()
            .map(|v| EdgeRow {
                child: u64::from(v.0),
                parent: (v != NodeId::ROOT).then(|| u64::from(self.parent(v).0)),
                label: if v == NodeId::ROOT { 0 } else { self.in_label(v) },
            })
            .collect()
    }
}

/// Mutable tree used while building; indices are arbitrary until `finish`.
struct RawTree {
    parent: Vec<u32>,
    label: Vec<Label>,
    /// Only maintained by `child_or_insert`.
    children: Vec<Vec<(Label, u32)>>,
    root: u32,
}

impl RawTree {
    fn with_root() -> Self {
        RawTree { parent: vec![NO_PARENT], label: vec![0], children: vec![Vec::new()], root: 0 }
    }

    fn child_or_insert(&mut self, node: u32, l: Label) -> u32 {
        if let Some(&(_, c)) = self.children[node as usize].iter().find(|&&(cl, _)| cl == l) {
            return c;
        }
        let id = self.parent.len() as u32;
        self.parent.push(node);
        self.label.push(l);
        self.children.push(Vec::new());
        self.children[node as usize].push((l, id));
        id
    }

    fn finish(self, externals: Option<Vec<u64>>) -> Result<CommonSuffixTrie> {
        let n = self.parent.len();
        let ext = |i: u32| externals.as_ref().map_or(u64::from(i), |e| e[i as usize]);

        // CSR children lists over raw indices, sorted by label.
        let mut start = vec![0u32; n + 1];
        for (i, &p) in self.parent.iter().enumerate() {
            if i as u32 != self.root && p != NO_PARENT {
                start[p as usize + 1] += 1;
            }
        }
        for i in 0..n {
            start[i + 1] += start[i];
        }
        let mut fill = start.clone();
        let mut kids = vec![0u32; start[n] as usize];
        for (i, &p) in self.parent.iter().enumerate() {
            if i as u32 != self.root && p != NO_PARENT {
                kids[fill[p as usize] as usize] = i as u32;
                fill[p as usize] += 1;
            }
        }
        for v in 0..n {
            let slice = &mut kids[start[v] as usize..start[v + 1] as usize];
            slice.sort_unstable_by_key(|&c| self.label[c as usize]);
            if let Some(w) = slice.windows(2).find(|w| self.label[w[0] as usize] == self.label[w[1] as usize]) {
                return Err(Error::DuplicateChildLabel { parent: ext(v as u32), label: self.label[w[0] as usize] });
            }
        }

        // Canonical preorder renumbering.
        let mut new_id = vec![0u32; n];
        let mut order = Vec::with_capacity(n);
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            order.push(v);
            new_id[v as usize] = order.len() as u32;
            let slice = &kids[start[v as usize] as usize..start[v as usize + 1] as usize];
            stack.extend(slice.iter().rev());
        }
        if order.len() < n {
            // Every parent exists and there is a single root, so an unreachable
            // node must sit on a parent cycle.
            let v = (0..n as u32).find(|&v| new_id[v as usize] == 0).unwrap();
            return Err(Error::Cycle(ext(v)));
        }

        let sentinel =
            order.iter().filter(|&&v| v != self.root).map(|&v| self.label[v as usize]).max().map_or(0, |m| m + 1);

        let mut parent = vec![NodeId::BOTTOM; n + 1];
        let mut in_label = vec![0; n + 1];
        let mut sdepth = vec![0u32; n + 1];
        let mut child_start = vec![0u32; n + 2];
        in_label[1] = sentinel;
        sdepth[1] = 1;
        for &v in &order[1..] {
            let id = new_id[v as usize] as usize;
            let p = new_id[self.parent[v as usize] as usize];
            parent[id] = NodeId(p);
            in_label[id] = self.label[v as usize];
            sdepth[id] = sdepth[p as usize] + 1;
            child_start[p as usize + 1] += 1;
        }
        for i in 0..=n {
            child_start[i + 1] += child_start[i];
        }
        // Preorder ids of siblings increase with their labels, so filling in
        // id order yields label-sorted child lists.
        let mut fill = child_start.clone();
        let mut children = vec![NodeId::BOTTOM; n - 1];
        for (id, p) in parent.iter().enumerate().skip(2) {
            let p = p.index();
            children[fill[p] as usize] = NodeId(id as u32);
            fill[p] += 1;
        }

        let max_sdepth = sdepth.iter().copied().max().unwrap_or(0);
        let mut jump = vec![parent.clone()];
        let mut span = 2u32;
        while span <= max_sdepth {
            let prev = jump.last().unwrap();
            let next: Vec<NodeId> = prev.iter().map(|&a| prev[a.index()]).collect();
            jump.push(next);
            span = span.saturating_mul(2);
            if span == u32::MAX {
                break;
            }
        }

        let external_ids = externals.map(|e| order.iter().map(|&v| e[v as usize]).collect());

        Ok(CommonSuffixTrie { parent, in_label, child_start, children, sdepth, jump, sentinel, external_ids })
    }
}

/// Traversal orders used by the depth-constrained range queries.
#[derive(Clone, Debug)]
pub struct NodeOrders {
    bfs_pos: Vec<u32>,
    node_at_bfs: Vec<NodeId>,
    pre: Vec<u32>,
    post: Vec<u32>,
    /// `depth_interval[d]` for `d` in `1..=max_sdepth`; index 0 is unused.
    depth_interval: Vec<(u32, u32)>,
}

impl NodeOrders {
    pub fn compute(trie: &CommonSuffixTrie) -> Self {
        let n = trie.node_count();
        let mut pre = vec![0u32; n + 1];
        let mut post = vec![0u32; n + 1];
        let mut pre_order = Vec::with_capacity(n);
        let (mut pre_ctr, mut post_ctr) = (0u32, 0u32);
        // (node, expanded)
        let mut stack = vec![(NodeId::ROOT, false)];
        while let Some((v, expanded)) = stack.pop() {
            if expanded {
                post_ctr += 1;
                post[v.index()] = post_ctr;
                continue;
            }
            pre_ctr += 1;
            pre[v.index()] = pre_ctr;
            pre_order.push(v);
            stack.push((v, true));
            stack.extend(trie.children(v).iter().rev().map(|&c| (c, false)));
        }

        let max_d = trie.max_sdepth() as usize;
        let mut count = vec![0u32; max_d + 2];
        for &v in &pre_order {
            count[trie.sdepth(v) as usize + 1] += 1;
        }
        for d in 0..=max_d {
            count[d + 1] += count[d];
        }
        let mut depth_interval = vec![(0, 0); max_d + 1];
        for d in 1..=max_d {
            depth_interval[d] = (count[d] + 1, count[d + 1]);
        }
        let mut bfs_pos = vec![0u32; n + 1];
        let mut node_at_bfs = vec![NodeId::BOTTOM; n + 1];
        for &v in &pre_order {
            let d = trie.sdepth(v) as usize;
            count[d] += 1;
            bfs_pos[v.index()] = count[d];
            node_at_bfs[count[d] as usize] = v;
        }
        NodeOrders { bfs_pos, node_at_bfs, pre, post, depth_interval }
    }

    #[inline]
    pub fn bfs_pos(&self, v: NodeId) -> u32 {
        self.bfs_pos[v.index()]
    }

    #[inline]
    pub fn node_at_bfs(&self, x: u32) -> NodeId {
        self.node_at_bfs[x as usize]
    }

    #[inline]
    pub fn pre(&self, v: NodeId) -> u32 {
        self.pre[v.index()]
    }

    #[inline]
    pub fn post(&self, v: NodeId) -> u32 {
        self.post[v.index()]
    }

    /// The bfs interval `[i_d, j_d]` of nodes with sdepth `d`, if any exist.
    pub fn depth_interval(&self, d: u32) -> Option<(u32, u32)> {
        if d == 0 {
            return None;
        }
        self.depth_interval.get(d as usize).copied()
    }
}
