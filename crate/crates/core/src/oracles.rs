//! Brute-force references, transcribed from the definitions.
//!
//! Nothing here uses the indexing structures of this crate; only the trie's
//! parent links, labels, and children are read.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::runs::RunRecord;
use crate::suffix_order::LexOrder;
use crate::trie::{CommonSuffixTrie, Label, NodeId};

/// Smallest period of every prefix of `s`; entry `len` holds the period of
/// `s[..len]` (entry 0 is 0).
pub fn prefix_periods(s: &[Label]) -> Vec<usize> {
    let mut border = vec![0usize; s.len() + 1];
    let mut k = 0;
    for i in 1..s.len() {
        while k > 0 && s[i] != s[k] {
            k = border[k];
        }
        if s[i] == s[k] {
            k += 1;
        }
        border[i + 1] = k;
    }
    (0..=s.len()).map(|len| len - border[len]).collect()
}

/// Smallest period of `s`, by trying every candidate.
pub fn smallest_period(s: &[Label]) -> usize {
    (1..=s.len()).find(|&p| (p..s.len()).all(|i| s[i] == s[i - p])).unwrap_or(0)
}

/// All runs of `w` as 1-based inclusive `(start, end, period)`.
pub fn string_runs_bruteforce(w: &[Label]) -> BTreeSet<(usize, usize, usize)> {
    let n = w.len();
    let mut out = BTreeSet::new();
    for i in 0..n {
        let per = prefix_periods(&w[i..]);
        for len in 2..=n - i {
            let p = per[len];
            if 2 * p > len {
                continue;
            }
            let left_stops = i == 0 || w[i - 1] != w[i - 1 + p];
            let right_stops = i + len == n || w[i + len] != w[i + len - p];
            if left_stops && right_stops {
                out.insert((i + 1, i + len, p));
            }
        }
    }
    out
}

/// Next smaller value by the back-pointer scan: `out[i]` is the least
/// `j > i` with `a[j] < a[i]`, or `a.len()` if there is none.
pub fn string_nsv_reference(a: &[i64]) -> Vec<usize> {
    let n = a.len();
    let mut nsv = vec![n; n];
    if n == 0 {
        return nsv;
    }
    let at = |x: usize| if x == n { i64::MIN } else { a[x] };
    for i in (0..n - 1).rev() {
        let mut x = i + 1;
        while a[i] <= at(x) {
            x = nsv[x];
        }
        nsv[i] = x;
    }
    nsv
}

/// Next smaller value by scanning right from every position.
pub fn naive_nsv_scan(a: &[i64]) -> Vec<usize> {
    (0..a.len()).map(|i| (i + 1..a.len()).find(|&j| a[j] < a[i]).unwrap_or(a.len())).collect()
}

pub fn lex_cmp(a: &[Label], b: &[Label], order: LexOrder) -> Ordering {
    for (&x, &y) in a.iter().zip(b) {
        if x != y {
            return if order.less(x, y) { Ordering::Less } else { Ordering::Greater };
        }
    }
    a.len().cmp(&b.len())
}

/// Strictly smaller than each of its proper suffixes.
pub fn is_lyndon(s: &[Label], order: LexOrder) -> bool {
    !s.is_empty() && (1..s.len()).all(|k| lex_cmp(s, &s[k..], order) == Ordering::Less)
}

/// Length of the longest Lyndon prefix of `s`: the first factor of its
/// Lyndon factorization, found by Duval's scan.
pub fn longest_lyndon_prefix_len(s: &[Label], order: LexOrder) -> usize {
    let (mut j, mut k) = (1, 0);
    while j < s.len() && !order.less(s[j], s[k]) {
        if s[k] == s[j] {
            k += 1;
        } else {
            k = 0;
        }
        j += 1;
    }
    if s.is_empty() {
        0
    } else {
        j - k
    }
}

/// `str(u, a)` for an ancestor `a` of `u`, read upward.
pub fn path_string(trie: &CommonSuffixTrie, mut u: NodeId, a: NodeId) -> Vec<Label> {
    let mut out = Vec::new();
    while u != a {
        out.push(trie.in_label(u));
        u = trie.parent(u);
    }
    out
}

/// Real nodes sorted by materialized suffix under `order`.
pub fn naive_suffix_sort(trie: &CommonSuffixTrie, order: LexOrder) -> Vec<NodeId> {
    let mut nodes: Vec<(Vec<Label>, NodeId)> = trie.nodes().map(|v| (trie.suffix(v), v)).collect();
    nodes.sort_by(|a, b| lex_cmp(&a.0, &b.0, order));
    nodes.into_iter().map(|(_, v)| v).collect()
}

/// LCP of `suf(u)` and `suf(v)` by walking both parent chains.
pub fn naive_lcp(trie: &CommonSuffixTrie, mut u: NodeId, mut v: NodeId) -> u32 {
    let mut n = 0;
    while !u.is_bottom() && !v.is_bottom() && trie.in_label(u) == trie.in_label(v) {
        n += 1;
        u = trie.parent(u);
        v = trie.parent(v);
    }
    n
}

/// Nearest strict ancestor with a smaller rank, where `rank` is indexed by
/// node and `⊥` counts as smaller than everything.
pub fn naive_nsv_on_trie(trie: &CommonSuffixTrie, rank: &[u32]) -> Vec<NodeId> {
    let mut out = vec![NodeId::BOTTOM; trie.node_count() + 1];
    for v in trie.nodes() {
        let mut u = trie.parent(v);
        while !u.is_bottom() && rank[u.index()] > rank[v.index()] {
            u = trie.parent(u);
        }
        out[v.index()] = u;
    }
    out
}

/// Range predecessor over a 1-based sequence `ys[x - 1]`.
pub fn naive_range_pred(ys: &[u32], x1: u32, x2: u32, y: u32) -> Option<(u32, u32)> {
    (x1..=x2).map(|x| (x, ys[x as usize - 1])).filter(|&(_, v)| v <= y).max_by_key(|&(_, v)| v)
}

pub fn naive_range_succ(ys: &[u32], x1: u32, x2: u32, y: u32) -> Option<(u32, u32)> {
    (x1..=x2).map(|x| (x, ys[x as usize - 1])).filter(|&(_, v)| v >= y).min_by_key(|&(_, v)| v)
}

/// Descendants of `v` with sdepth `d`, in preorder.
pub fn naive_descendants_at_depth(trie: &CommonSuffixTrie, v: NodeId, d: u32) -> Vec<NodeId> {
    let mut out = Vec::new();
    let mut stack = vec![v];
    while let Some(u) = stack.pop() {
        if trie.sdepth(u) == d {
            out.push(u);
            continue;
        }
        stack.extend(trie.children(u).iter().rev());
    }
    out
}

/// Largest LCP between `suf(v)` and the suffix of a descendant at sdepth `d`.
pub fn naive_lce_down(trie: &CommonSuffixTrie, v: NodeId, d: u32) -> Option<u32> {
    naive_descendants_at_depth(trie, v, d).into_iter().map(|u| naive_lcp(trie, u, v)).max()
}

/// Every run of the trie, by scanning all (node, ancestor) pairs.
pub fn trie_runs_bruteforce(trie: &CommonSuffixTrie) -> BTreeSet<RunRecord> {
    let mut out = BTreeSet::new();
    for deep in trie.nodes() {
        let s = trie.suffix(deep);
        let per = prefix_periods(&s);
        // The sentinel never belongs to a run.
        let mut shallow = deep;
        for len in 1..s.len() {
            shallow = trie.parent(shallow);
            let p = per[len];
            if 2 * p > len || s[len] == s[len - p] {
                continue;
            }
            // The period continues downward only through the child labeled s[p - 1].
            if trie.children(deep).iter().any(|&c| trie.in_label(c) == s[p - 1]) {
                continue;
            }
            out.insert(RunRecord { deep, shallow, period: p as u32, length: len as u32 });
        }
    }
    out
}

/// Independent checks of one run record by materialization.
pub fn check_run(trie: &CommonSuffixTrie, r: &RunRecord) -> Result<(), String> {
    if r.deep == r.shallow || !is_strict_ancestor(trie, r.shallow, r.deep) {
        return Err(format!("{} is not a strict ancestor of {}", r.shallow, r.deep));
    }
    let s = path_string(trie, r.deep, r.shallow);
    if s.len() != r.length as usize {
        return Err(format!("length {} != {}", s.len(), r.length));
    }
    let p = smallest_period(&s);
    if p != r.period as usize {
        return Err(format!("smallest period {p} != {}", r.period));
    }
    if 2 * p > s.len() {
        return Err("not a repetition".into());
    }
    let above = trie.in_label(r.shallow);
    if r.shallow != NodeId::ROOT && above == s[s.len() - p] {
        return Err("extends toward the root".into());
    }
    if trie.children(r.deep).iter().any(|&c| trie.in_label(c) == s[p - 1]) {
        return Err("extends toward the leaves".into());
    }
    Ok(())
}

fn is_strict_ancestor(trie: &CommonSuffixTrie, a: NodeId, mut d: NodeId) -> bool {
    while !d.is_bottom() {
        d = trie.parent(d);
        if d == a {
            return true;
        }
    }
    false
}

/// Suffix array of `w` followed by a unique terminator larger than every
/// symbol; returns the 1-based rank of each position.
pub fn string_inverse_suffix_array(w: &[Label]) -> Vec<usize> {
    let n = w.len();
    let mut text: Vec<u64> = w.iter().map(|&c| u64::from(c)).collect();
    text.push(u64::MAX);
    let mut sa: Vec<usize> = (0..=n).collect();
    sa.sort_by(|&a, &b| text[a..].cmp(&text[b..]));
    let mut isa = vec![0; n + 1];
    for (r, &i) in sa.iter().enumerate() {
        isa[i] = r + 1;
    }
    isa
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trie::Direction;

    fn syms(s: &str) -> Vec<Label> {
        s.bytes().map(Label::from).collect()
    }

    #[test]
    fn string_runs_small() {
        assert_eq!(string_runs_bruteforce(&syms("aa")), BTreeSet::from([(1, 2, 1)]));
        assert_eq!(string_runs_bruteforce(&syms("abab")), BTreeSet::from([(1, 4, 2)]));
        assert!(string_runs_bruteforce(&syms("abc")).is_empty());
    }

    #[test]
    fn string_runs_aabaabaa() {
        // Frozen from this oracle; checked by hand: the three "aa" squares and
        // the whole word with period 3.
        let got = string_runs_bruteforce(&syms("aabaabaa"));
        assert_eq!(got, BTreeSet::from([(1, 2, 1), (1, 8, 3), (4, 5, 1), (7, 8, 1)]));
    }

    #[test]
    fn prefix_periods_match_direct() {
        let s = syms("abaababaabaababaababa");
        let per = prefix_periods(&s);
        for len in 1..=s.len() {
            assert_eq!(per[len], smallest_period(&s[..len]));
        }
    }

    #[test]
    fn nsv_reference_shapes() {
        let inc: Vec<i64> = (1..=6).collect();
        assert_eq!(string_nsv_reference(&inc), vec![6; 6]);
        let dec: Vec<i64> = (1..=6).rev().collect();
        assert_eq!(string_nsv_reference(&dec), vec![1, 2, 3, 4, 5, 6]);
        let mixed = [5, 2, 7, 3, 9, 1, 4];
        assert_eq!(string_nsv_reference(&mixed), naive_nsv_scan(&mixed));
    }

    #[test]
    fn lyndon_checks() {
        let n = LexOrder::Natural;
        assert!(is_lyndon(&syms("aab"), n));
        assert!(!is_lyndon(&syms("aba"), n));
        assert!(is_lyndon(&syms("ba"), LexOrder::Reversed));
        assert!(!is_lyndon(&[], n));
    }

    #[test]
    fn trie_runs_of_path_and_single_edge() {
        let t = CommonSuffixTrie::from_byte_strings(&["a"], Direction::Rootward).unwrap();
        assert!(trie_runs_bruteforce(&t).is_empty());
        let t = CommonSuffixTrie::from_byte_strings(&["abab"], Direction::Rootward).unwrap();
        let runs = trie_runs_bruteforce(&t);
        assert_eq!(runs, BTreeSet::from([RunRecord { deep: NodeId(5), shallow: NodeId::ROOT, period: 2, length: 4 }]));
        for r in &runs {
            check_run(&t, r).unwrap();
        }
    }
}
