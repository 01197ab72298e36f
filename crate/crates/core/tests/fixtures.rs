use std::collections::BTreeSet;

use num::rational::Ratio;
use trie_runs::generate::fixtures;
use trie_runs::oracles::{string_runs_bruteforce, trie_runs_bruteforce};
use trie_runs::runs::count_runs;
use trie_runs::{
    enumerate_runs, run_stats, verify, CommonSuffixTrie, Direction, EdgeRow, NodeId, Parallelism, RunRecord, TrieIndex,
};

fn branched_abab() -> CommonSuffixTrie {
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

fn node(t: &CommonSuffixTrie, external: u64) -> NodeId {
    t.nodes().find(|&v| t.external_id(v) == Some(external)).unwrap()
}

#[test]
fn branched_abab_has_one_square_at_the_root() {
    let idx = TrieIndex::build(branched_abab());
    let n4 = node(idx.trie(), 5);
    let runs = enumerate_runs(&idx, Parallelism::Sequential).unwrap();
    assert_eq!(runs, vec![RunRecord { deep: n4, shallow: NodeId::ROOT, period: 2, length: 4 }]);
    assert_eq!(runs[0].exponent(), Ratio::from_integer(2));
    let stats = run_stats(&runs, idx.trie());
    assert_eq!(stats.count, 1);
    assert_eq!(stats.edge_count, 6);
    let confirmed = count_runs(&idx, Parallelism::Sequential).unwrap();
    assert_eq!(confirmed.len(), 1);
    assert_eq!((confirmed[0].shallow, confirmed[0].period), (NodeId::ROOT, 2));
}

#[test]
fn small_paths() {
    let runs = |w: &[u8]| {
        let t = CommonSuffixTrie::from_byte_strings(&[w], Direction::Rootward).unwrap();
        let idx = TrieIndex::build(t);
        enumerate_runs(&idx, Parallelism::Sequential)
            .unwrap()
            .into_iter()
            .map(|r| (idx.trie().sdepth(r.deep), idx.trie().sdepth(r.shallow), r.period, r.length))
            .collect::<Vec<_>>()
    };
    assert_eq!(runs(b"a"), vec![]);
    assert_eq!(runs(b"aa"), vec![(3, 1, 1, 2)]);
    assert_eq!(runs(b"aaaa"), vec![(5, 1, 1, 4)]);
    assert_eq!(runs(b"abab"), vec![(5, 1, 2, 4)]);
}

#[test]
fn aabaabaa_runs_are_frozen() {
    let w: Vec<u32> = b"aabaabaa".iter().map(|&b| u32::from(b)).collect();
    let want: BTreeSet<_> = [(1, 2, 1), (1, 8, 3), (4, 5, 1), (7, 8, 1)].into();
    assert_eq!(string_runs_bruteforce(&w), want);
}

#[test]
fn every_fixture_matches_the_oracles() {
    for (name, trie) in fixtures() {
        let idx = TrieIndex::build(trie);
        let report = verify::cross_check(&idx, 2000, 5);
        assert!(report.passed(), "{name}: {}", report.first_failure().unwrap());
        let runs = enumerate_runs(&idx, Parallelism::Sequential).unwrap();
        assert!(runs.len() < idx.trie().edge_count(), "{name}");
        let got: BTreeSet<_> = runs.into_iter().collect();
        assert_eq!(got, trie_runs_bruteforce(idx.trie()), "{name}");
    }
}

#[test]
fn fixture_path_tries_specialize_to_strings() {
    for (name, trie) in fixtures() {
        let idx = TrieIndex::build(trie);
        let Some(word) = verify::path_word(&idx) else { continue };
        let n = word.len() as u32;
        let got: BTreeSet<_> = enumerate_runs(&idx, Parallelism::Sequential)
            .unwrap()
            .into_iter()
            .map(|r| {
                let start = n + 2 - idx.trie().sdepth(r.deep);
                (start as usize, (start + r.length - 1) as usize, r.period as usize)
            })
            .collect();
        assert_eq!(got, string_runs_bruteforce(&word), "{name}");
    }
}
