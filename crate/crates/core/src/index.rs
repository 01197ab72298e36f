use std::time::{Duration, Instant};

use crate::lyndon::LyndonTable;
use crate::range_index::GridIndex;
use crate::suffix_order::SuffixOrder;
use crate::trie::{CommonSuffixTrie, NodeOrders};

/// Every structure the run enumeration queries, built once per trie.
#[derive(Clone, Debug)]
pub struct TrieIndex {
    trie: CommonSuffixTrie,
    suffixes: SuffixOrder,
    lyndon: LyndonTable,
    grid: GridIndex,
}

/// Wall time spent building each structure.
#[derive(Clone, Copy, Debug, Default)]
pub struct BuildTimings {
    pub orders: Duration,
    pub suffixes: Duration,
    pub lyndon: Duration,
    pub grid: Duration,
}

impl TrieIndex {
    pub fn build(trie: CommonSuffixTrie) -> Self {
        Self::build_timed(trie).0
    }

    pub fn build_timed(trie: CommonSuffixTrie) -> (Self, BuildTimings) {
        let mut timings = BuildTimings::default();
        let t = Instant::now();
        let orders = NodeOrders::compute(&trie);
        timings.orders = t.elapsed();

        let t = Instant::now();
        let suffixes = SuffixOrder::build(&trie);
        timings.suffixes = t.elapsed();

        let t = Instant::now();
        let lyndon = LyndonTable::build(&trie, &suffixes);
        timings.lyndon = t.elapsed();

        let t = Instant::now();
        let grid = GridIndex::build(&trie, orders, &suffixes);
        timings.grid = t.elapsed();

        (TrieIndex { trie, suffixes, lyndon, grid }, timings)
    }

    pub fn trie(&self) -> &CommonSuffixTrie {
        &self.trie
    }

    pub fn suffixes(&self) -> &SuffixOrder {
        &self.suffixes
    }

    pub fn lyndon(&self) -> &LyndonTable {
        &self.lyndon
    }

    pub fn grid(&self) -> &GridIndex {
        &self.grid
    }

    pub fn orders(&self) -> &NodeOrders {
        self.grid.orders()
    }

    pub fn into_trie(self) -> CommonSuffixTrie {
        self.trie
    }
}
