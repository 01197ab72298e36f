//! Maximal repetitions (runs) on edge-labeled rooted tries.
//!
//! The pipeline ranks every node suffix ([`suffix_order`]), derives the
//! longest Lyndon prefix of each suffix under both label orders
//! ([`lyndon`]), and checks each as a candidate L-root using LCE toward the
//! root and depth-constrained LCE toward the leaves ([`range_index`]).
//! [`runs::enumerate_runs`] ties it together.

pub mod error;
pub mod formats;
pub mod generate;
pub mod index;
pub mod lyndon;
pub mod oracles;
pub mod range_index;
pub mod runs;
pub mod suffix_order;
pub mod trie;
pub mod verify;
mod wavelet;

pub use error::{Error, Result};
pub use index::TrieIndex;
pub use runs::{enumerate_runs, run_stats, Parallelism, RunRecord, RunStats};
pub use suffix_order::LexOrder;
pub use trie::{CommonSuffixTrie, Direction, EdgeRow, Label, NodeId, NodeOrders};
