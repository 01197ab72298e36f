use thiserror::Error;

use crate::trie::Label;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("input contains no strings or rows")]
    EmptyInput,
    #[error("label {0} collides with the reserved sentinel value")]
    SentinelCollision(Label),
    #[error("node {parent} has two children labeled {label}")]
    DuplicateChildLabel { parent: u64, label: Label },
    #[error("node {0} lies on a parent cycle")]
    Cycle(u64),
    #[error("node {0} is not connected to the root")]
    Disconnected(u64),
    #[error("no root row (parent -1) in edge list")]
    NoRoot,
    #[error("node id {0} appears on more than one row")]
    DuplicateNode(u64),
    #[error("argument {value} out of range for node {node} (limit {limit})")]
    OutOfRange { node: u32, value: u32, limit: u32 },
    #[error("query on node {0} is undefined")]
    InvalidNode(u32),
    #[error("malformed interval [{0}, {1}]")]
    BadInterval(u32, u32),
    #[error("node {0} is already unmarked")]
    AlreadyUnmarked(u32),
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error("run with shallow endpoint {shallow} and anchor {anchor} confirmed twice")]
    DuplicateConfirmation { shallow: u32, anchor: u32 },
}

impl Error {
    /// Whether the error reports a violated trie invariant in otherwise
    /// well-formed input.
    pub fn is_invariant_violation(&self) -> bool {
        matches!(
            self,
            Error::DuplicateChildLabel { .. }
                | Error::Cycle(_)
                | Error::Disconnected(_)
                | Error::NoRoot
                | Error::DuplicateNode(_)
                | Error::SentinelCollision(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
