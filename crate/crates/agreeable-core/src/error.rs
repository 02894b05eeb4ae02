use thiserror::Error;

use crate::instance::ValidationReport;

/// Errors surfaced by instance construction and the solvers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("item universe must contain at least one item")]
    EmptyUniverse,

    #[error("at least one agent is required")]
    NoAgents,

    #[error("item index {item} outside universe 1..={m}")]
    ItemOutOfRange { item: u32, m: u32 },

    #[error("duplicate item index {item} in set")]
    DuplicateItem { item: u32 },

    #[error("set over universe of {set_m} items used with universe of {expected_m}")]
    UniverseMismatch { set_m: u32, expected_m: u32 },

    #[error("invalid profile: {0}")]
    InvalidProfile(ValidationReport),

    #[error("oracle evaluation failed: {0}")]
    OracleEval(String),

    #[error("oracle violates monotonicity: no candidate set is agreeable")]
    NonMonotoneOracle,

    #[error("resample budget of {cap} draws exhausted")]
    ResampleBudgetExhausted { cap: u32 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("covering design needs {blocks} blocks, exceeding the cap of {cap}")]
    BlockCapExceeded { blocks: u128, cap: u64 },

    #[error("brute force declined: {m} items exceeds the cap of {cap}")]
    BruteForceCapExceeded { m: u32, cap: u32 },

    #[error("utility of agent {agent} for item {item} is not an integer")]
    NonIntegerUtility { agent: u32, item: u32 },

    #[error("dynamic program declined: {n} agents exceeds the cap of {cap}")]
    DpAgentCapExceeded { n: u32, cap: u32 },

    #[error("dynamic program declined: table of {required} entries exceeds the cap of {cap}")]
    DpMemoryCapExceeded { required: String, cap: u64 },

    #[error("partition has odd cardinality {len}; an even number of elements is required")]
    OddPartition { len: usize },

    #[error("empty partition instance")]
    EmptyPartition,

    #[error("clause {clause} is malformed: {reason}")]
    MalformedClause { clause: usize, reason: String },

    #[error("clause {clause} contains variable {var} and its negation")]
    TautologicalClause { clause: usize, var: u32 },

    #[error("set cover element {element} is covered by {degree} subsets; at least 2 required")]
    CoverageDegree { element: u32, degree: usize },

    #[error("set cover subset {subset} contains element {element} outside the ground set")]
    ElementOutsideGroundSet { subset: usize, element: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;
