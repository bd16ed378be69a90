use num_bigint::BigInt;

pub type Result<T> = std::result::Result<T, Error>;

/// Domain errors shared by all modules.  Anything that parses user input
/// (CLI, sequence files) maps parse failures onto these as well.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid sequence parameter: {0}")]
    InvalidParameter(String),

    #[error("sequence term at index {index} is {value}, but every term must be positive")]
    NonpositiveTerm { index: usize, value: BigInt },

    #[error("index {index} is out of range for a custom sequence of length {len}")]
    TermOutOfRange { index: u64, len: usize },

    #[error("falling factorial needs k <= n, got n={n}, k={k}")]
    FallingRange { n: u64, k: u64 },

    #[error("cannot parse sequence spec {0:?} (expected natural|even|odd|mult:k|fibonacci|gauss:q|const:c)")]
    BadSequenceSpec(String),

    #[error("cannot read sequence file: {0}")]
    SequenceFile(String),

    #[error("search bound exceeds the configured ceiling: {0}")]
    CeilingExceeded(String),

    #[error("poset would have {needed} vertices, over the budget of {budget}")]
    VertexBudgetExceeded { needed: BigInt, budget: usize },

    #[error("grid has {cells} cells, over the enumeration budget of {budget}")]
    CellBudgetExceeded { cells: BigInt, budget: u64 },

    #[error("brute-force chain enumeration capped at {limit} chains, instance has {count}")]
    ChainInstanceTooLarge { count: BigInt, limit: u64 },

    #[error("modulus {modulus} needs at least {modulus} + 1 levels, poset has {levels}")]
    TooFewLevels { modulus: usize, levels: usize },

    #[error("vertex ({j},{s}) does not belong to the poset")]
    UnknownVertex { j: usize, s: usize },

    #[error("layer needs k < n, got k={k}, n={n}")]
    EmptyLayer { k: u64, n: u64 },

    #[error("malformed block: {0}")]
    MalformedBlock(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("{0}")]
    Unsupported(String),
}
