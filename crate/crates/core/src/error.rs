use thiserror::Error;

/// Errors produced by partition construction, statistics and bijections.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element {0} appears in more than one block")]
    Overlap(usize),
    #[error("element {missing} of [1..{n}] is missing from every block")]
    Gap { missing: usize, n: usize },
    #[error("block {0} is empty")]
    EmptyBlock(usize),
    #[error("element 0 is not allowed; elements are 1-based")]
    ZeroElement,
    #[error("restricted growth violated at position {0}")]
    RestrictedGrowth(usize),
    #[error("block word must be a surjection onto 1..={k}; letter {letter} at position {position}")]
    BadBlockWord {
        position: usize,
        letter: usize,
        k: usize,
    },
    #[error("parse error at column {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("element {element} out of range 1..={n}")]
    ElementOutOfRange { element: usize, n: usize },
    #[error("block index {index} out of range 1..={max}")]
    BlockOutOfRange { index: usize, max: usize },
    #[error("{0} requires blocks in canonical order (increasing minima)")]
    NotCanonical(&'static str),
    #[error("inconsistent trace profile at element {element}: {reason}")]
    InconsistentProfile { element: usize, reason: String },
    #[error("invalid Motzkin path at step {step}: {reason}")]
    InvalidPath { step: usize, reason: String },
    #[error("statistic is negative ({value}) on {witness}")]
    NegativeExponent { value: i64, witness: String },
    #[error("unknown statistic `{0}`")]
    UnknownStatistic(String),
    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),
    #[error("contract violation: {0}")]
    ContractViolation(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
