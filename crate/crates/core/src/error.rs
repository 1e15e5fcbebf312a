use thiserror::Error;

/// Errors produced by the permutation toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("empty permutation")]
    Empty,
    #[error("value {value} out of range 1..={n}")]
    OutOfRange { value: usize, n: usize },
    #[error("duplicate value {0}")]
    Duplicate(usize),
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("permutation is not a single cycle")]
    NotSingleCycle,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("n = {n} exceeds the enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("unknown lemma id `{0}`")]
    UnknownLemma(String),
    #[error("walk is stuck at a vertex with distance {distance} and no descending neighbour")]
    NoDescendingNeighbor { distance: usize },
    #[error("degenerate input: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
