use thiserror::Error;

use crate::subset::SubsetMask;

/// Errors raised by oracles, verifiers and optimizers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ground set must have between 1 and {max} elements, got {n}")]
    GroundSize { n: usize, max: usize },

    #[error("invalid labels: {0}")]
    Labels(String),

    #[error("subset {mask:#b} has elements outside a ground set of size {n}")]
    InvalidSubset { mask: u32, n: usize },

    #[error("exhaustive check refused: n = {n} exceeds the cap {cap} (set POSIMOD_N_CAP to override)")]
    CapExceeded { n: usize, cap: usize },

    #[error("cannot contract an empty block")]
    EmptyBlock,

    #[error("operation requires a nonempty subset")]
    EmptySubset,

    #[error("oracle has no declared range bound")]
    MissingRangeBound,

    #[error("range bound {d} exceeds the limit {max} of this algorithm")]
    RangeBoundTooLarge { d: u64, max: u64 },

    #[error("oracle is not normalized: f(empty set) = {0}")]
    NotNormalized(String),

    #[error("value {value} of subset {subset} is not an integer in 0..={d}")]
    OutOfRange { subset: SubsetMask, value: String, d: u64 },

    #[error("invalid instance parameters: {0}")]
    InvalidInstance(String),

    #[error("malformed CNF: {0}")]
    Cnf(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
