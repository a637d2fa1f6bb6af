use thiserror::Error;

use crate::rootsys::Family;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid family `{0}`")]
    InvalidFamily(String),

    #[error("rank {rank} is outside the admissible range for family {family}")]
    InvalidRank { family: Family, rank: usize },

    #[error("sign vector has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("count accumulator overflow")]
    CountOverflow,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
