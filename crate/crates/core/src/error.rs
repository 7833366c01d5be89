use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HaarError {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid matching: {0}")]
    InvalidMatching(String),
    #[error("partitions of different weight: {0} and {1}")]
    WeightMismatch(usize, usize),
    #[error("coset type needs an even degree, got {0}")]
    OddDegree(usize),
    #[error("unknown group {0:?}; expected U, O or Sp")]
    InvalidGroup(String),
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),
    #[error("malformed cache file: {0}")]
    CacheFormat(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("resource bound exceeded: {0}")]
    Budget(String),
    #[error("invalid moment: {0}")]
    InvalidSpec(String),
    #[error("index {index} exceeds the dimension {dim}")]
    IndexOutOfRange { index: i64, dim: u32 },
    #[error("oracle inconsistency: {0}")]
    Inconsistent(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
