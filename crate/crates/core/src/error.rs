use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("variable count mismatch: {0} vs {1}")]
    VariableMismatch(usize, usize),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid partition {0:?}: parts must be weakly decreasing")]
    NotPartition(Vec<u32>),
    #[error("invalid flag {0:?}: bounds must be positive and nondecreasing")]
    InvalidFlag(Vec<u32>),
    #[error("invalid permutation {0:?}")]
    InvalidPermutation(Vec<usize>),
    #[error("word {0:?} is not reduced")]
    NotReduced(Vec<usize>),
    #[error("inner shape {inner:?} does not fit inside {outer:?}")]
    BadSkew { outer: Vec<u32>, inner: Vec<u32> },
    #[error("operator chain repeats index {0} consecutively")]
    RepeatedIndex(usize),
    #[error("invalid chain block F({0},{1})")]
    InvalidChainBlock(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("linear system has no exact solution")]
    Inconsistent,
    #[error("crystal decomposition disagrees with direct expansion")]
    PathMismatch,
}

pub type Result<T> = std::result::Result<T, Error>;
