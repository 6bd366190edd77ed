use crate::scalars::ScalarError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("valence {valence} is not below the threshold {threshold} for this q")]
    Domain { valence: usize, threshold: u32 },
    #[error("index {index} out of range 0..={max}")]
    Index { index: usize, max: usize },
    #[error("node counts do not match: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("invalid link pattern: {0}")]
    InvalidPattern(String),
    #[error("projector size {size} exceeds the configured limit {limit}")]
    ProjectorTooLarge { size: usize, limit: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
