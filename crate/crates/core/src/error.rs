use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("truncation mismatch: {0:?} vs {1:?}")]
    TruncationMismatch(Vec<u32>, Vec<u32>),
    #[error("invalid truncation: {0}")]
    InvalidTruncation(String),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(i64, i64),
    #[error("variable count mismatch: {0} vs {1}")]
    VariableMismatch(usize, usize),
    #[error("gamma acts only on reduced classes, element has a nonzero scalar part")]
    GammaOnScalar,
    #[error("subsets {0:?} and {1:?} overlap")]
    Overlap(Vec<usize>, Vec<usize>),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid simplicial complex: {0}")]
    InvalidComplex(String),
    #[error("complex mismatch between limit tuples")]
    ComplexMismatch,
    #[error("invalid characteristic data: {0}")]
    InvalidCharacteristic(String),
    #[error("manifold is not Sq2-acyclic (s = {0:?})")]
    NotSq2Acyclic(Vec<usize>),
    #[error("degree window {window} too small: quotient rank {rank}, expected {expected}")]
    WindowTooSmall { window: usize, rank: usize, expected: usize },
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
