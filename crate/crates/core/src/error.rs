use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("space mismatch: expected {expected}, found {found}")]
    SpaceMismatch { expected: String, found: String },

    #[error("resource limit: {0}")]
    Resource(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("json: {0}")]
    Json(String),

    #[error("proof shape: {0}")]
    Shape(String),

    #[error(transparent)]
    Proof(#[from] crate::syntax::ProofError),

    #[error("probe: {0}")]
    Probe(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
