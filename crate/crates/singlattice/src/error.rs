use thiserror::Error;

/// Errors raised by the library. The CLI maps these onto its exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("invalid graph: {0}")]
    Validation(String),

    #[error("cycle does not belong to this graph")]
    GraphMismatch,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
