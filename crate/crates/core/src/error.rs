use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("variable tables differ: {0}")]
    VarTableMismatch(String),
    #[error("polynomial is not univariate")]
    NotUnivariate,
    #[error("inexact polynomial division")]
    InexactDivision,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("frame is not generic: {0}")]
    NotGeneric(String),
    #[error("invalid character sequence: {0}")]
    InvalidCharacters(String),
    #[error("missing value for variable {0}")]
    MissingVariable(String),
    #[error("covector is characteristic: {0}")]
    Characteristic(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unknown name: {0}")]
    Unknown(String),
}

pub type Result<T> = std::result::Result<T, Error>;
