use thiserror::Error;

/// Errors raised by the library. Every variant is an input or contract
/// violation; semantic "no" answers are ordinary return values.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FabfError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("{0} not unimodular (det {1})")]
    NotUnimodular(String, String),
    #[error("matrix is not square: {0}x{1}")]
    NotSquare(usize, usize),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("element does not belong to the group: {0}")]
    GroupMismatch(String),
    #[error("rank mismatch: {0}")]
    RankMismatch(String),
    #[error("homomorphism has not been verified")]
    Unverified,
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("internal defect: {0}")]
    Defect(String),
}

impl FabfError {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        FabfError::Parse { line, column, message: message.into() }
    }
}

pub type Result<T, E = FabfError> = std::result::Result<T, E>;
