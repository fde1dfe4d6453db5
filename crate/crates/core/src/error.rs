use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("operation requires a finite base field")]
    InfiniteBase,
    #[error("budget exceeded: estimated {estimate} operations, limit {limit}")]
    BudgetExceeded { estimate: u64, limit: u64 },
    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),
    #[error("index set mismatch: {left} vs {right}")]
    IndexSetMismatch { left: usize, right: usize },
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("extension degree {0} is even; odd degree required")]
    EvenDegree(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
