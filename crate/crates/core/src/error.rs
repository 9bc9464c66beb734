use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not divisible: ({num}) / ({den})")]
    NotDivisible { num: String, den: String },
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("entry not invertible at degree {degree} ({row}, {col})")]
    NotInvertible { degree: i64, row: usize, col: usize },
    #[error("pattern not found: {0}")]
    PatternNotFound(String),
    #[error("open boundary present")]
    OpenBoundary,
    #[error("not composable: {0}")]
    NotComposable(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
