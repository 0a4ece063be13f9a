use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("field error: {0}")]
    Field(String),
    #[error("invalid complex: {0}")]
    Complex(String),
    #[error("unspecified degrees: homology at degree {0} needs differentials outside the stored range")]
    UnspecifiedDegrees(i64),
    #[error("complex is unbounded")]
    Unbounded,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("invalid category: {0}")]
    InvalidCategory(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid presentation: {0}")]
    Presentation(String),
    #[error("inconsistent differential: {0}")]
    InconsistentDifferential(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("category realization is truncated; homological computations need a closed realization")]
    Truncated,
    #[error("window not computable: {0}")]
    WindowNotComputable(String),
    #[error("not saturated: {0}")]
    NotSaturated(String),
    #[error("not an idempotent: {0}")]
    NotIdempotent(String),
    #[error("internal identity check failed: {0}")]
    Internal(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
}
