use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown variable `{name}` at position {position}")]
    UnknownVariable { name: String, position: usize },

    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("negative exponent at position {position}")]
    NegativeExponent { position: usize },

    #[error("operands are declared over different variable sets")]
    VarsetMismatch,

    #[error("polynomial is not regular in `{var}`")]
    NotRegular { var: String },

    #[error("divisor is not monic in t")]
    NotMonic,

    #[error("invalid codimension: {size}x{size} minors requested from {rows} generators in {cols} variables")]
    InvalidCodim { size: usize, rows: usize, cols: usize },

    #[error("insufficient precision: need {needed}, have {have}")]
    InsufficientPrecision { needed: usize, have: usize },

    #[error("point is not on the scheme: generator {index} takes value {value}")]
    PointNotOnScheme { index: usize, value: String },

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("certificate failed after {attempts} attempts: {reason}")]
    CertificateFailure { attempts: usize, reason: String },

    #[error("assertion failed: {what} (expected {expected}, got {actual})")]
    AssertionFailure { what: String, expected: String, actual: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
