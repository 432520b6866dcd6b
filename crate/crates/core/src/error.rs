use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not skew-symmetric at entry ({row}, {col})")]
    NotSkew { row: usize, col: usize },

    #[error("matrix is not symmetric at entry ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("non-finite value encountered: {0}")]
    NonFinite(String),

    #[error("indices must be distinct and below {dim}, got ({i}, {j}, {k})")]
    InvalidIndexTriple {
        i: usize,
        j: usize,
        k: usize,
        dim: usize,
    },

    #[error("at least {required} samples are required, got {found}")]
    TooFewSamples { required: usize, found: usize },

    #[error("time grid is not uniform")]
    NonUniformGrid,

    #[error("step must be positive, got {0}")]
    InvalidStep(f64),

    #[error("nodes must be distinct and strictly increasing")]
    BadNodes,

    #[error(
        "Newton iteration did not converge after {iterations} iterations (residual {residual:e})"
    )]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("solution left the admissible branch: beta = {0}")]
    OutsideBranch(f64),

    #[error("design matrix is rank deficient")]
    RankDeficient,

    #[error("moment of inertia must be strictly positive, got {0}")]
    InvalidInertia(f64),

    #[error("entry ({row}, {col}) is not affine in the state variables")]
    NotAffine { row: usize, col: usize },

    #[error("quadratic form is not positive definite (smallest eigenvalue {0:e})")]
    NotPositiveDefinite(f64),

    #[error("energy level must be non-negative, got {0}")]
    NegativeLevel(f64),

    #[error("level set is not an ellipsoid")]
    NotEllipsoid,

    #[error("invalid field file: {0}")]
    InvalidField(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
