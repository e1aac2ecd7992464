use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("quaternion modulus below the inversion guard")]
    ZeroDivisor,

    #[error("polar axis is undefined for a real quaternion")]
    DegenerateAxis,

    #[error("expected a unit quaternion, got modulus {norm}")]
    NotUnit { norm: f64 },

    #[error("expected a pure imaginary quaternion, real part is {real}")]
    NotPureImaginary { real: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("matrix is not Hermitian (residual {residual:e})")]
    NotHermitian { residual: f64 },

    #[error("matrix is not anti-Hermitian (residual {residual:e})")]
    NotAntiHermitian { residual: f64 },

    #[error("complex matrix lacks symplectic symmetry (residual {residual:e})")]
    NotSymplectic { residual: f64 },

    #[error("eigensolver failed: {0}")]
    Eigensolver(String),

    #[error("basis mismatch: {0}")]
    BasisMismatch(String),

    #[error("no transformation table registered for <{to}|{from}>")]
    MissingTable { to: String, from: String },

    #[error("table <{to}|{from}> was already read and cannot be registered")]
    RegistrationAfterRead { to: String, from: String },

    #[error("table <{to}|{from}> is already registered")]
    DuplicateTable { to: String, from: String },

    #[error("state index {index} out of range for basis {basis} of size {size}")]
    StateOutOfRange { basis: String, index: usize, size: usize },

    #[error("reciprocal table violates <b|a> = conj(<a|b>) (residual {residual:e})")]
    NotReciprocal { residual: f64 },

    #[error("[iota, H] does not vanish (residual {residual:e})")]
    SuperselectionViolated { residual: f64 },

    #[error("state has support near the grid boundary (max outer amplitude {amplitude:e})")]
    BoundarySupport { amplitude: f64 },

    #[error("truncation {truncation} is below the minimum {minimum}")]
    TruncationTooSmall { truncation: usize, minimum: usize },

    #[error("state has occupation {weight:e} in the top two Fock levels")]
    EdgeSupport { weight: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub(crate) fn dims(rows: usize, cols: usize) -> String {
    format!("{rows}x{cols}")
}
