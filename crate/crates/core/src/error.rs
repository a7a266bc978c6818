use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("coefficients are not symmetric: |a_{index} - a_-{index}| = {mismatch:e}")]
    AsymmetricCoefficients { index: i64, mismatch: f64 },

    #[error("coefficient index {0} given more than once")]
    DuplicateIndex(i64),

    #[error("grid of size {size} is too coarse, need at least {required}")]
    GridTooCoarse { size: usize, required: usize },

    #[error("grid size {0} must be a power of two and at least 8")]
    InvalidGridSize(usize),

    #[error("|Im psi| = {imag:e} exceeds the admissible strip half-width {limit:e}")]
    StripExceeded { imag: f64, limit: f64 },

    #[error("sample {index} has modulus {modulus:e}, too close to zero for a logarithm")]
    NearZeroSample { index: usize, modulus: f64 },

    #[error("phase increment {increment} at sample {index} is not resolved by the grid")]
    UnresolvedPhase { index: usize, increment: f64 },

    #[error("point {0} is not on the unit circle")]
    NotUnimodular(num_complex::Complex64),

    #[error("parameter s = {s} is too close to 0 or pi, exp(is) and exp(-is) coincide")]
    DegenerateNode { s: num_complex::Complex64 },

    #[error("winding number {0} is nonzero, no Wiener-Hopf factorization of this form")]
    NonzeroWinding(i64),

    #[error("the principal-value route needs a real parameter, got s = {0}")]
    ComplexParameter(num_complex::Complex64),

    #[error("fixed-point iteration for j = {j} is not contracting (step {step})")]
    NoContraction { j: usize, step: usize },

    #[error("fixed-point iteration for j = {j} did not reach tolerance, residual {residual:e}")]
    MaxIterExceeded { j: usize, residual: f64 },

    #[error("roots s_{j} and s_{k} coincide")]
    DuplicateRoot { j: usize, k: usize },

    #[error("symbol is not a valid simple loop: {0}")]
    InvalidSymbol(String),

    #[error("QR iteration did not converge for eigenvalue {index}")]
    NoConvergence { index: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) | Error::Json(_) => 4,
            Error::NoContraction { .. }
            | Error::MaxIterExceeded { .. }
            | Error::NoConvergence { .. }
            | Error::DuplicateRoot { .. }
            | Error::NearZeroSample { .. }
            | Error::UnresolvedPhase { .. }
            | Error::NonzeroWinding(_)
            | Error::DegenerateNode { .. }
            | Error::StripExceeded { .. } => 3,
            _ => 2,
        }
    }
}
