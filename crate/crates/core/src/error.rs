use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid size: {0}")]
    InvalidSize(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("non-finite value at index {0}")]
    NonFinite(usize),

    #[error("DC singularity: |0|^{q} is undefined for negative order")]
    DcSingularity { q: f64 },

    #[error("degenerate order q={q} for skew theta={theta}: Feller coefficients are unbounded")]
    DegenerateOrder { q: f64, theta: f64 },

    #[error("gamma function pole at x={0}")]
    Pole(f64),

    #[error("unsupported order q={0}: quadrature requires 0 < q < 1")]
    UnsupportedOrder(f64),

    #[error("imaginary residual {residual:e} exceeds tolerance {tolerance:e}; multiplier is not Hermitian")]
    SymmetryViolation { residual: f64, tolerance: f64 },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("image format: {0}")]
    Format(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
