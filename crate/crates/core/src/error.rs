use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("preset `{name}` needs order n >= {min}, got {n}")]
    OrderTooSmall { name: String, n: usize, min: usize },

    #[error("index {index} is outside 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("malformed matrix file at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("matrix is not positive definite (smallest eigenvalue {lambda_min:e})")]
    NotPositiveDefinite { lambda_min: f64 },

    #[error("matrix is not positive definite (Cholesky pivot {pivot:e} at row {row})")]
    NonPositivePivot { row: usize, pivot: f64 },

    #[error("non-positive diagonal entry {value:e} at row {row}")]
    NonPositiveDiagonal { row: usize, value: f64 },

    #[error("degenerate spectrum: lambda_min == lambda_max == {0:e}")]
    DegenerateSpectrum(f64),

    #[error("bound not applicable: {0}")]
    Inapplicable(&'static str),

    #[error("integrand returned a non-finite value at omega = {omega:e}")]
    NonFiniteSample { omega: f64 },

    #[error("quadrature did not converge: value {value:e}, error estimate {error:e}")]
    QuadratureNotConverged { value: f64, error: f64 },

    #[error("invalid settings: {0}")]
    InvalidSettings(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("order {order} exceeds the dense cap of {cap}")]
    TooLarge { order: usize, cap: usize },
}
