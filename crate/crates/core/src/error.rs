use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Fock space dimension must be at least 1")]
    ZeroDimension,

    #[error("dimension {dim} exceeds the configured cap of {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("shape mismatch: {left} vs {right}")]
    ShapeMismatch { left: usize, right: usize },

    #[error("operator contains non-finite entries")]
    NonFinite,

    #[error("margin {margin} leaves no interior block in dimension {dim}")]
    MarginTooLarge { margin: usize, dim: usize },

    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),

    #[error("matrix exponential error estimate {estimate:e} exceeds tolerance {tol:e}")]
    ExpTolerance { estimate: f64, tol: f64 },

    #[error("Pade denominator is numerically singular")]
    SingularDenominator,

    #[error("squeeze parameter {0} outside the operating range |zeta| <= {max}", max = crate::squeeze::MAX_ZETA)]
    SqueezeRange(f64),

    #[error("{what} requires dimension >= {min}, got {dim}")]
    DimensionTooSmall {
        what: &'static str,
        min: usize,
        dim: usize,
    },

    #[error("polynomial of degree {degree} does not fit in {dim} levels")]
    DegreeTooLarge { degree: usize, dim: usize },

    #[error("deformation parameter must be positive, got {0}")]
    NonPositiveQ(String),

    #[error("difference quotient is undefined at q = 1")]
    UnitQ,

    #[error("amplitude {index} has a non-zero imaginary part")]
    NonRealAmplitude { index: usize },

    #[error(
        "truncation tail {tail:e} exceeds requested {requested:e}; need dimension >= {min_dim}"
    )]
    TailTooLarge {
        tail: f64,
        requested: f64,
        min_dim: usize,
    },

    #[error("oscillator is not underdamped: k/m - gamma^2/(4 m^2) = {discriminant}")]
    NotUnderdamped { discriminant: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
