use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Shafer coefficients must be finite and strictly positive, got ({c1}, {c2}, {c3})")]
    InvalidCoefficients { c1: f64, c2: f64, c3: f64 },

    #[error("invalid range [{lo}, {hi}]: need finite lo < hi")]
    InvalidRange { lo: f64, hi: f64 },

    #[error("need at least {min} sample points, got {got}")]
    TooFewSamples { got: usize, min: usize },

    #[error("log-uniform grid needs lo > 0, got lo = {0}")]
    NonPositiveLogRange(f64),

    #[error("triple component index must be 1, 2 or 3, got {0}")]
    InvalidComponent(usize),

    #[error("perturbation epsilon must be finite and non-negative, got {0}")]
    InvalidEpsilon(f64),

    #[error("no published series expansion for {0}")]
    NoSeries(String),

    #[error("atan2 is undefined at the origin")]
    Atan2AtOrigin,
}

pub type Result<T> = std::result::Result<T, Error>;
