//! Sharp Shafer-type bounds for the inverse tangent.
//!
//! For every real `x`,
//!
//! ```text
//! f(x) = x / (4/π² + sqrt((1-4/π²)² + 4x²/π²))
//!      <= arctan(x) <=
//! h(x) = x / (1-6/π² + sqrt(36/π⁴ + 4x²/π²))
//! ```
//!
//! (with the inequalities reversed for `x < 0`), and the constants cannot be
//! improved. This crate evaluates both bounds, their derivatives, series
//! and arctan-free error envelopes, builds approximation kernels on top of
//! them, and checks every claim numerically against a multi-precision
//! [`Oracle`].
//!
//! ```
//! use sharp_atan::{lower_bound, upper_bound};
//!
//! let x = 2.5_f64;
//! assert!(lower_bound(x) <= x.atan() && x.atan() <= upper_bound(x));
//! ```

pub mod bounds;
pub mod certification;
pub mod constants;
mod error;
pub mod kernels;
pub mod oracle;
pub mod series;

pub use bounds::{
    critical_point, critical_points_delta, delta_derivative, delta_f, delta_h, envelope_max,
    envelope_min, eval_shafer, first_derivative, lower_bound, reference_arctan, relative_error,
    second_derivative, upper_bound, BoundKind, EvaluationSample, ShaferCoefficients, Side,
};
pub use certification::{certify_range, find_max_relative_error, CertificationReport, Grid};
pub use error::{Error, Result};
pub use kernels::{atan2_approx, midpoint_arctan, CertifiedValue};
pub use oracle::Oracle;
pub use series::{series_coefficients, AsymptoticTerm, SeriesCoefficients, SeriesTarget};
