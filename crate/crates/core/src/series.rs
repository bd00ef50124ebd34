//! Leading Taylor (x -> 0) and asymptotic (x -> inf) coefficients.

use serde::Serialize;

use crate::bounds::{BoundKind, ShaferCoefficients};
use crate::constants::{HALF_PI, PI_F64, PI_FOURTH, PI_SQ, PI_SQ_MINUS_FOUR, PI_SQ_MINUS_SIX};
use crate::error::{Error, Result};

/// Coefficient of `x^-power` in an expansion about infinity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticTerm {
    pub power: u32,
    pub coeff: f64,
}

impl AsymptoticTerm {
    const fn new(power: u32, coeff: f64) -> Self {
        Self { power, coeff }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesCoefficients {
    /// Coefficients of `x`, `x^3`, `x^5`.
    pub taylor: [f64; 3],
    /// First three nonzero terms in powers of `1/x`.
    pub asymptotic: [AsymptoticTerm; 3],
}

impl SeriesCoefficients {
    pub const TAYLOR_ORDERS: [u32; 3] = [1, 3, 5];
}

/// A curve with a published expansion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum SeriesTarget {
    Bound(BoundKind),
    /// arctan itself
    Reference,
}

impl From<BoundKind> for SeriesTarget {
    fn from(kind: BoundKind) -> Self {
        SeriesTarget::Bound(kind)
    }
}

impl std::fmt::Display for SeriesTarget {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SeriesTarget::Bound(kind) => kind.fmt(f),
            SeriesTarget::Reference => write!(f, "arctan"),
        }
    }
}

/// Closed-form expansion coefficients of the two sharp bounds and of arctan.
///
/// The classic Shafer bound and custom triples have no published expansion
/// and are rejected; [`ShaferCoefficients::series`] covers any triple.
pub fn series_coefficients(target: impl Into<SeriesTarget>) -> Result<SeriesCoefficients> {
    let target = target.into();
    match target {
        SeriesTarget::Bound(BoundKind::SharpLower) => {
            let d = PI_SQ_MINUS_FOUR;
            Ok(SeriesCoefficients {
                taylor: [1.0, -2.0 / d, 2.0 * (3.0 * PI_SQ - 8.0) / (d * d * d)],
                asymptotic: [
                    AsymptoticTerm::new(0, HALF_PI),
                    AsymptoticTerm::new(1, -1.0),
                    AsymptoticTerm::new(2, -(PI_FOURTH - 8.0 * PI_SQ - 16.0) / (16.0 * PI_F64)),
                ],
            })
        }
        SeriesTarget::Bound(BoundKind::SharpUpper) => Ok(SeriesCoefficients {
            taylor: [1.0, -1.0 / 3.0, (PI_SQ + 12.0) / 108.0],
            asymptotic: [
                AsymptoticTerm::new(0, HALF_PI),
                AsymptoticTerm::new(1, -PI_SQ_MINUS_SIX / 4.0),
                AsymptoticTerm::new(2, (PI_FOURTH - 12.0 * PI_SQ + 18.0) / (8.0 * PI_F64)),
            ],
        }),
        SeriesTarget::Reference => Ok(SeriesCoefficients {
            taylor: [1.0, -1.0 / 3.0, 1.0 / 5.0],
            asymptotic: [
                AsymptoticTerm::new(0, HALF_PI),
                AsymptoticTerm::new(1, -1.0),
                AsymptoticTerm::new(3, 1.0 / 3.0),
            ],
        }),
        other => Err(Error::NoSeries(other.to_string())),
    }
}

impl ShaferCoefficients {
    /// Expansion coefficients of an arbitrary triple, from expanding the
    /// denominator: with `A = c1 + sqrt(c2)`, `p = c3 / (2 sqrt(c2))` and
    /// `q = -c3^2 / (8 c2^(3/2))`,
    ///
    /// * Taylor: `1/A`, `-p/A^2`, `p^2/A^3 - q/A^2`
    /// * asymptotic: `1/sqrt(c3)`, `-c1/c3`, `(c1^2 - c2/2) / c3^(3/2)`
    pub fn series(&self) -> SeriesCoefficients {
        let (c1, c2, c3) = (self.c1(), self.c2(), self.c3());
        let s = c2.sqrt();
        let a = c1 + s;
        let p = c3 / (2.0 * s);
        let q = -c3 * c3 / (8.0 * s * s * s);
        let root_c3 = c3.sqrt();
        SeriesCoefficients {
            taylor: [1.0 / a, -p / (a * a), p * p / (a * a * a) - q / (a * a)],
            asymptotic: [
                AsymptoticTerm::new(0, 1.0 / root_c3),
                AsymptoticTerm::new(1, -c1 / c3),
                AsymptoticTerm::new(2, (c1 * c1 - c2 / 2.0) / (c3 * root_c3)),
            ],
        }
    }
}
