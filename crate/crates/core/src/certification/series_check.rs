//! Numerical measurement of expansion coefficients.
//!
//! Each coefficient is read off a residual such as `(F(x) - a1 x) / x^3`
//! evaluated in oracle precision at three geometrically spaced points, then
//! two Richardson steps remove the next two error terms.

use serde::Serialize;

use crate::bounds::BoundKind;
use crate::error::{Error, Result};
use crate::oracle::{BigFixed, Oracle};
use crate::series::{series_coefficients, SeriesTarget};

/// Largest accepted `|measured - expected| / |expected|`.
pub const SERIES_TOLERANCE: f64 = 1e-4;

const TAYLOR_POINTS: [f64; 3] = [1e-2, 5e-3, 2.5e-3];
const ASYMPTOTIC_POINTS: [f64; 3] = [1e3, 2e3, 4e3];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesRow {
    /// `x^order` for Taylor rows, `x^-order` for asymptotic rows.
    pub label: String,
    pub expected: f64,
    pub measured: f64,
    pub relative_gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesCheck {
    pub target: SeriesTarget,
    pub rows: Vec<SeriesRow>,
    pub passed: bool,
}

/// Eliminates `c1 h^p1` and `c2 h^p2` from `D(h) = L + c1 h^p1 + c2 h^p2 + ...`
/// given `D` at `h`, `h/2`, `h/4`.
fn richardson(d: [f64; 3], powers: [i32; 2]) -> f64 {
    let k1 = 2f64.powi(powers[0]);
    let k2 = 2f64.powi(powers[1]);
    let r0 = (k1 * d[1] - d[0]) / (k1 - 1.0);
    let r1 = (k1 * d[2] - d[1]) / (k1 - 1.0);
    (k2 * r1 - r0) / (k2 - 1.0)
}

pub fn verify_series(oracle: &Oracle, target: impl Into<SeriesTarget>) -> Result<SeriesCheck> {
    let target = target.into();
    let expected = series_coefficients(target)?;
    let eval: Box<dyn Fn(f64) -> BigFixed + '_> = match target {
        SeriesTarget::Reference => Box::new(|x| oracle.atan(x)),
        SeriesTarget::Bound(BoundKind::SharpLower) => {
            let triple = oracle.sharp_lower_triple();
            Box::new(move |x| oracle.shafer_hp(&triple, x))
        }
        SeriesTarget::Bound(BoundKind::SharpUpper) => {
            let triple = oracle.sharp_upper_triple();
            Box::new(move |x| oracle.shafer_hp(&triple, x))
        }
        other => return Err(Error::NoSeries(other.to_string())),
    };
    let values_small: Vec<BigFixed> = TAYLOR_POINTS.iter().map(|&x| eval(x)).collect();
    let values_large: Vec<BigFixed> = ASYMPTOTIC_POINTS.iter().map(|&x| eval(x)).collect();

    let mut rows = Vec::with_capacity(6);

    // Taylor: odd function, so every residual has errors in x^2, x^4.
    for (idx, order) in [1i32, 3, 5].into_iter().enumerate() {
        let d = [0, 1, 2].map(|k| {
            let x = TAYLOR_POINTS[k];
            let mut residual = values_small[k].clone();
            for (j, lower_order) in [1i32, 3].into_iter().enumerate().take(idx) {
                let term =
                    BigFixed::from_f64(expected.taylor[j] * x.powi(lower_order), residual.scale());
                residual = residual.sub(&term);
            }
            residual.to_f64() / x.powi(order)
        });
        rows.push(row(
            format!("x^{order}"),
            expected.taylor[idx],
            richardson(d, [2, 4]),
        ));
    }

    // Asymptotic: h = 1/x halves across the three points.
    let terms = expected.asymptotic;
    for (idx, term) in terms.iter().enumerate() {
        let d = [0, 1, 2].map(|k| {
            let x = ASYMPTOTIC_POINTS[k];
            let mut residual = values_large[k].clone();
            for lower in &terms[..idx] {
                let value = if lower.power == 0 {
                    oracle.half_pi().clone()
                } else {
                    BigFixed::from_f64(lower.coeff / x.powi(lower.power as i32), residual.scale())
                };
                residual = residual.sub(&value);
            }
            residual.to_f64() * x.powi(term.power as i32)
        });
        let next_power = terms.get(idx + 1).map(|t| t.power as i32);
        let powers = asymptotic_error_powers(target, term.power as i32, next_power);
        rows.push(row(
            format!("x^-{}", term.power),
            term.coeff,
            richardson(d, powers),
        ));
    }

    let passed = rows.iter().all(|r| r.relative_gap <= SERIES_TOLERANCE);
    Ok(SeriesCheck {
        target,
        rows,
        passed,
    })
}

/// Powers of `h` in the residual's error after the measured term.
fn asymptotic_error_powers(target: SeriesTarget, power: i32, _next: Option<i32>) -> [i32; 2] {
    match target {
        // arctan(x) = π/2 - h + h^3/3 - h^5/5 + ...
        SeriesTarget::Reference => match power {
            0 => [1, 3],
            _ => [2, 4],
        },
        _ => [1, 2],
    }
}

fn row(label: String, expected: f64, measured: f64) -> SeriesRow {
    let relative_gap = ((measured - expected) / expected).abs();
    SeriesRow {
        label,
        expected,
        measured,
        relative_gap,
    }
}
