//! Monotonicity, concavity and critical-point structure of a bound.

use std::cmp::Ordering;

use serde::Serialize;

use super::Grid;
use crate::bounds::{critical_point, BoundKind, Side};
use crate::error::{Error, Result};
use crate::oracle::{BigFixed, Oracle};

const SCAN_LO: f64 = 1e-6;
const SCAN_HI: f64 = 1e6;
const BISECTION_WIDTH: f64 = 1e-12;
/// Largest accepted distance between the located and closed-form roots.
pub const CRITICAL_POINT_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShapeReport {
    pub kind: BoundKind,
    pub samples_per_sign: usize,
    /// First sample where the first derivative is not positive.
    pub derivative_violation: Option<f64>,
    /// First sample where `sign(F'') != -sign(x)`.
    pub concavity_violation: Option<f64>,
    /// Sign changes of dΔ/dx seen on the positive scan; only the two sharp
    /// bounds have a difference Δ to examine.
    pub sign_changes: Option<usize>,
    pub located: Option<f64>,
    pub closed_form: Option<f64>,
    pub passed: bool,
}

fn difference_side(kind: BoundKind) -> Option<Side> {
    match kind {
        BoundKind::SharpLower => Some(Side::Lower),
        BoundKind::SharpUpper => Some(Side::Upper),
        _ => None,
    }
}

/// Sign of dΔ/dx at `x`, computed in oracle precision so that the tiny
/// slopes near the origin are resolved.
pub fn delta_slope_sign(oracle: &Oracle, side: Side, x: f64) -> i32 {
    let triple = match side {
        Side::Lower => oracle.sharp_lower_triple(),
        Side::Upper => oracle.sharp_upper_triple(),
    };
    delta_slope(oracle, side, &triple, x).signum()
}

fn delta_slope(oracle: &Oracle, side: Side, triple: &[BigFixed; 3], x: f64) -> BigFixed {
    let atan_slope = oracle.atan_derivative(x);
    let bound_slope = oracle.shafer_derivative_hp(triple, x);
    match side {
        Side::Lower => atan_slope.sub(&bound_slope),
        Side::Upper => bound_slope.sub(&atan_slope),
    }
}

pub fn verify_shape_properties(oracle: &Oracle, kind: BoundKind, n: usize) -> Result<ShapeReport> {
    if n < 2 {
        return Err(Error::TooFewSamples { got: n, min: 2 });
    }
    let c = kind.coefficients();
    let positive = Grid::LogUniform.points(SCAN_LO, SCAN_HI, n)?;

    let mut derivative_violation = None;
    let mut concavity_violation = None;
    let negative = positive.iter().rev().map(|x| -x);
    for x in negative.chain(positive.iter().copied()) {
        if derivative_violation.is_none()
            && c.first_derivative(x).partial_cmp(&0.0) != Some(Ordering::Greater)
        {
            derivative_violation = Some(x);
        }
        let second = c.second_derivative(x);
        let ok = if x > 0.0 { second < 0.0 } else { second > 0.0 };
        if concavity_violation.is_none() && !ok {
            concavity_violation = Some(x);
        }
    }

    let mut report = ShapeReport {
        kind,
        samples_per_sign: n,
        derivative_violation,
        concavity_violation,
        sign_changes: None,
        located: None,
        closed_form: None,
        passed: false,
    };

    let mut critical_ok = true;
    if let Some(side) = difference_side(kind) {
        let triple = match side {
            Side::Lower => oracle.sharp_lower_triple(),
            Side::Upper => oracle.sharp_upper_triple(),
        };
        let sign = |x: f64| delta_slope(oracle, side, &triple, x).signum();
        let signs: Vec<i32> = positive.iter().map(|&x| sign(x)).collect();
        let mut changes = 0;
        let mut bracket = None;
        let mut previous: Option<(f64, i32)> = None;
        for (&x, &s) in positive.iter().zip(&signs) {
            if s == 0 {
                continue;
            }
            if let Some((px, ps)) = previous {
                if ps != s {
                    changes += 1;
                    bracket.get_or_insert((px, x, ps));
                }
            }
            previous = Some((x, s));
        }
        let closed_form = critical_point(side);
        report.sign_changes = Some(changes);
        report.closed_form = Some(closed_form);
        if let Some((mut a, mut b, sign_a)) = bracket {
            while b - a > BISECTION_WIDTH {
                let m = 0.5 * (a + b);
                if m <= a || m >= b {
                    break;
                }
                let s = sign(m);
                if s == 0 {
                    a = m;
                    b = m;
                } else if s == sign_a {
                    a = m;
                } else {
                    b = m;
                }
            }
            report.located = Some(0.5 * (a + b));
        }
        critical_ok = changes == 1
            && report
                .located
                .is_some_and(|x| (x - closed_form).abs() < CRITICAL_POINT_TOLERANCE);
    }

    report.passed = report.derivative_violation.is_none()
        && report.concavity_violation.is_none()
        && critical_ok;
    Ok(report)
}
