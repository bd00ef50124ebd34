//! Fast arctan and atan2 built from the sharp bounds, each value shipped
//! with an error certificate.

use serde::Serialize;

use crate::bounds::{envelope_max, lower_bound, upper_bound};
use crate::constants::{HALF_PI, PI_F64, UNIT_ROUNDOFF};
use crate::error::{Error, Result};

/// Rounding allowance on top of the exact-arithmetic certificate: the two
/// bound evaluations, their sum and the halving.
pub const MIDPOINT_ROUNDOFF: f64 = 8.0 * UNIT_ROUNDOFF;

/// Below this magnitude an angle's certificate is read as absolute.
pub const TINY_ANGLE: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CertifiedValue {
    /// Radians.
    pub value: f64,
    /// Bound on `|value - truth| / |truth|`.
    pub max_relative_error: f64,
    /// Bound on `|value - truth|`.
    pub max_absolute_error: f64,
}

impl CertifiedValue {
    fn exact(value: f64) -> Self {
        Self {
            value,
            max_relative_error: 0.0,
            max_absolute_error: 0.0,
        }
    }

    /// Whether `truth` lies within the certificate (plus `slack`, absolute).
    pub fn covers(&self, truth: f64, slack: f64) -> bool {
        let err = (self.value - truth).abs();
        let by_relative = self.max_relative_error * truth.abs();
        err <= by_relative.max(self.max_absolute_error) + slack
    }
}

/// `(f(x) + h(x)) / 2`.
///
/// The truth lies in `[f, h]`, so the midpoint is off by at most
/// `(h - f) / 2`; dividing by the smallest possible truth `f` gives the
/// relative certificate `(h - f) / (2 f)`, which is half of
/// [`envelope_max`].
pub fn midpoint_arctan(x: f64) -> CertifiedValue {
    if x.is_nan() {
        return CertifiedValue {
            value: x,
            max_relative_error: f64::NAN,
            max_absolute_error: f64::NAN,
        };
    }
    if x.is_infinite() {
        return CertifiedValue::exact(HALF_PI.copysign(x));
    }
    if x == 0.0 {
        return CertifiedValue::exact(x);
    }
    let value = 0.5 * (lower_bound(x) + upper_bound(x));
    let max_relative_error = 0.5 * envelope_max(x) + MIDPOINT_ROUNDOFF;
    CertifiedValue {
        value,
        max_relative_error,
        max_absolute_error: max_relative_error * value.abs() + subnormal_floor(value),
    }
}

/// Covers the absolute rounding of results that land in the subnormal range.
fn subnormal_floor(value: f64) -> f64 {
    if value.abs() < TINY_ANGLE {
        4.0 * f64::from_bits(1)
    } else {
        0.0
    }
}

/// Four-quadrant arctangent in `(-π, π]` through a single
/// [`midpoint_arctan`] on a reduced argument in `[0, 1]`.
///
/// Axis and infinite inputs follow the usual atan2 table and are exact
/// (to the nearest double of the angle). The negative branch cut returns `+π`
/// for both signed zeros.
pub fn atan2_approx(y: f64, x: f64) -> Result<CertifiedValue> {
    if y.is_nan() || x.is_nan() {
        return Ok(CertifiedValue {
            value: f64::NAN,
            max_relative_error: f64::NAN,
            max_absolute_error: f64::NAN,
        });
    }
    if y == 0.0 && x == 0.0 {
        return Err(Error::Atan2AtOrigin);
    }
    if let Some(angle) = special_angle(y, x) {
        return Ok(CertifiedValue::exact(angle));
    }

    let (ay, ax) = (y.abs(), x.abs());
    let swap = ay > ax;
    let reduced = if swap { ax / ay } else { ay / ax };
    debug_assert!((0.0..=1.0).contains(&reduced));
    let kernel = midpoint_arctan(reduced);

    let mut angle = kernel.value;
    if swap {
        angle = HALF_PI - angle;
    }
    if x < 0.0 {
        angle = PI_F64 - angle;
    }
    let angle = angle.copysign(y);

    // Reassembly adds exact-ish constants, so the absolute error carries over
    // (plus the rounding of each subtraction and of the ratio).
    let reassembly = if swap || x < 0.0 {
        4.0 * UNIT_ROUNDOFF * angle.abs()
    } else {
        0.0
    };
    let ratio_rounding = UNIT_ROUNDOFF * reduced;
    let max_absolute_error =
        kernel.max_absolute_error + reassembly + ratio_rounding + subnormal_floor(angle);
    let max_relative_error = if !swap && x > 0.0 {
        kernel.max_relative_error + 2.0 * UNIT_ROUNDOFF
    } else {
        // here |angle| >= π/4
        max_absolute_error / angle.abs()
    };
    Ok(CertifiedValue {
        value: angle,
        max_relative_error,
        max_absolute_error,
    })
}

/// Axis and infinity cases of the atan2 contract.
fn special_angle(y: f64, x: f64) -> Option<f64> {
    let quarter = std::f64::consts::FRAC_PI_4;
    if y.is_infinite() && x.is_infinite() {
        let base = if x > 0.0 { quarter } else { 3.0 * quarter };
        return Some(base.copysign(y));
    }
    if y == 0.0 || x.is_infinite() {
        return Some(if x > 0.0 { 0.0f64.copysign(y) } else { PI_F64 });
    }
    if x == 0.0 || y.is_infinite() {
        return Some(HALF_PI.copysign(y));
    }
    None
}
