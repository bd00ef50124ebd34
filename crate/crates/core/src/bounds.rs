//! Closed-form Shafer-family bounds for the inverse tangent.
//!
//! Every bound here has the shape `x / (c1 + sqrt(c2 + c3 x^2))` with a
//! strictly positive triple. The two sharp triples give the tightest lower
//! bound `f` and upper bound `h` of that shape, so that for every real `x`
//! `|f(x)| <= |arctan(x)| <= |h(x)|`.

use serde::Serialize;

use crate::constants::{
    FOUR_OVER_PI_SQ, HALF_PI, HALF_PI_TAIL, LOWER_C2, PI_SQ, PI_SQ_MINUS_FOUR, PI_SQ_MINUS_FOUR_SQ,
    PI_SQ_MINUS_SIX, PI_SQ_MINUS_TWO, PI_SQ_PLUS_TWO, TEN_MINUS_PI_SQ, UPPER_C1, UPPER_C2,
};
use crate::error::{Error, Result};

/// Beyond this magnitude the derivative formulas are evaluated with every
/// power of `x` divided out, so nothing overflows.
const DERIVATIVE_RESCALE: f64 = 1e32;

/// Supremum of [`envelope_max`] over the reals, attained at
/// `x = ±1.9454258387858252`.
pub const ENVELOPE_MAX_SUPREMUM: f64 = 0.004_200_082_824_874_118;

/// Bound values beyond this magnitude are expanded around the limit.
const LARGE_ARGUMENT: f64 = 1e8;

/// A strictly positive triple `(c1, c2, c3)` parameterizing
/// `x / (c1 + sqrt(c2 + c3 x^2))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShaferCoefficients {
    c1: f64,
    c2: f64,
    c3: f64,
    /// `limit() + limit_tail` is the limit to about twice double precision.
    #[serde(skip)]
    limit_tail: f64,
}

impl ShaferCoefficients {
    /// `(4/π², (1 - 4/π²)², 4/π²)`, the sharp lower bound `f`.
    pub const SHARP_LOWER: Self = Self {
        c1: FOUR_OVER_PI_SQ,
        c2: LOWER_C2,
        c3: FOUR_OVER_PI_SQ,
        limit_tail: HALF_PI_TAIL,
    };

    /// `(1 - 6/π², (6/π²)², 4/π²)`, the sharp upper bound `h`.
    pub const SHARP_UPPER: Self = Self {
        c1: UPPER_C1,
        c2: UPPER_C2,
        c3: FOUR_OVER_PI_SQ,
        limit_tail: HALF_PI_TAIL,
    };

    /// Shafer's classic `3x / (1 + 2 sqrt(1 + x^2))`, divided through by 3.
    pub const CLASSIC_SHAFER: Self = Self {
        c1: 1.0 / 3.0,
        c2: 4.0 / 9.0,
        c3: 4.0 / 9.0,
        limit_tail: 4.163_336_342_344_337e-17,
    };

    pub fn new(c1: f64, c2: f64, c3: f64) -> Result<Self> {
        let ok = |c: f64| c.is_finite() && c > 0.0;
        if ok(c1) && ok(c2) && ok(c3) {
            Ok(Self {
                c1,
                c2,
                c3,
                limit_tail: limit_tail(c3),
            })
        } else {
            Err(Error::InvalidCoefficients { c1, c2, c3 })
        }
    }

    pub fn c1(&self) -> f64 {
        self.c1
    }

    pub fn c2(&self) -> f64 {
        self.c2
    }

    pub fn c3(&self) -> f64 {
        self.c3
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.c1, self.c2, self.c3]
    }

    /// Multiplies component `component` (1-based) by `factor`.
    pub fn with_scaled_component(&self, component: usize, factor: f64) -> Result<Self> {
        let mut c = self.as_array();
        match component {
            1..=3 => c[component - 1] *= factor,
            _ => return Err(Error::InvalidComponent(component)),
        }
        Self::new(c[0], c[1], c[2])
    }

    /// Value approached as `x -> +inf`, namely `1 / sqrt(c3)`.
    pub fn limit(&self) -> f64 {
        1.0 / self.c3.sqrt()
    }

    /// Where [`ShaferCoefficients::eval`] switches to the expansion around
    /// the limit; also keeps `c3 x^2` from overflowing.
    fn large_argument(&self) -> f64 {
        LARGE_ARGUMENT.min(f64::MAX.sqrt() / self.c3.sqrt().max(1.0) / 2.0)
    }

    /// `x / (c1 + sqrt(c2 + c3 x^2))`, odd in `x` bit for bit.
    ///
    /// The sharp triples stand for their exact values in π, so their limit is
    /// taken as π/2 itself rather than `1 / sqrt(c3)` of the rounded `c3`.
    /// For large `|x|` the value is formed as `L - L δ / (1 + δ)` with
    /// `L = 1 / sqrt(c3)`, `u = 1/|x|` and
    /// `δ = (c1 u + c2 u^2 / (sqrt(c3 + c2 u^2) + sqrt(c3))) / sqrt(c3)`,
    /// so the result is within about one rounding of the true value and
    /// settles on `L` once the gap drops below half an ulp.
    pub fn eval(&self, x: f64) -> f64 {
        if x.is_nan() {
            return x;
        }
        let ax = x.abs();
        let magnitude = if ax.is_infinite() {
            self.limit()
        } else if ax > self.large_argument() {
            let u = 1.0 / ax;
            let s3 = self.c3.sqrt();
            let q = (self.c3 + self.c2 * u * u).sqrt();
            let delta = (self.c1 * u + self.c2 * u * u / (q + s3)) / s3;
            let limit = 1.0 / s3;
            limit + (self.limit_tail - limit * delta / (1.0 + delta))
        } else {
            ax / (self.c1 + (self.c2 + self.c3 * ax * ax).sqrt())
        };
        magnitude.copysign(x)
    }

    /// `(c2 + c1 s) / (s (c1 + s)^2)` with `s = sqrt(c2 + c3 x^2)`; even in `x`.
    pub fn first_derivative(&self, x: f64) -> f64 {
        if x.is_nan() {
            return x;
        }
        let (c1, c2, c3) = (self.c1, self.c2, self.c3);
        let ax = x.abs();
        if ax.is_infinite() {
            return 0.0;
        }
        if ax > DERIVATIVE_RESCALE {
            let q = (c2 / (ax * ax) + c3).sqrt();
            let inner = c1 / ax + q;
            return (c2 / ax + c1 * q) / (q * inner * inner) / ax / ax;
        }
        let s = (c2 + c3 * ax * ax).sqrt();
        let inner = c1 + s;
        (c2 + c1 * s) / (s * inner * inner)
    }

    /// `-c3 x (3 c1 c2 + 2 c1 c3 x^2 + 3 c2 s) / ((c2 + c3 x^2)^(3/2) (c1 + s)^3)`;
    /// odd in `x`, with sign `-sign(x)`.
    pub fn second_derivative(&self, x: f64) -> f64 {
        if x.is_nan() {
            return x;
        }
        let (c1, c2, c3) = (self.c1, self.c2, self.c3);
        let ax = x.abs();
        let magnitude = if ax.is_infinite() {
            0.0
        } else if ax > DERIVATIVE_RESCALE {
            let q = (c2 / (ax * ax) + c3).sqrt();
            let inner = c1 / ax + q;
            let numer = 3.0 * c1 * c2 / (ax * ax) + 2.0 * c1 * c3 + 3.0 * c2 * q / ax;
            c3 * numer / (q * q * q * inner * inner * inner) / ax / ax / ax
        } else {
            let radicand = c2 + c3 * ax * ax;
            let s = radicand.sqrt();
            let inner = c1 + s;
            let numer = 3.0 * c1 * c2 + 2.0 * c1 * c3 * ax * ax + 3.0 * c2 * s;
            c3 * ax * numer / (radicand * s * inner * inner * inner)
        };
        -magnitude.copysign(x)
    }
}

/// `1/sqrt(c3) - fl(1/sqrt(c3))`, from the exact residuals of the square
/// root and of the reciprocal.
fn limit_tail(c3: f64) -> f64 {
    let s = c3.sqrt();
    let sqrt_tail = (-s).mul_add(s, c3) / (2.0 * s);
    let hi = 1.0 / s;
    let recip_residual = (-hi).mul_add(s, 1.0);
    hi * (recip_residual - sqrt_tail / s)
}

/// Which member of the Shafer family to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum BoundKind {
    SharpLower,
    SharpUpper,
    ClassicShafer,
    Custom(ShaferCoefficients),
}

impl BoundKind {
    pub fn coefficients(&self) -> ShaferCoefficients {
        match self {
            BoundKind::SharpLower => ShaferCoefficients::SHARP_LOWER,
            BoundKind::SharpUpper => ShaferCoefficients::SHARP_UPPER,
            BoundKind::ClassicShafer => ShaferCoefficients::CLASSIC_SHAFER,
            BoundKind::Custom(c) => *c,
        }
    }
}

impl std::fmt::Display for BoundKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BoundKind::SharpLower => write!(f, "sharp lower bound"),
            BoundKind::SharpUpper => write!(f, "sharp upper bound"),
            BoundKind::ClassicShafer => write!(f, "classic Shafer bound"),
            BoundKind::Custom(c) => write!(f, "custom bound ({}, {}, {})", c.c1, c.c2, c.c3),
        }
    }
}

/// Lower (`f`, difference `g - f`) or upper (`h`, difference `h - g`) side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    Lower,
    Upper,
}

impl Side {
    pub fn coefficients(self) -> ShaferCoefficients {
        match self {
            Side::Lower => ShaferCoefficients::SHARP_LOWER,
            Side::Upper => ShaferCoefficients::SHARP_UPPER,
        }
    }
}

pub fn eval_shafer(c: &ShaferCoefficients, x: f64) -> f64 {
    c.eval(x)
}

/// The sharp lower bound `f(x)`; `|f(x)| <= |arctan(x)|` everywhere.
pub fn lower_bound(x: f64) -> f64 {
    if x.is_infinite() {
        return HALF_PI.copysign(x);
    }
    ShaferCoefficients::SHARP_LOWER.eval(x)
}

/// The sharp upper bound `h(x)`; `|h(x)| >= |arctan(x)|` everywhere.
pub fn upper_bound(x: f64) -> f64 {
    if x.is_infinite() {
        return HALF_PI.copysign(x);
    }
    ShaferCoefficients::SHARP_UPPER.eval(x)
}

/// Platform inverse tangent. Certification never trusts this; it uses
/// [`crate::oracle::Oracle`] instead.
pub fn reference_arctan(x: f64) -> f64 {
    x.atan()
}

pub fn first_derivative(c: &ShaferCoefficients, x: f64) -> f64 {
    c.first_derivative(x)
}

pub fn second_derivative(c: &ShaferCoefficients, x: f64) -> f64 {
    c.second_derivative(x)
}

/// `arctan(x) - f(x)`
pub fn delta_f(x: f64) -> f64 {
    reference_arctan(x) - lower_bound(x)
}

/// `h(x) - arctan(x)`
pub fn delta_h(x: f64) -> f64 {
    upper_bound(x) - reference_arctan(x)
}

/// Derivative of `delta_f` or `delta_h`.
pub fn delta_derivative(side: Side, x: f64) -> f64 {
    let atan_slope = 1.0 / (1.0 + x * x);
    match side {
        Side::Lower => atan_slope - ShaferCoefficients::SHARP_LOWER.first_derivative(x),
        Side::Upper => ShaferCoefficients::SHARP_UPPER.first_derivative(x) - atan_slope,
    }
}

/// Positive critical point of the difference on `side`, in closed form:
///
/// * lower: `(π²-4) sqrt(-2π⁴+36π²-160) / (π⁴-8π²-16)`
/// * upper: `sqrt(-5π⁴+108π²-576) / (π (10-π²))`
pub fn critical_point(side: Side) -> f64 {
    let (y_lower, y_upper) = crate::constants::discriminant_values();
    match side {
        // π⁴ - 8π² - 16 = (π² - 4)² - 32
        Side::Lower => PI_SQ_MINUS_FOUR * y_lower.sqrt() / (PI_SQ_MINUS_FOUR_SQ - 32.0),
        Side::Upper => y_upper.sqrt() / (std::f64::consts::PI * TEN_MINUS_PI_SQ),
    }
}

/// All three roots of the difference's derivative, ascending: `{-x*, 0, x*}`.
pub fn critical_points_delta(side: Side) -> [f64; 3] {
    let x = critical_point(side);
    [-x, 0.0, x]
}

/// `r_f = (g - f) / g` or `r_h = (h - g) / g` with the platform arctan.
/// Even in `x`; 0 at the removable singularity `x = 0` and at ±∞.
pub fn relative_error(side: Side, x: f64) -> f64 {
    if x.is_nan() {
        return x;
    }
    let ax = x.abs();
    if ax < f64::MIN_POSITIVE || ax.is_infinite() {
        return 0.0;
    }
    let g = reference_arctan(ax);
    match side {
        Side::Lower => (g - lower_bound(ax)) / g,
        Side::Upper => (upper_bound(ax) - g) / g,
    }
}

/// Shared numerator `N(x)` of both envelopes and the pieces of their
/// denominators, scaled by `1/|x|` when `|x| >= 1`.
///
/// With `A = sqrt(9 + π²x²)` and `B = sqrt((π²-4)² + 4π²x²)` the published
/// numerator `10 - π² - 2A + B` cancels catastrophically near 0. It equals
/// `2π²x²(10-π²)(1 + (π²+2)/(2A+B)) / ((B + π² - 4)(A + 3))`, a sum of
/// positive terms.
struct EnvelopeParts {
    numer: f64,
    a: f64,
    b: f64,
    /// `1/|x|` in the scaled form, else 1.
    inv: f64,
}

fn envelope_parts(ax: f64) -> EnvelopeParts {
    if ax >= 1.0 {
        let inv = 1.0 / ax;
        let a = (9.0 * inv * inv + PI_SQ).sqrt();
        let b = (PI_SQ_MINUS_FOUR_SQ * inv * inv + 4.0 * PI_SQ).sqrt();
        let numer = 2.0 * PI_SQ * TEN_MINUS_PI_SQ * (1.0 + PI_SQ_PLUS_TWO * inv / (2.0 * a + b))
            / ((b + PI_SQ_MINUS_FOUR * inv) * (a + 3.0 * inv));
        EnvelopeParts { numer, a, b, inv }
    } else {
        let x_sq = ax * ax;
        let a = (9.0 + PI_SQ * x_sq).sqrt();
        let b = (PI_SQ_MINUS_FOUR_SQ + 4.0 * PI_SQ * x_sq).sqrt();
        let numer = 2.0 * PI_SQ * x_sq * TEN_MINUS_PI_SQ * (1.0 + PI_SQ_PLUS_TWO / (2.0 * a + b))
            / ((b + PI_SQ_MINUS_FOUR) * (a + 3.0));
        EnvelopeParts {
            numer,
            a,
            b,
            inv: 1.0,
        }
    }
}

/// `(h - f) / f`, an arctan-free upper bound on `max(r_f, r_h)`.
pub fn envelope_max(x: f64) -> f64 {
    if x.is_nan() {
        return x;
    }
    let ax = x.abs();
    if ax < f64::MIN_POSITIVE || ax.is_infinite() {
        return 0.0;
    }
    let p = envelope_parts(ax);
    // scaled: (π² - 6 + 2A) / |x| = (π² - 6)/|x| + 2 A'
    p.numer / (PI_SQ_MINUS_SIX * p.inv + 2.0 * p.a) * p.inv
}

/// `(h - f) / (h + f)`, which lies between `min(r_f, r_h)` and `max(r_f, r_h)`.
pub fn envelope_min(x: f64) -> f64 {
    if x.is_nan() {
        return x;
    }
    let ax = x.abs();
    if ax < f64::MIN_POSITIVE || ax.is_infinite() {
        return 0.0;
    }
    let p = envelope_parts(ax);
    p.numer / (PI_SQ_MINUS_TWO * p.inv + 2.0 * p.a + p.b) * p.inv
}

/// Everything known about the bounds at one abscissa.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvaluationSample {
    pub x: f64,
    pub f_val: f64,
    pub g_val: f64,
    pub h_val: f64,
    pub delta_f: f64,
    pub delta_h: f64,
    pub r_f: f64,
    pub r_h: f64,
    pub env_max: f64,
    pub env_min: f64,
}

impl EvaluationSample {
    /// Sample using the platform arctan as `g`.
    pub fn platform(x: f64) -> Self {
        let f_val = lower_bound(x);
        let g_val = reference_arctan(x);
        let h_val = upper_bound(x);
        Self {
            x,
            f_val,
            g_val,
            h_val,
            delta_f: g_val - f_val,
            delta_h: h_val - g_val,
            r_f: relative_error(Side::Lower, x),
            r_h: relative_error(Side::Upper, x),
            env_max: envelope_max(x),
            env_min: envelope_min(x),
        }
    }
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    #[test]
    fn rejects_non_positive_coefficients() {
        assert!(ShaferCoefficients::new(1.0, 1.0, 3.0).is_ok());
        for (a, b, c) in [
            (0.0, 1.0, 1.0),
            (1.0, -1.0, 1.0),
            (1.0, 1.0, f64::NAN),
            (f64::INFINITY, 1.0, 1.0),
        ] {
            assert!(matches!(
                ShaferCoefficients::new(a, b, c),
                Err(Error::InvalidCoefficients { .. })
            ));
        }
    }

    #[test]
    fn simple_triple_value() {
        let c = ShaferCoefficients::new(1.0, 1.0, 3.0).unwrap();
        assert_eq!(eval_shafer(&c, 1.0), 1.0 / 3.0);
        assert_eq!(eval_shafer(&ShaferCoefficients::SHARP_LOWER, 0.0), 0.0);
    }

    #[test]
    fn classic_shafer_triple_matches_original_form() {
        for x in [0.1f64, 1.0, 7.5, 1e3] {
            let original = 3.0 * x / (1.0 + 2.0 * (1.0 + x * x).sqrt());
            let ours = ShaferCoefficients::CLASSIC_SHAFER.eval(x);
            assert!(
                (original - ours).abs() <= 4.0 * f64::EPSILON * original,
                "{x}"
            );
        }
    }

    #[test]
    fn bounds_bracket_quarter_pi() {
        // 60-digit reference: f(1) = 0.783407957942317166, h(1) = 0.785956975138594271
        let f1 = lower_bound(1.0);
        let h1 = upper_bound(1.0);
        assert!((f1 - 0.783_407_957_942_317_2).abs() < 4e-16, "{f1}");
        assert!((h1 - 0.785_956_975_138_594_3).abs() < 4e-16, "{h1}");
        assert!(f1 > FRAC_PI_4 * (1.0 - 0.0027) && f1 <= FRAC_PI_4);
        assert!((FRAC_PI_4..FRAC_PI_4 * (1.0 + 0.0023)).contains(&h1));
    }

    #[test]
    fn large_argument_and_symmetry() {
        assert!((lower_bound(1e6) - FRAC_PI_2).abs() < 2e-6);
        assert_eq!(lower_bound(-1.0), -lower_bound(1.0));
        assert_eq!(lower_bound(0.0), 0.0);
        assert_eq!(upper_bound(0.0), 0.0);
        assert_eq!(lower_bound(f64::INFINITY), FRAC_PI_2);
        assert_eq!(upper_bound(f64::NEG_INFINITY), -FRAC_PI_2);
        assert!(lower_bound(f64::NAN).is_nan());
        let big = lower_bound(f64::MAX);
        assert!(big.is_finite() && (big - FRAC_PI_2).abs() < 1e-15);
        let big = upper_bound(-f64::MAX);
        assert!(big.is_finite() && (big + FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn large_argument_branch_is_continuous() {
        for c in [
            ShaferCoefficients::SHARP_LOWER,
            ShaferCoefficients::SHARP_UPPER,
            ShaferCoefficients::CLASSIC_SHAFER,
        ] {
            let t = c.large_argument();
            let below = t * (1.0 - 1e-12);
            let above = t * (1.0 + 1e-12);
            assert!((c.eval(above) - c.eval(below)).abs() <= 2.0 * f64::EPSILON);
            assert!(c.eval(above) >= c.eval(below));
        }
        let huge = ShaferCoefficients::new(1.0, 1.0, 1e300).unwrap();
        assert!(huge.eval(1e10).is_finite());
    }

    #[test]
    fn large_argument_values_match_reference() {
        // 60-digit references for f(1e9), h(1e12)
        let f = lower_bound(1e9);
        assert!((f - 1.570_796_325_794_896_6).abs() <= 2.3e-16, "{f:?}");
        let h = upper_bound(1e12);
        assert!((h - 1.570_796_326_793_929_2).abs() <= 4.5e-16, "{h:?}");
        assert_eq!(lower_bound(1e17), FRAC_PI_2);
    }

    #[test]
    fn envelope_max_supremum() {
        let peak = envelope_max(1.945_425_838_785_825_2);
        assert!(((peak - ENVELOPE_MAX_SUPREMUM) / ENVELOPE_MAX_SUPREMUM).abs() < 1e-14);
        for k in -600..=600 {
            let x = 10f64.powf(k as f64 / 100.0);
            assert!(
                envelope_max(x) <= ENVELOPE_MAX_SUPREMUM * (1.0 + 1e-15),
                "{x}"
            );
        }
    }

    #[test]
    fn limit_tails() {
        let classic = ShaferCoefficients::CLASSIC_SHAFER;
        let rebuilt = ShaferCoefficients::new(classic.c1, classic.c2, classic.c3).unwrap();
        assert_eq!(rebuilt, classic);
        // 1 / sqrt(fl(4/π²)) falls short of π/2 by 3.07e-17
        let tail = limit_tail(FOUR_OVER_PI_SQ);
        assert!(
            (tail - (HALF_PI_TAIL - 3.074_497_034_904_308_5e-17)).abs() < 1e-31,
            "{tail:e}"
        );
    }

    #[test]
    fn upper_bound_shares_cubic_term_with_arctan() {
        let x = 1e-3;
        let cubic = upper_bound(x) - x;
        let expected = -x * x * x / 3.0;
        assert!(((cubic - expected) / expected).abs() < 0.01);
    }

    #[test]
    fn platform_reference() {
        assert_eq!(reference_arctan(0.0), 0.0);
        assert_eq!(reference_arctan(1.0), FRAC_PI_4);
        assert_eq!(reference_arctan(f64::INFINITY), FRAC_PI_2);
    }

    #[test]
    fn first_derivative_at_origin_is_one() {
        assert!(
            (first_derivative(&ShaferCoefficients::SHARP_LOWER, 0.0) - 1.0).abs()
                < 4.0 * f64::EPSILON
        );
        assert!(
            (first_derivative(&ShaferCoefficients::SHARP_UPPER, 0.0) - 1.0).abs()
                < 4.0 * f64::EPSILON
        );
        let c = ShaferCoefficients::CLASSIC_SHAFER;
        assert_eq!(c.first_derivative(2.5), c.first_derivative(-2.5));
    }

    #[test]
    fn first_derivative_matches_central_difference() {
        let step = 1e-6;
        let x = 3.0;
        let fd = (upper_bound(x + step) - upper_bound(x - step)) / (2.0 * step);
        let exact = first_derivative(&ShaferCoefficients::SHARP_UPPER, x);
        // 60-digit reference: h'(3) = 0.10038577326896391683
        assert!((exact - 0.100_385_773_268_963_92).abs() < 1e-16);
        assert!(((fd - exact) / exact).abs() < 1e-8, "{fd} vs {exact}");
    }

    #[test]
    fn second_derivative_signs() {
        let u = ShaferCoefficients::SHARP_UPPER;
        assert_eq!(
            second_derivative(&ShaferCoefficients::SHARP_LOWER, 0.0),
            0.0
        );
        let at2 = second_derivative(&u, 2.0);
        // 60-digit reference: h''(2) = -0.16101628613871101715
        assert!((at2 + 0.161_016_286_138_711_02).abs() < 1e-15, "{at2}");
        assert_eq!(second_derivative(&u, -2.0), -at2);
        assert!(second_derivative(&u, -2.0) > 0.0);
    }

    #[test]
    fn derivative_branches_agree_at_rescale_threshold() {
        let c = ShaferCoefficients::SHARP_LOWER;
        let near = DERIVATIVE_RESCALE * 0.999_999;
        let far = DERIVATIVE_RESCALE * 1.000_001;
        let d1 = (
            c.first_derivative(near) * near * near,
            c.first_derivative(far) * far * far,
        );
        assert!(((d1.0 - d1.1) / d1.0).abs() < 1e-5);
        let d2 = (
            c.second_derivative(near) * near * near * near,
            c.second_derivative(far) * far * far * far,
        );
        assert!(((d2.0 - d2.1) / d2.0).abs() < 1e-5);
        assert!(c.first_derivative(1e150) > 0.0);
        assert!(c.second_derivative(1e100) < 0.0);
    }

    #[test]
    fn differences_near_origin_and_infinity() {
        assert_eq!(delta_f(0.0), 0.0);
        assert_eq!(delta_h(0.0), 0.0);
        let lead_f = TEN_MINUS_PI_SQ / (3.0 * PI_SQ_MINUS_FOUR) * 1e-6;
        assert!(((delta_f(1e-2) - lead_f) / lead_f).abs() < 0.05);
        let lead_h = TEN_MINUS_PI_SQ / 4.0 * 1e-3;
        assert!(((delta_h(1e3) - lead_h) / lead_h).abs() < 0.05);
    }

    #[test]
    fn closed_form_critical_points() {
        let [neg, zero, pos] = critical_points_delta(Side::Lower);
        assert_eq!(zero, 0.0);
        assert_eq!(neg, -pos);
        // 60-digit references
        assert!((pos - 1.671_338_364_480_638_8).abs() < 1e-14, "{pos}");
        assert!((critical_point(Side::Upper) - 4.136_812_270_029_375).abs() < 1e-14);
        for side in [Side::Lower, Side::Upper] {
            for x in critical_points_delta(side) {
                assert!(delta_derivative(side, x).abs() < 1e-10, "{side:?} {x}");
            }
        }
    }

    #[test]
    fn relative_error_removable_singularity_and_symmetry() {
        assert_eq!(relative_error(Side::Lower, 0.0), 0.0);
        assert_eq!(relative_error(Side::Upper, -0.0), 0.0);
        assert_eq!(
            relative_error(Side::Lower, -5.0),
            relative_error(Side::Lower, 5.0)
        );
        assert!(relative_error(Side::Upper, f64::NAN).is_nan());
    }

    #[test]
    fn envelopes_match_reference_values() {
        // 60-digit references of (h - f)/f and (h - f)/(h + f)
        let cases = [
            (1e-3, 7.405_124_030_458_112e-9, 3.702_562_001_520_090_6e-9),
            (
                1.0,
                0.003_253_754_535_468_721_9,
                0.001_624_234_837_000_582_5,
            ),
            (
                10.0,
                0.001_763_523_099_098_459_4,
                0.000_880_984_731_087_616_7,
            ),
            (1e3, 2.072_073_106_870_736_6e-5, 1.036_025_819_829_171_9e-5),
        ];
        for (x, emax, emin) in cases {
            assert!(
                ((envelope_max(x) - emax) / emax).abs() < 8.0 * f64::EPSILON,
                "{x}"
            );
            assert!(
                ((envelope_min(x) - emin) / emin).abs() < 8.0 * f64::EPSILON,
                "{x}"
            );
            assert_eq!(envelope_max(-x), envelope_max(x));
        }
        assert_eq!(envelope_max(0.0), 0.0);
        assert_eq!(envelope_min(0.0), 0.0);
        assert_eq!(envelope_max(f64::INFINITY), 0.0);
        assert!(envelope_max(f64::MAX) >= 0.0 && envelope_max(f64::MAX) < 1e-300);
        assert!(envelope_max(1e12) < 1e-10);
    }

    #[test]
    fn envelope_branches_agree_at_one() {
        let below = 1.0 - f64::EPSILON;
        assert!(((envelope_max(below) - envelope_max(1.0)) / envelope_max(1.0)).abs() < 1e-14);
        assert!(((envelope_min(below) - envelope_min(1.0)) / envelope_min(1.0)).abs() < 1e-14);
    }

    #[test]
    fn platform_sample_is_ordered() {
        let s = EvaluationSample::platform(2.0);
        assert!(s.f_val <= s.g_val && s.g_val <= s.h_val);
        assert!(s.delta_f >= 0.0 && s.delta_h >= 0.0);
        assert!(s.env_min <= s.env_max);
    }
}
