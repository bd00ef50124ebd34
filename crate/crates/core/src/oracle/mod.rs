//! Arbitrary-precision reference arithmetic.
//!
//! [`Oracle`] computes arctan, atan2 and the Shafer-family bounds to a
//! configurable number of decimal digits (50 by default). It shares no code
//! path with the double-precision evaluators it is used to check: the inverse
//! tangent is a table-reduced Taylor series over big-integer fixed point and
//! π comes from Machin's formula.

mod fixed;

use std::sync::OnceLock;

pub use fixed::BigFixed;

use crate::bounds::ShaferCoefficients;

/// Default oracle precision in decimal digits.
pub const DEFAULT_DIGITS: u32 = 50;

/// Extra bits carried internally beyond the requested precision.
const GUARD_BITS: u32 = 32;

/// Reduction table resolution: arctan(k / 2^TABLE_BITS) for k in 0..=2^TABLE_BITS.
const TABLE_BITS: u32 = 8;

#[derive(Debug, Clone)]
pub struct Oracle {
    digits: u32,
    scale: u32,
    pi: BigFixed,
    half_pi: BigFixed,
    table: Vec<BigFixed>,
}

impl Default for Oracle {
    fn default() -> Self {
        Self::new(DEFAULT_DIGITS)
    }
}

impl Oracle {
    /// Builds an oracle carrying at least `digits` significant decimal digits.
    pub fn new(digits: u32) -> Self {
        let digits = digits.max(17);
        let bits = (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as u32 + 8;
        let scale = bits + GUARD_BITS;

        let pi = machin_pi(scale + 16).rescale(scale);
        let half_pi = BigFixed::from_dyadic(1, 1, scale).mul(&pi, scale);
        let table = (0..=(1i64 << TABLE_BITS))
            .map(|k| {
                atan_by_halving(
                    &BigFixed::from_dyadic(k, TABLE_BITS, scale + 16),
                    scale + 16,
                )
                .rescale(scale)
            })
            .collect();

        Self {
            digits,
            scale,
            pi,
            half_pi,
            table,
        }
    }

    /// Process-wide oracle at [`DEFAULT_DIGITS`].
    pub fn shared() -> &'static Oracle {
        static SHARED: OnceLock<Oracle> = OnceLock::new();
        SHARED.get_or_init(Oracle::default)
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// Working scale in bits (absolute precision `2^-scale` near unity).
    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn pi(&self) -> &BigFixed {
        &self.pi
    }

    pub fn half_pi(&self) -> &BigFixed {
        &self.half_pi
    }

    /// π² at working precision.
    pub fn pi_squared(&self) -> BigFixed {
        self.pi.mul(&self.pi, self.scale)
    }

    /// Inverse tangent of a non-NaN double. ±∞ map to ±π/2.
    ///
    /// # Panics
    /// If `x` is NaN.
    pub fn atan(&self, x: f64) -> BigFixed {
        assert!(!x.is_nan(), "oracle arctan of NaN");
        let ax = x.abs();
        let magnitude = if ax.is_infinite() {
            self.half_pi.clone()
        } else if ax <= 1.0 {
            self.atan_unit(&BigFixed::from_f64(ax, self.scale))
        } else {
            let inv =
                BigFixed::one(self.scale).div(&BigFixed::from_f64(ax, self.scale), self.scale);
            self.half_pi.sub(&self.atan_unit(&inv))
        };
        if x.is_sign_negative() {
            magnitude.neg()
        } else {
            magnitude
        }
    }

    /// Four-quadrant inverse tangent of finite inputs, in `(-π, π]`.
    ///
    /// Returns `None` when both arguments are zero or either is not finite.
    pub fn atan2(&self, y: f64, x: f64) -> Option<BigFixed> {
        if !(y.is_finite() && x.is_finite()) || (y == 0.0 && x == 0.0) {
            return None;
        }
        let (ay, ax) = (y.abs(), x.abs());
        let swap = ay > ax;
        let (num, den) = if swap { (ax, ay) } else { (ay, ax) };
        let ratio = if num == 0.0 {
            BigFixed::zero(self.scale)
        } else {
            // keep relative precision for tiny ratios
            let extra = (den.log2() - num.log2()).max(0.0).ceil() as u32;
            let scale = self.scale + extra;
            BigFixed::from_f64(num, scale).div(&BigFixed::from_f64(den, scale), scale)
        };
        let mut angle = self.atan_unit(&ratio);
        if swap {
            angle = self.half_pi.sub(&angle);
        }
        if x < 0.0 {
            angle = self.pi.sub(&angle);
        }
        Some(if y < 0.0 { angle.neg() } else { angle })
    }

    /// arctan(t) for 0 <= t <= 1, relative precision `2^-scale`.
    fn atan_unit(&self, t: &BigFixed) -> BigFixed {
        let threshold = BigFixed::from_dyadic(1, TABLE_BITS + 1, t.scale());
        if t.cmp_value(&threshold).is_lt() {
            let extra = t.log2_floor().map_or(0, |e| (-e).max(0) as u32);
            let scale = self.scale.max(t.scale()) + extra;
            return atan_series(&t.rescale(scale), scale);
        }
        let scale = self.scale + 8;
        let t = t.rescale(scale);
        let k =
            ((t.to_f64() * f64::from(1u32 << TABLE_BITS)).round() as i64).clamp(0, 1 << TABLE_BITS);
        let c = BigFixed::from_dyadic(k, TABLE_BITS, scale);
        let reduced = t
            .sub(&c)
            .div(&BigFixed::one(scale).add(&t.mul(&c, scale)), scale);
        self.table[k as usize].add(&atan_series(&reduced, scale))
    }

    /// The Shafer-form `x / (c1 + sqrt(c2 + c3 x^2))` in high precision,
    /// using the exact binary values of `coeffs`.
    pub fn shafer(&self, coeffs: &ShaferCoefficients, x: f64) -> BigFixed {
        self.shafer_hp(&self.triple_of(coeffs), x)
    }

    /// As [`Oracle::shafer`] with high-precision coefficients.
    pub fn shafer_hp(&self, triple: &[BigFixed; 3], x: f64) -> BigFixed {
        let scale = self.relative_scale(x);
        let xv = BigFixed::from_f64(x, scale);
        let root = radical(triple, &xv, scale);
        xv.div(&triple[0].add(&root), scale)
    }

    /// First derivative of the Shafer form, high precision.
    pub fn shafer_derivative_hp(&self, triple: &[BigFixed; 3], x: f64) -> BigFixed {
        let scale = self.relative_scale(x) + 8;
        let xv = BigFixed::from_f64(x, scale);
        let root = radical(triple, &xv, scale);
        let denom_inner = triple[0].add(&root);
        let numer = triple[1].add(&triple[0].mul(&root, scale));
        let denom = root.mul(&denom_inner.mul(&denom_inner, scale), scale);
        numer.div(&denom, scale)
    }

    /// d/dx arctan(x) = 1 / (1 + x^2), high precision.
    pub fn atan_derivative(&self, x: f64) -> BigFixed {
        let scale = self.relative_scale(x) + 8;
        let xv = BigFixed::from_f64(x, scale);
        let one = BigFixed::one(scale);
        one.div(&one.add(&xv.mul(&xv, scale)), scale)
    }

    /// The sharp lower triple (4/π², (1-4/π²)², 4/π²) at working precision.
    pub fn sharp_lower_triple(&self) -> [BigFixed; 3] {
        let s = self.scale;
        let four_over = BigFixed::from_dyadic(4, 0, s).div(&self.pi_squared(), s);
        let one_minus = BigFixed::one(s).sub(&four_over);
        [four_over.clone(), one_minus.mul(&one_minus, s), four_over]
    }

    /// The sharp upper triple (1-6/π², (6/π²)², 4/π²) at working precision.
    pub fn sharp_upper_triple(&self) -> [BigFixed; 3] {
        let s = self.scale;
        let pi_sq = self.pi_squared();
        let six_over = BigFixed::from_dyadic(6, 0, s).div(&pi_sq, s);
        let four_over = BigFixed::from_dyadic(4, 0, s).div(&pi_sq, s);
        [
            BigFixed::one(s).sub(&six_over),
            six_over.mul(&six_over, s),
            four_over,
        ]
    }

    /// Exact high-precision images of double coefficients.
    pub fn triple_of(&self, coeffs: &ShaferCoefficients) -> [BigFixed; 3] {
        let [c1, c2, c3] = coeffs.as_array();
        [
            BigFixed::from_f64(c1, self.scale),
            BigFixed::from_f64(c2, self.scale),
            BigFixed::from_f64(c3, self.scale),
        ]
    }

    /// `(approx - truth) / truth` as a double; 0 when both are zero.
    pub fn relative_gap(truth: &BigFixed, approx: f64) -> f64 {
        let approx = BigFixed::from_f64(approx, truth.scale());
        let diff = approx.sub(truth);
        if truth.is_zero() {
            return if diff.is_zero() {
                0.0
            } else {
                f64::INFINITY.copysign(diff.to_f64())
            };
        }
        diff.to_f64() / truth.to_f64()
    }

    fn relative_scale(&self, x: f64) -> u32 {
        let extra = if x != 0.0 && x.abs() < 1.0 {
            (-x.abs().log2()).ceil() as u32
        } else {
            0
        };
        self.scale + extra
    }
}

fn radical(triple: &[BigFixed; 3], x: &BigFixed, scale: u32) -> BigFixed {
    let x_sq = x.mul(x, scale);
    triple[1].add(&triple[2].mul(&x_sq, scale)).sqrt(scale)
}

/// Alternating Taylor series of arctan for small `u`.
fn atan_series(u: &BigFixed, scale: u32) -> BigFixed {
    let u_sq = u.mul(u, scale);
    let mut power = u.clone();
    let mut sum = u.clone();
    let mut k = 1u64;
    loop {
        power = power.mul(&u_sq, scale);
        if power.is_zero() {
            break;
        }
        let term = power.div_small(2 * k + 1);
        sum = if k % 2 == 1 {
            sum.sub(&term)
        } else {
            sum.add(&term)
        };
        k += 1;
    }
    sum
}

/// arctan for 0 <= t <= 1 via three argument halvings,
/// arctan(t) = 2 arctan(t / (1 + sqrt(1 + t^2))), then the series.
fn atan_by_halving(t: &BigFixed, scale: u32) -> BigFixed {
    let one = BigFixed::one(scale);
    let mut u = t.clone();
    for _ in 0..3 {
        let root = one.add(&u.mul(&u, scale)).sqrt(scale);
        u = u.div(&one.add(&root), scale);
    }
    atan_series(&u, scale).mul_small(8)
}

/// π = 16 arctan(1/5) - 4 arctan(1/239).
fn machin_pi(scale: u32) -> BigFixed {
    let fifth = BigFixed::one(scale).div_small(5);
    let inv239 = BigFixed::one(scale).div_small(239);
    atan_series(&fifth, scale)
        .mul_small(16)
        .sub(&atan_series(&inv239, scale).mul_small(4))
}
