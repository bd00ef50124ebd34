//! Binary fixed-point numbers backed by arbitrary-size integers.
//!
//! A [`BigFixed`] holds `mant * 2^-scale`. Every finite `f64` converts
//! exactly, which is what lets the oracle compare a double against a
//! high-precision reference without an intermediate rounding.

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_traits::{Signed, ToPrimitive, Zero};

#[derive(Clone, Debug)]
pub struct BigFixed {
    mant: BigInt,
    scale: u32,
}

impl BigFixed {
    pub fn zero(scale: u32) -> Self {
        Self {
            mant: BigInt::zero(),
            scale,
        }
    }

    pub fn one(scale: u32) -> Self {
        Self {
            mant: BigInt::from(1u8) << scale,
            scale,
        }
    }

    /// `n / 2^shift` held at `scale` (truncated when `shift > scale`).
    pub fn from_dyadic(n: i64, shift: u32, scale: u32) -> Self {
        let mant = BigInt::from(n);
        let mant = if scale >= shift {
            mant << (scale - shift)
        } else {
            mant >> (shift - scale)
        };
        Self { mant, scale }
    }

    /// Exact conversion. The resulting scale is at least `min_scale` and
    /// large enough to hold every bit of `x`.
    ///
    /// # Panics
    /// If `x` is not finite.
    pub fn from_f64(x: f64, min_scale: u32) -> Self {
        assert!(
            x.is_finite(),
            "BigFixed::from_f64 needs a finite value, got {x}"
        );
        if x == 0.0 {
            return Self::zero(min_scale);
        }
        let (mantissa, exponent) = decompose(x);
        let needed = u32::try_from(-exponent.min(0)).unwrap_or(u32::MAX);
        let scale = min_scale.max(needed);
        let shift = i64::from(exponent) + i64::from(scale);
        debug_assert!(shift >= 0);
        let mut mant = BigInt::from(mantissa) << (shift as u64);
        if x < 0.0 {
            mant = -mant;
        }
        Self { mant, scale }
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.sign() == Sign::Minus
    }

    pub fn signum(&self) -> i32 {
        match self.mant.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Self {
            mant: self.mant.abs(),
            scale: self.scale,
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            mant: -self.mant.clone(),
            scale: self.scale,
        }
    }

    /// Re-express at a different scale; narrowing truncates toward zero.
    pub fn rescale(&self, scale: u32) -> Self {
        let mant = match scale.cmp(&self.scale) {
            Ordering::Equal => self.mant.clone(),
            Ordering::Greater => &self.mant << (scale - self.scale),
            Ordering::Less => shr_trunc(&self.mant, u64::from(self.scale - scale)),
        };
        Self { mant, scale }
    }

    pub fn add(&self, other: &Self) -> Self {
        let scale = self.scale.max(other.scale);
        Self {
            mant: self.rescale(scale).mant + other.rescale(scale).mant,
            scale,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let scale = self.scale.max(other.scale);
        Self {
            mant: self.rescale(scale).mant - other.rescale(scale).mant,
            scale,
        }
    }

    pub fn mul(&self, other: &Self, scale: u32) -> Self {
        let product = &self.mant * &other.mant;
        let natural = self.scale + other.scale;
        let mant = if natural >= scale {
            shr_trunc(&product, u64::from(natural - scale))
        } else {
            product << (scale - natural)
        };
        Self { mant, scale }
    }

    /// # Panics
    /// On division by zero.
    pub fn div(&self, other: &Self, scale: u32) -> Self {
        assert!(!other.is_zero(), "BigFixed division by zero");
        // (a / 2^sa) / (b / 2^sb) * 2^scale = a * 2^(scale + sb - sa) / b
        let up = i64::from(scale) + i64::from(other.scale) - i64::from(self.scale);
        let numer = if up >= 0 {
            &self.mant << (up as u64)
        } else {
            shr_trunc(&self.mant, (-up) as u64)
        };
        Self {
            mant: numer / &other.mant,
            scale,
        }
    }

    pub fn div_small(&self, d: u64) -> Self {
        Self {
            mant: &self.mant / d,
            scale: self.scale,
        }
    }

    pub fn mul_small(&self, m: i64) -> Self {
        Self {
            mant: &self.mant * m,
            scale: self.scale,
        }
    }

    /// # Panics
    /// On a negative argument.
    pub fn sqrt(&self, scale: u32) -> Self {
        assert!(!self.is_negative(), "BigFixed sqrt of a negative value");
        // sqrt(a / 2^s) * 2^scale = sqrt(a * 2^(2 scale - s))
        let up = 2 * i64::from(scale) - i64::from(self.scale);
        let radicand = if up >= 0 {
            &self.mant << (up as u64)
        } else {
            &self.mant >> ((-up) as u64)
        };
        Self {
            mant: radicand.sqrt(),
            scale,
        }
    }

    /// Floor of `log2(|self|)`, or `None` for zero.
    pub fn log2_floor(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        Some(self.mant.bits() as i64 - 1 - i64::from(self.scale))
    }

    pub fn cmp_value(&self, other: &Self) -> Ordering {
        let scale = self.scale.max(other.scale);
        self.rescale(scale).mant.cmp(&other.rescale(scale).mant)
    }

    /// Nearest double, up to a possible double rounding in the last place.
    pub fn to_f64(&self) -> f64 {
        let bits = self.mant.bits();
        if bits == 0 {
            return 0.0;
        }
        let magnitude = self.mant.magnitude();
        let drop = bits.saturating_sub(64);
        let mut top = (magnitude >> drop).to_u64().unwrap_or(u64::MAX);
        // sticky bit so the u64 -> f64 rounding sees discarded low bits
        if drop > 0 && top & 1 == 0 && magnitude.trailing_zeros().unwrap_or(0) < drop {
            top |= 1;
        }
        let value = ldexp(top as f64, drop as i64 - i64::from(self.scale));
        if self.is_negative() {
            -value
        } else {
            value
        }
    }
}

/// `x = mantissa * 2^exponent` with an integer mantissa.
fn decompose(x: f64) -> (u64, i32) {
    let bits = x.to_bits();
    let biased = ((bits >> 52) & 0x7ff) as i32;
    let fraction = bits & ((1u64 << 52) - 1);
    if biased == 0 {
        (fraction, -1074)
    } else {
        (fraction | (1u64 << 52), biased - 1075)
    }
}

/// `x * 2^e`, stepping so intermediate powers never overflow or flush early.
fn ldexp(mut x: f64, mut e: i64) -> f64 {
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
        if x.is_infinite() {
            return x;
        }
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
        if x == 0.0 {
            return x;
        }
    }
    x * 2f64.powi(e as i32)
}

/// `n / 2^k` rounded toward zero, so repeated narrowing of a negative
/// value decays to 0 instead of sticking at -1.
fn shr_trunc(n: &BigInt, k: u64) -> BigInt {
    if n.sign() == Sign::Minus {
        -((-n) >> k)
    } else {
        n >> k
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn doubles_round_trip_exactly() {
        for x in [
            0.0,
            1.0,
            -1.5,
            std::f64::consts::PI,
            1e-300,
            -5e-324,
            f64::MAX,
            f64::MIN_POSITIVE,
            123456.789,
        ] {
            let v = BigFixed::from_f64(x, 64);
            assert_eq!(v.to_f64().to_bits(), x.to_bits(), "{x}");
        }
    }

    #[test]
    fn arithmetic_on_small_values() {
        let s = 80;
        let a = BigFixed::from_f64(1.5, s);
        let b = BigFixed::from_f64(-0.25, s);
        assert_eq!(a.add(&b).to_f64(), 1.25);
        assert_eq!(a.sub(&b).to_f64(), 1.75);
        assert_eq!(a.mul(&b, s).to_f64(), -0.375);
        assert_eq!(a.div(&b, s).to_f64(), -6.0);
        assert_eq!(BigFixed::from_f64(2.25, s).sqrt(s).to_f64(), 1.5);
        let two = BigFixed::from_f64(2.0, s);
        assert_eq!(two.sqrt(s).to_f64(), std::f64::consts::SQRT_2);
    }

    #[test]
    fn log2_floor_and_ordering() {
        let a = BigFixed::from_f64(0.3, 60);
        assert_eq!(a.log2_floor(), Some(-2));
        assert_eq!(BigFixed::from_f64(8.0, 0).log2_floor(), Some(3));
        assert_eq!(BigFixed::zero(10).log2_floor(), None);
        assert_eq!(a.cmp_value(&BigFixed::from_f64(0.31, 60)), Ordering::Less);
        assert_eq!(BigFixed::from_dyadic(3, 2, 10).to_f64(), 0.75);
    }
}
