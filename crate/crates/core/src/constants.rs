//! Double-precision constants derived from π.
//!
//! Each value is the correctly rounded double of the exact real, i.e. it
//! carries exactly one rounding. The oracle tests re-derive every one of them
//! from a 50-digit π and check the rounding.

use std::f64::consts::{FRAC_PI_2, PI};

pub const HALF_PI: f64 = FRAC_PI_2;
/// `π/2 - HALF_PI`, the part of π/2 beyond double precision.
pub const HALF_PI_TAIL: f64 = 6.123_233_995_736_766e-17;
pub const PI_F64: f64 = PI;

/// π²
pub const PI_SQ: f64 = 9.869604401089358;
/// π⁴
pub const PI_FOURTH: f64 = 97.40909103400244;
/// 10 - π²
pub const TEN_MINUS_PI_SQ: f64 = 0.13039559891064137;
/// π² - 2
pub const PI_SQ_MINUS_TWO: f64 = 7.869604401089359;
/// π² - 4
pub const PI_SQ_MINUS_FOUR: f64 = 5.869604401089359;
/// π² - 6
pub const PI_SQ_MINUS_SIX: f64 = 3.8696044010893584;
/// π² + 2
pub const PI_SQ_PLUS_TWO: f64 = 11.869604401089358;
/// (π² - 4)²
pub const PI_SQ_MINUS_FOUR_SQ: f64 = 34.452255825287565;

/// 4/π², shared by both sharp triples as c3 and by the lower one as c1.
pub const FOUR_OVER_PI_SQ: f64 = 0.4052847345693511;
/// (1 - 4/π²)²
pub const LOWER_C2: f64 = 0.3536862469362472;
/// 1 - 6/π²
pub const UPPER_C1: f64 = 0.39207289814597335;
/// (6/π²)²
pub const UPPER_C2: f64 = 0.36957536116863604;

/// Unit roundoff of `f64` (half an ulp of 1).
pub const UNIT_ROUNDOFF: f64 = f64::EPSILON / 2.0;

/// Round-off allowance under which a strict inequality is accepted:
/// four units of roundoff, relative to the reference value.
pub const CERTIFICATION_MARGIN: f64 = 4.0 * UNIT_ROUNDOFF;

/// Rational enclosure of π²: `29/3 < π² < 10`.
pub fn pi_squared_bounds() -> (f64, f64) {
    (29.0 / 3.0, 10.0)
}

/// `-2ν⁴ + 36ν² - 160`, evaluated in its factored form `2(ν² - 8)(10 - ν²)`.
/// Non-negative exactly when `8 ≤ ν² ≤ 10`.
pub fn lower_discriminant(nu_sq: f64) -> f64 {
    2.0 * (nu_sq - 8.0) * (10.0 - nu_sq)
}

/// `-5ν⁴ + 108ν² - 576 = (5ν² - 48)(12 - ν²)`.
/// Non-negative exactly when `48/5 ≤ ν² ≤ 12`.
pub fn upper_discriminant(nu_sq: f64) -> f64 {
    (5.0 * nu_sq - 48.0) * (12.0 - nu_sq)
}

/// Both discriminants at ν = π. Each is strictly positive, which is what
/// makes the nonzero critical points of the two differences real.
pub fn discriminant_values() -> (f64, f64) {
    (
        2.0 * (PI_SQ - 8.0) * TEN_MINUS_PI_SQ,
        upper_discriminant(PI_SQ),
    )
}
