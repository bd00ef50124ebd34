//! Numerical certification of the bounds against the high-precision oracle.
//!
//! Every check compares double-precision evaluations with [`Oracle`] values
//! and accepts a strict inequality up to [`CERTIFICATION_MARGIN`] (four
//! units of roundoff relative to the reference).

mod grid;
mod maxerr;
mod report;
mod series_check;
mod shape;
mod sharpness;

pub use grid::{Grid, MIXED_FLOOR};
pub use maxerr::{
    find_max_relative_error, find_max_relative_error_with, golden_section_max, MaxError,
    SCAN_POINTS,
};
pub use report::CertificationReport;
pub use series_check::{verify_series, SeriesCheck, SeriesRow, SERIES_TOLERANCE};
pub use shape::{delta_slope_sign, verify_shape_properties, ShapeReport, CRITICAL_POINT_TOLERANCE};
pub use sharpness::{
    probe_sharpness, sharpness_ladder, Region, SharpnessProbe, SharpnessWitness, EPSILON_LADDER,
};

use crate::bounds::{envelope_max, envelope_min, EvaluationSample, ShaferCoefficients, Side};
use crate::constants::CERTIFICATION_MARGIN;
use crate::error::Result;
use crate::oracle::{BigFixed, Oracle};

/// The pair of triples being certified.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundPair {
    pub lower: ShaferCoefficients,
    pub upper: ShaferCoefficients,
}

impl Default for BoundPair {
    fn default() -> Self {
        Self {
            lower: ShaferCoefficients::SHARP_LOWER,
            upper: ShaferCoefficients::SHARP_UPPER,
        }
    }
}

/// `(g - b) / g` for a lower candidate `b`, `(b - g) / g` for an upper one;
/// negative means the inequality is violated. 0 at `x = 0`.
pub fn oracle_relative_error(truth: &BigFixed, approx: f64, side: Side) -> f64 {
    let gap = Oracle::relative_gap(truth, approx);
    match side {
        // `0.0 - gap` keeps an exact zero positive
        Side::Lower => 0.0 - gap,
        Side::Upper => gap,
    }
}

/// An [`EvaluationSample`] whose arctan, differences and relative errors
/// come from the oracle.
pub fn oracle_sample(oracle: &Oracle, pair: &BoundPair, x: f64) -> EvaluationSample {
    let truth = oracle.atan(x);
    let f_val = pair.lower.eval(x);
    let h_val = pair.upper.eval(x);
    let f_fixed = BigFixed::from_f64(f_val, truth.scale());
    let h_fixed = BigFixed::from_f64(h_val, truth.scale());
    EvaluationSample {
        x,
        f_val,
        g_val: truth.to_f64(),
        h_val,
        delta_f: truth.sub(&f_fixed).to_f64(),
        delta_h: h_fixed.sub(&truth).to_f64(),
        r_f: oracle_relative_error(&truth, f_val, Side::Lower),
        r_h: oracle_relative_error(&truth, h_val, Side::Upper),
        env_max: envelope_max(x),
        env_min: envelope_min(x),
    }
}

/// Whether `min(r_f, r_h) <= env_min <= max(r_f, r_h) <= env_max` holds
/// up to the certification margin.
pub fn envelope_sandwich_holds(s: &EvaluationSample) -> bool {
    let lo = s.r_f.min(s.r_h);
    let hi = s.r_f.max(s.r_h);
    let tol = CERTIFICATION_MARGIN;
    lo <= s.env_min + tol && s.env_min <= hi + tol && hi <= s.env_max + tol
}

/// Certifies the sharp double inequality and the envelope sandwich on a grid.
pub fn certify_range(oracle: &Oracle, lo: f64, hi: f64, n: usize) -> Result<CertificationReport> {
    certify_range_with(oracle, lo, hi, n, Grid::auto(lo), &BoundPair::default())
}

/// [`certify_range`] with an explicit grid and candidate triples.
pub fn certify_range_with(
    oracle: &Oracle,
    lo: f64,
    hi: f64,
    n: usize,
    grid: Grid,
    pair: &BoundPair,
) -> Result<CertificationReport> {
    let points = grid.points(lo, hi, n)?;
    let mut report = CertificationReport::empty(lo, hi, grid, oracle.digits());
    for &x in &points {
        let sample = oracle_sample(oracle, pair, x);
        report.absorb(&sample, envelope_sandwich_holds(&sample));
    }
    report.finish();
    Ok(report)
}
