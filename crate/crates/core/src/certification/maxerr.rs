//! Location of the largest relative error of each bound.
//!
//! Nothing guarantees the error curves are unimodal, so the search scans a
//! log grid first and only then refines the best local maxima.

use serde::Serialize;

use super::{oracle_relative_error, Grid};
use crate::bounds::Side;
use crate::oracle::Oracle;

/// Default scan density over `[1e-3, 1e3]`.
pub const SCAN_POINTS: usize = 10_000;
const SCAN_LO: f64 = 1e-3;
const SCAN_HI: f64 = 1e3;
const REFINED_CANDIDATES: usize = 3;
const REFINE_WIDTH: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MaxError {
    pub side: Side,
    pub x_star: f64,
    pub r_star: f64,
}

pub fn find_max_relative_error(oracle: &Oracle, side: Side) -> MaxError {
    find_max_relative_error_with(oracle, side, SCAN_POINTS)
}

/// As [`find_max_relative_error`] with a custom scan density (at least 3).
pub fn find_max_relative_error_with(oracle: &Oracle, side: Side, scan_points: usize) -> MaxError {
    let coeffs = side.coefficients();
    let r = |x: f64| oracle_relative_error(&oracle.atan(x), coeffs.eval(x), side);

    let xs = Grid::LogUniform
        .points(SCAN_LO, SCAN_HI, scan_points.max(3))
        .expect("static scan range is valid");
    let rs: Vec<f64> = xs.iter().map(|&x| r(x)).collect();

    let last = xs.len() - 1;
    let mut peaks: Vec<usize> = (0..=last)
        .filter(|&i| (i == 0 || rs[i] >= rs[i - 1]) && (i == last || rs[i] >= rs[i + 1]))
        .collect();
    // highest first, smaller x on ties
    peaks.sort_by(|&a, &b| rs[b].total_cmp(&rs[a]).then(a.cmp(&b)));
    peaks.truncate(REFINED_CANDIDATES);

    let mut best = MaxError {
        side,
        x_star: xs[peaks[0]],
        r_star: rs[peaks[0]],
    };
    for &i in &peaks {
        let a = xs[i.saturating_sub(1)];
        let b = xs[(i + 1).min(last)];
        let (x, value) = golden_section_max(r, a, b, REFINE_WIDTH);
        if value > best.r_star || (value == best.r_star && x < best.x_star) {
            best.x_star = x;
            best.r_star = value;
        }
    }
    best
}

/// Golden-section search for a maximum of `f` on `[a, b]`, stopping once
/// the bracket is narrower than `width`. Returns the best point evaluated.
pub fn golden_section_max(
    f: impl Fn(f64) -> f64,
    mut a: f64,
    mut b: f64,
    width: f64,
) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    let mut best = if fd > fc { (d, fd) } else { (c, fc) };
    while (b - a) > width {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
            if fc > best.1 {
                best = (c, fc);
            }
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
            if fd > best.1 {
                best = (d, fd);
            }
        }
        if c >= d {
            break;
        }
    }
    for end in [a, b] {
        let v = f(end);
        if v > best.1 {
            best = (end, v);
        }
    }
    best
}
