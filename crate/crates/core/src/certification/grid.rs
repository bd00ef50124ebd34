//! Sample grids over a closed interval.

use serde::Serialize;

use crate::error::{Error, Result};

/// Magnitudes closer to 0 than `MIXED_FLOOR * max(|lo|, |hi|)` are not
/// sampled by the log-spaced halves of a mixed grid (0 itself always is).
pub const MIXED_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Grid {
    /// Geometric spacing; needs `lo > 0`.
    LogUniform,
    /// Linear spacing.
    Uniform,
    /// Log-spaced magnitudes on each side of 0, sized by decades spanned,
    /// plus 0 itself.
    Mixed,
}

impl Grid {
    /// Log-uniform for positive ranges, mixed otherwise.
    pub fn auto(lo: f64) -> Self {
        if lo > 0.0 {
            Grid::LogUniform
        } else {
            Grid::Mixed
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Grid::LogUniform => "log",
            Grid::Uniform => "uniform",
            Grid::Mixed => "mixed",
        }
    }

    /// Ascending, duplicate-free sample points. Both endpoints are always
    /// present, and 0 is whenever `lo <= 0 <= hi`. The result can hold a
    /// point or two more than `n` when those are added.
    pub fn points(self, lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidRange { lo, hi });
        }
        if n < 2 {
            return Err(Error::TooFewSamples { got: n, min: 2 });
        }
        let mut pts = match self {
            Grid::LogUniform => {
                if lo <= 0.0 {
                    return Err(Error::NonPositiveLogRange(lo));
                }
                geometric(lo, hi, n)
            }
            Grid::Uniform => {
                let step = (hi - lo) / (n - 1) as f64;
                let mut v: Vec<f64> = (0..n).map(|i| lo + step * i as f64).collect();
                v[n - 1] = hi;
                v
            }
            Grid::Mixed => mixed(lo, hi, n),
        };
        if lo < 0.0 && hi > 0.0 {
            pts.push(0.0);
        }
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        // -0.0 and 0.0 compare equal but dedup keeps the first
        for p in pts.iter_mut() {
            if *p == 0.0 {
                *p = 0.0;
            }
        }
        Ok(pts)
    }
}

/// `n >= 1` points from `a` to `b` (both positive), geometrically spaced.
fn geometric(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![b];
    }
    let (la, lb) = (a.ln(), b.ln());
    let step = (lb - la) / (n - 1) as f64;
    let mut v: Vec<f64> = (0..n).map(|i| (la + step * i as f64).exp()).collect();
    v[0] = a;
    v[n - 1] = b;
    v
}

fn mixed(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if lo > 0.0 {
        return geometric(lo, hi, n);
    }
    if hi < 0.0 {
        return geometric(-hi, -lo, n).into_iter().map(|p| -p).collect();
    }
    let floor = MIXED_FLOOR * lo.abs().max(hi.abs());
    let span = |end: f64| if end > floor { (end / floor).ln() } else { 0.0 };
    let (neg_span, pos_span) = (span(-lo), span(hi));
    let budget = n - 1; // one point is 0
    let (n_neg, n_pos) = match (lo < 0.0, hi > 0.0) {
        (true, true) => {
            let share = if neg_span + pos_span > 0.0 {
                neg_span / (neg_span + pos_span)
            } else {
                0.5
            };
            let n_neg = ((budget as f64 * share).round() as usize)
                .clamp(1, budget.saturating_sub(1).max(1));
            (n_neg, budget.saturating_sub(n_neg).max(1))
        }
        (true, false) => (budget.max(1), 0),
        (false, true) => (0, budget.max(1)),
        (false, false) => (0, 0),
    };
    let mut v = vec![0.0];
    if n_neg > 0 {
        v.extend(
            geometric(floor.min(-lo), -lo, n_neg)
                .into_iter()
                .map(|p| -p),
        );
    }
    if n_pos > 0 {
        v.extend(geometric(floor.min(hi), hi, n_pos));
    }
    v
}
