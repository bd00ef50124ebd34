//! Grid sweeps written as CSV, one [`SweepRow`] per point.

use std::io;

use sharp_atan::certification::{oracle_sample, BoundPair};
use sharp_atan::{Grid, Oracle};

pub const HEADER: [&str; 8] = ["x", "f", "g", "h", "r_f", "r_h", "env_max", "env_min"];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub x: f64,
    pub f: f64,
    pub g: f64,
    pub h: f64,
    pub r_f: f64,
    pub r_h: f64,
    pub env_max: f64,
    pub env_min: f64,
}

impl SweepRow {
    fn fields(&self) -> [f64; 8] {
        [
            self.x,
            self.f,
            self.g,
            self.h,
            self.r_f,
            self.r_h,
            self.env_max,
            self.env_min,
        ]
    }
}

/// `g` and the relative errors come from the oracle, so the error columns
/// stay meaningful where the double-precision difference would cancel.
pub fn sweep(
    oracle: &Oracle,
    lo: f64,
    hi: f64,
    n: usize,
    grid: Grid,
) -> sharp_atan::Result<Vec<SweepRow>> {
    let pair = BoundPair::default();
    let rows = grid
        .points(lo, hi, n)?
        .into_iter()
        .map(|x| {
            let s = oracle_sample(oracle, &pair, x);
            SweepRow {
                x,
                f: s.f_val,
                g: s.g_val,
                h: s.h_val,
                r_f: s.r_f,
                r_h: s.r_h,
                env_max: s.env_max,
                env_min: s.env_min,
            }
        })
        .collect();
    Ok(rows)
}

/// Comma-separated with a header row; every number in its shortest
/// round-trip form.
pub fn write_csv<W: io::Write>(out: W, rows: &[SweepRow]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for row in rows {
        w.write_record(row.fields().map(|v| format!("{v:?}")))?;
    }
    w.flush()?;
    Ok(())
}
