use std::fmt;
use std::io;

use serde::Serialize;

use super::Grid;
use crate::bounds::EvaluationSample;
use crate::constants::CERTIFICATION_MARGIN;

/// Outcome of [`super::certify_range`].
///
/// Margins are relative to the oracle value: `worst_lower_margin` is the
/// smallest `(|g| - |f|) / |g|` seen, `worst_upper_margin` the smallest
/// `(|h| - |g|) / |g|`. Ties resolve toward the smaller `x`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificationReport {
    pub lo: f64,
    pub hi: f64,
    pub sample_count: usize,
    pub grid: Grid,
    pub oracle_digits: u32,
    pub passed: bool,
    pub worst_lower_margin: f64,
    pub worst_lower_at: f64,
    pub worst_upper_margin: f64,
    pub worst_upper_at: f64,
    pub max_r_f: f64,
    pub argmax_r_f: f64,
    pub max_r_h: f64,
    pub argmax_r_h: f64,
    pub envelope_violations: usize,
    pub first_envelope_violation: Option<f64>,
}

impl CertificationReport {
    pub(super) fn empty(lo: f64, hi: f64, grid: Grid, oracle_digits: u32) -> Self {
        Self {
            lo,
            hi,
            sample_count: 0,
            grid,
            oracle_digits,
            passed: false,
            worst_lower_margin: f64::INFINITY,
            worst_lower_at: f64::NAN,
            worst_upper_margin: f64::INFINITY,
            worst_upper_at: f64::NAN,
            max_r_f: f64::NEG_INFINITY,
            argmax_r_f: f64::NAN,
            max_r_h: f64::NEG_INFINITY,
            argmax_r_h: f64::NAN,
            envelope_violations: 0,
            first_envelope_violation: None,
        }
    }

    /// Folds in one sample. Samples must arrive in ascending `x` for the
    /// tie-break to favour the smaller abscissa.
    pub(super) fn absorb(&mut self, s: &EvaluationSample, sandwich_ok: bool) {
        self.sample_count += 1;
        // for x < 0 both ratios already equal the magnitude margins
        if s.r_f < self.worst_lower_margin {
            self.worst_lower_margin = s.r_f;
            self.worst_lower_at = s.x;
        }
        if s.r_h < self.worst_upper_margin {
            self.worst_upper_margin = s.r_h;
            self.worst_upper_at = s.x;
        }
        if s.r_f > self.max_r_f {
            self.max_r_f = s.r_f;
            self.argmax_r_f = s.x;
        }
        if s.r_h > self.max_r_h {
            self.max_r_h = s.r_h;
            self.argmax_r_h = s.x;
        }
        if !sandwich_ok {
            self.envelope_violations += 1;
            self.first_envelope_violation.get_or_insert(s.x);
        }
    }

    pub(super) fn finish(&mut self) {
        self.passed = self.worst_lower_margin >= -CERTIFICATION_MARGIN
            && self.worst_upper_margin >= -CERTIFICATION_MARGIN
            && self.envelope_violations == 0;
    }

    pub const CSV_HEADER: [&'static str; 16] = [
        "lo",
        "hi",
        "sample_count",
        "grid",
        "oracle_digits",
        "passed",
        "worst_lower_margin",
        "worst_lower_at",
        "worst_upper_margin",
        "worst_upper_at",
        "max_r_f",
        "argmax_r_f",
        "max_r_h",
        "argmax_r_h",
        "envelope_violations",
        "first_envelope_violation",
    ];

    /// Header plus one data row; the last column is empty when there was no
    /// envelope violation.
    pub fn write_csv<W: io::Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(Self::CSV_HEADER)?;
        w.write_record([
            shortest(self.lo),
            shortest(self.hi),
            self.sample_count.to_string(),
            self.grid.name().to_string(),
            self.oracle_digits.to_string(),
            self.passed.to_string(),
            shortest(self.worst_lower_margin),
            shortest(self.worst_lower_at),
            shortest(self.worst_upper_margin),
            shortest(self.worst_upper_at),
            shortest(self.max_r_f),
            shortest(self.argmax_r_f),
            shortest(self.max_r_h),
            shortest(self.argmax_r_h),
            self.envelope_violations.to_string(),
            self.first_envelope_violation
                .map(shortest)
                .unwrap_or_default(),
        ])?;
        w.flush()?;
        Ok(())
    }
}

/// Shortest round-trip decimal form of a double.
fn shortest(v: f64) -> String {
    format!("{v:?}")
}

impl fmt::Display for CertificationReport {
    /// One `key: value` pair per line, in a fixed order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "status: {}", if self.passed { "PASS" } else { "FAIL" })?;
        writeln!(f, "range: [{:?}, {:?}]", self.lo, self.hi)?;
        writeln!(f, "grid: {}", self.grid.name())?;
        writeln!(f, "samples: {}", self.sample_count)?;
        writeln!(f, "oracle_digits: {}", self.oracle_digits)?;
        writeln!(f, "margin_tolerance: {:e}", CERTIFICATION_MARGIN)?;
        writeln!(
            f,
            "worst_lower_margin: {:e} at x = {:?}",
            self.worst_lower_margin, self.worst_lower_at
        )?;
        writeln!(
            f,
            "worst_upper_margin: {:e} at x = {:?}",
            self.worst_upper_margin, self.worst_upper_at
        )?;
        writeln!(
            f,
            "max_r_f: {:e} at x = {:?}",
            self.max_r_f, self.argmax_r_f
        )?;
        writeln!(
            f,
            "max_r_h: {:e} at x = {:?}",
            self.max_r_h, self.argmax_r_h
        )?;
        match self.first_envelope_violation {
            Some(x) => write!(
                f,
                "envelope_violations: {} (first at x = {:?})",
                self.envelope_violations, x
            ),
            None => write!(f, "envelope_violations: 0"),
        }
    }
}
