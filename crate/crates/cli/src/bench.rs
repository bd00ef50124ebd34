//! Seeded micro-benchmark of the scalar kernels.

use std::hint::black_box;
use std::io::{self, Write};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sharp_atan::{lower_bound, midpoint_arctan, upper_bound};

pub struct BenchRow {
    pub name: &'static str,
    pub ns_per_call: f64,
    /// Sum of all outputs; identical for identical `(n, seed)`.
    pub checksum: f64,
}

/// Signs are random; magnitudes are log-uniform over `[1e-6, 1e6]`.
pub fn inputs(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let magnitude = 10f64.powf(rng.gen_range(-6.0..=6.0));
            if rng.gen::<bool>() {
                -magnitude
            } else {
                magnitude
            }
        })
        .collect()
}

fn time(name: &'static str, xs: &[f64], f: impl Fn(f64) -> f64) -> BenchRow {
    let start = Instant::now();
    let mut checksum = 0.0;
    for &x in xs {
        checksum += f(black_box(x));
    }
    let elapsed = start.elapsed();
    BenchRow {
        name,
        ns_per_call: elapsed.as_nanos() as f64 / xs.len() as f64,
        checksum: black_box(checksum),
    }
}

pub fn run(n: usize, seed: u64) -> Vec<BenchRow> {
    let xs = inputs(n, seed);
    vec![
        time("lower_bound", &xs, lower_bound),
        time("upper_bound", &xs, upper_bound),
        time("midpoint_arctan", &xs, |x| midpoint_arctan(x).value),
        time("platform_atan", &xs, f64::atan),
    ]
}

pub fn print(out: &mut impl Write, n: usize, seed: u64, rows: &[BenchRow]) -> io::Result<()> {
    writeln!(out, "n: {n}, seed: {seed}")?;
    writeln!(out, "{:<16} {:>10} {:>26}", "kernel", "ns/call", "checksum")?;
    for row in rows {
        writeln!(
            out,
            "{:<16} {:>10.2} {:>26?}",
            row.name, row.ns_per_call, row.checksum
        )?;
    }
    Ok(())
}
