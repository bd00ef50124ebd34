//! Input generation shared by the benchmarks in `benches/`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Magnitudes log-uniform over `[10^lo_exp, 10^hi_exp]`, random signs.
pub fn log_uniform_inputs(n: usize, seed: u64, lo_exp: f64, hi_exp: f64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let m = 10f64.powf(rng.gen_range(lo_exp..=hi_exp));
            if rng.gen::<bool>() {
                m
            } else {
                -m
            }
        })
        .collect()
}
