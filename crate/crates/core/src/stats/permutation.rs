//! Two-sample permutation test on the absolute difference of means.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Result, ShapeError};
use crate::stats::summary::mean;

/// Minimum number of random permutations.
pub const MIN_PERMUTATIONS: usize = 100;

// Permutations drawn per RNG substream; fixes the work split independently of
// the thread count, so results are reproducible bit for bit.
const CHUNK: usize = 1024;

/// `(1 + #{|Δ*| ≥ |Δ|}) / (n_perm + 1)` over `n_perm` random relabelings.
pub fn permutation_test(a: &[f64], b: &[f64], n_perm: usize, seed: u64) -> Result<f64> {
    if a.len() < 2 || b.len() < 2 {
        return Err(ShapeError::InvalidArgument(format!(
            "permutation test needs at least 2 values per sample, got {} and {}",
            a.len(),
            b.len()
        )));
    }
    if n_perm < MIN_PERMUTATIONS {
        return Err(ShapeError::InvalidArgument(format!(
            "at least {MIN_PERMUTATIONS} permutations are required, got {n_perm}"
        )));
    }
    let observed = (mean(a) - mean(b)).abs();
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let scale = pooled.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let threshold = observed - 1e-12 * scale.max(f64::MIN_POSITIVE);
    let na = a.len();

    let chunks = n_perm.div_ceil(CHUNK);
    let hits: usize = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chunk as u64);
            let mut work = pooled.clone();
            let draws = CHUNK.min(n_perm - chunk * CHUNK);
            (0..draws)
                .filter(|_| {
                    work.shuffle(&mut rng);
                    (mean(&work[..na]) - mean(&work[na..])).abs() >= threshold
                })
                .count()
        })
        .sum();
    Ok((1 + hits) as f64 / (n_perm + 1) as f64)
}
