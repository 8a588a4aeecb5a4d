//! Timing of the naive and column-wise builders on random closed systems.

use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::builder::{build_fast, build_naive};
use crate::error::{Error, Result};
use crate::random::random_closed_spec;

/// Builders must agree to this max-norm.
pub const EQUALITY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub n_levels: usize,
    pub reps: usize,
    pub naive_median_s: f64,
    pub fast_median_s: f64,
    /// `naive / fast`.
    pub ratio: f64,
    pub max_diff: f64,
}

fn median(mut v: Vec<Duration>) -> f64 {
    v.sort();
    let mid = v.len() / 2;
    if v.len() % 2 == 1 {
        v[mid].as_secs_f64()
    } else {
        (v[mid - 1] + v[mid]).as_secs_f64() / 2.0
    }
}

/// Seed used for size `n`, rep `rep`.
pub fn rep_seed(seed: u64, n: usize, rep: usize) -> u64 {
    seed.wrapping_mul(1_000_003)
        .wrapping_add((n as u64) << 20)
        .wrapping_add(rep as u64)
}

/// Time both builders on `reps` random specs per size. Fails on the first
/// rep where they disagree.
pub fn bench_builders(sizes: &[usize], reps: usize, seed: u64) -> Result<Vec<BenchRow>> {
    if reps == 0 {
        return Err(Error::Argument("reps must be at least 1".into()));
    }
    let mut rows = Vec::new();
    for &n in sizes {
        if n < 2 {
            return Err(Error::Argument(format!("sizes must be at least 2, got {n}")));
        }
        let mut naive_t = Vec::with_capacity(reps);
        let mut fast_t = Vec::with_capacity(reps);
        let mut worst = 0.0f64;
        for rep in 0..reps {
            let s = rep_seed(seed, n, rep);
            let spec = random_closed_spec(n, &mut ChaCha8Rng::seed_from_u64(s));
            let t0 = Instant::now();
            let naive = build_naive(&spec);
            naive_t.push(t0.elapsed());
            let t0 = Instant::now();
            let fast = build_fast(&spec);
            fast_t.push(t0.elapsed());
            let diff = naive.max_diff(&fast);
            if !(diff <= EQUALITY_TOL) {
                return Err(Error::Argument(format!(
                    "builders disagree by {diff:e} at N = {n}, seed = {s}"
                )));
            }
            worst = worst.max(diff);
        }
        let naive = median(naive_t);
        let fast = median(fast_t);
        rows.push(BenchRow {
            n_levels: n,
            reps,
            naive_median_s: naive,
            fast_median_s: fast,
            ratio: naive / fast.max(1e-12),
            max_diff: worst,
        });
    }
    Ok(rows)
}
