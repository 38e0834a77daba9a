//! Deterministic parallel drivers.
//!
//! Trials split into index ranges whose partial results merge associatively,
//! so the outcome is a pure function of `(x, trials, seed)` no matter how
//! many threads run.

use anyhow::Result;
use halasz_core::random::{mc_negative_probability_range, MCResult};
use halasz_core::PrimeTable;
use rayon::prelude::*;

/// Build a local rayon pool with `threads` workers (0 = rayon default).
pub fn pool(threads: usize) -> Result<rayon::ThreadPool> {
    Ok(rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()?)
}

/// Parallel negative-probability run; identical to the sequential result.
pub fn mc_negative_probability_parallel(
    table: &PrimeTable,
    x: u64,
    trials: u64,
    seed: u64,
    threads: usize,
) -> Result<MCResult> {
    let pool = pool(threads)?;
    let chunk = (trials / (8 * pool.current_num_threads() as u64).max(1)).max(64);
    let ranges: Vec<(u64, u64)> = (0..trials)
        .step_by(chunk as usize)
        .map(|lo| (lo, (lo + chunk).min(trials)))
        .collect();
    let partials: Vec<MCResult> = pool.install(|| {
        ranges
            .par_iter()
            .map(|&(lo, hi)| {
                mc_negative_probability_range(table, x, lo..hi, trials, seed)
                    .expect("range checked by caller")
            })
            .collect()
    });
    let mut it = partials.into_iter();
    let first = it.next().expect("at least one chunk");
    Ok(it.fold(first, |acc, part| acc.merge(&part)))
}
