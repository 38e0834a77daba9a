//! Monte Carlo experiments on random ±1 completely multiplicative functions.
//!
//! Every trial is a pure function of `(master seed, trial index)`: prime
//! signs come from a counter-based generator keyed by `(trial seed, p)`, so
//! results do not depend on evaluation order or thread count. Aggregation is
//! associative (counts, minima, per-index vectors).

use crate::error::{Error, Result};
use crate::math::{self, Kahan};
use crate::multfun::FunctionSpec;
use crate::sieve::PrimeTable;
use crate::sums;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

/// Largest prime count the exhaustive oracle will enumerate (2²² patterns).
pub const EXACT_ORACLE_MAX_PRIMES: usize = 22;

/// Seed for one trial, derived from the master seed and trial index.
#[inline]
pub fn trial_seed(master: u64, trial_index: u64) -> u64 {
    math::counter_rng(master, 0x7472_6961, trial_index)
}

/// ±1 value at prime `p` for one trial.
#[inline]
pub fn trial_sign(master: u64, trial_index: u64, p: u64) -> f64 {
    if math::counter_rng(trial_seed(master, trial_index), 0x5261_6465, p) >> 63 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `L_f(x)` for one trial, using `buf` as the value table (resized as needed).
pub fn trial_log_sum(
    table: &PrimeTable,
    master: u64,
    trial_index: u64,
    x: u64,
    buf: &mut Vec<f64>,
) -> f64 {
    let n = x as usize;
    buf.clear();
    buf.resize(n + 1, 0.0);
    if n >= 1 {
        buf[1] = 1.0;
    }
    let mut acc = Kahan::new();
    acc.add(1.0);
    for m in 2..=n {
        let p = table.spf(m as u64) as usize;
        let v = if p == m {
            trial_sign(master, trial_index, m as u64)
        } else {
            buf[m / p] * buf[p]
        };
        buf[m] = v;
        acc.add(v / m as f64);
    }
    acc.total()
}

/// Result of a negative-probability Monte Carlo run.
#[derive(Clone, Debug, PartialEq)]
pub struct MCResult {
    pub x: u64,
    pub trials: u64,
    pub seed: u64,
    pub negatives: u64,
    pub estimate: f64,
    pub wilson_low: f64,
    pub wilson_high: f64,
    pub min_lf: f64,
}

impl MCResult {
    /// Merge two partial runs over disjoint trial-index ranges.
    pub fn merge(mut self, other: &MCResult) -> MCResult {
        self.trials += other.trials;
        self.negatives += other.negatives;
        self.min_lf = self.min_lf.min(other.min_lf);
        self.finalize();
        self
    }

    pub fn finalize(&mut self) {
        self.estimate = if self.trials == 0 {
            0.0
        } else {
            self.negatives as f64 / self.trials as f64
        };
        let (lo, hi) = math::wilson_interval(self.negatives, self.trials, 1.959963984540054);
        self.wilson_low = lo;
        self.wilson_high = hi;
    }
}

/// Estimate `P(L_f(x) < 0)` over `trials` independent ±1 samples.
pub fn mc_negative_probability(
    table: &PrimeTable,
    x: u64,
    trials: u64,
    seed: u64,
) -> Result<MCResult> {
    mc_negative_probability_range(table, x, 0..trials, trials, seed)
}

/// Trials restricted to an index sub-range; partial results merge with
/// [`MCResult::merge`] for deterministic parallel runs.
pub fn mc_negative_probability_range(
    table: &PrimeTable,
    x: u64,
    range: core::ops::Range<u64>,
    total_trials: u64,
    seed: u64,
) -> Result<MCResult> {
    if x > table.limit() {
        return Err(Error::OutOfRange(format!(
            "x = {x} exceeds sieve limit {}",
            table.limit()
        )));
    }
    if total_trials == 0 {
        return Err(Error::InvalidArgument("need at least one trial".into()));
    }
    let mut buf: Vec<f64> = Vec::new();
    let mut negatives = 0u64;
    let mut min_lf = f64::INFINITY;
    for i in range.clone() {
        let l = trial_log_sum(table, seed, i, x, &mut buf);
        if l < 0.0 {
            negatives += 1;
        }
        min_lf = min_lf.min(l);
    }
    let mut r = MCResult {
        x,
        trials: range.end - range.start,
        seed,
        negatives,
        estimate: 0.0,
        wilson_low: 0.0,
        wilson_high: 0.0,
        min_lf,
    };
    r.finalize();
    Ok(r)
}

/// Output of the exhaustive sign-pattern oracle.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactNegativeProbability {
    pub x: u64,
    pub prime_count: usize,
    pub patterns: u64,
    pub negatives: u64,
    pub probability: f64,
    /// Patterns whose `L_f(x)` landed within 1e-12 of zero; a nonzero count
    /// means the negative/nonnegative classification is not trustworthy.
    pub near_zero_patterns: u64,
    pub min_lf: f64,
}

/// Exact `P(L_f(x) < 0)` by enumerating all `2^{π(x)}` sign assignments.
pub fn exact_negative_probability(table: &PrimeTable, x: u64) -> Result<ExactNegativeProbability> {
    if x > table.limit() {
        return Err(Error::OutOfRange(format!(
            "x = {x} exceeds sieve limit {}",
            table.limit()
        )));
    }
    let primes: Vec<u64> = table
        .primes()
        .iter()
        .map(|&p| p as u64)
        .take_while(|&p| p <= x)
        .collect();
    let k = primes.len();
    if k > EXACT_ORACLE_MAX_PRIMES {
        return Err(Error::TooLarge(format!(
            "{k} primes up to {x}; the oracle enumerates at most 2^{EXACT_ORACLE_MAX_PRIMES} patterns"
        )));
    }
    // Per n: bitmask of primes with odd exponent, so that
    // f(n) = (−1)^{popcount(mask(n) & pattern)}.
    let mut mask = vec![0u32; x as usize + 1];
    for (b, &p) in primes.iter().enumerate() {
        for n in 1..=x as usize {
            let mut m = n as u64;
            let mut e = 0u32;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            if e % 2 == 1 {
                mask[n] |= 1 << b;
            }
        }
    }
    let recip: Vec<f64> = (0..=x as usize)
        .map(|n| if n == 0 { 0.0 } else { 1.0 / n as f64 })
        .collect();

    let patterns = 1u64 << k;
    let mut negatives = 0u64;
    let mut near_zero = 0u64;
    let mut min_lf = f64::INFINITY;
    for pat in 0..patterns {
        let pat32 = pat as u32;
        let mut acc = Kahan::new();
        for n in 1..=x as usize {
            let s = if (mask[n] & pat32).count_ones() % 2 == 0 {
                recip[n]
            } else {
                -recip[n]
            };
            acc.add(s);
        }
        let l = acc.total();
        if l < 0.0 {
            negatives += 1;
        }
        if math::abs(l) < 1e-12 {
            near_zero += 1;
        }
        min_lf = min_lf.min(l);
    }
    Ok(ExactNegativeProbability {
        x,
        prime_count: k,
        patterns,
        negatives,
        probability: negatives as f64 / patterns as f64,
        near_zero_patterns: near_zero,
        min_lf,
    })
}

/// Per-trial statistic for [`tail_distribution`].
#[derive(Clone, Copy, Debug)]
pub enum TailFunctional {
    /// `−Σ_{y_k < p ≤ x} f(p)(1 − cos(t ln p))/p` with `y₀ = 1`,
    /// `y_k = exp((ln 2k)²)`.
    NegEuler { t: f64, k: u32 },
    /// `Σ_{x^{1−θ} < p ≤ x} (f(p)/p)·L_f(x/p)`.
    SplitSum { theta: f64 },
}

impl TailFunctional {
    pub fn label(&self) -> String {
        match self {
            TailFunctional::NegEuler { t, k } => format!("neg_euler(t={t},k={k})"),
            TailFunctional::SplitSum { theta } => format!("split_sum(theta={theta})"),
        }
    }
}

/// Empirical tail report: sorted per-trial values, exceedance frequencies,
/// and (for the split sum) the Hoeffding comparator.
#[derive(Clone, Debug)]
pub struct TailReport {
    pub functional: String,
    pub x: u64,
    pub trials: u64,
    pub seed: u64,
    /// Per-trial statistics, sorted ascending.
    pub values: Vec<f64>,
    pub thresholds: Vec<f64>,
    /// Fraction of trials at or above each threshold (|value| ≥ λσ for the
    /// split sum, value ≥ threshold for the Euler-product tail).
    pub exceedance: Vec<f64>,
    /// σ = (Σ (ln(x/p)/p)²)^{1/2} over the large-prime range (split sum only).
    pub sigma: Option<f64>,
    /// `2·exp(−λ²/2)` per threshold (split sum only).
    pub hoeffding_bound: Option<Vec<f64>>,
}

impl TailReport {
    /// Empirical q-quantile (0 ≤ q ≤ 1) of the sorted values.
    pub fn quantile(&self, q: f64) -> f64 {
        let n = self.values.len();
        let idx = ((q * n as f64) as usize).min(n - 1);
        self.values[idx]
    }
}

pub fn tail_distribution(
    table: &PrimeTable,
    functional: TailFunctional,
    x: u64,
    trials: u64,
    seed: u64,
    thresholds: &[f64],
) -> Result<TailReport> {
    if x > table.limit() {
        return Err(Error::OutOfRange(format!(
            "x = {x} exceeds sieve limit {}",
            table.limit()
        )));
    }
    if trials == 0 {
        return Err(Error::InvalidArgument("need at least one trial".into()));
    }
    let mut values = Vec::with_capacity(trials as usize);
    let mut sigma = None;
    match functional {
        TailFunctional::NegEuler { t, k } => {
            let yk = if k == 0 {
                1.0
            } else {
                let l = math::ln(2.0 * k as f64);
                math::exp(l * l)
            };
            let lo = table.first_prime_above(yk);
            let hi = table.first_prime_above(x as f64);
            let pw: Vec<(u64, f64)> = table.primes()[lo..hi]
                .iter()
                .map(|&p| {
                    let pf = p as f64;
                    (p as u64, (1.0 - math::cos(t * math::ln(pf))) / pf)
                })
                .collect();
            for i in 0..trials {
                let mut acc = Kahan::new();
                for &(p, w) in &pw {
                    acc.add(trial_sign(seed, i, p) * w);
                }
                values.push(-acc.total());
            }
        }
        TailFunctional::SplitSum { theta } => {
            if !(theta > 0.0 && theta <= 0.5) {
                return Err(Error::InvalidArgument(format!(
                    "split-sum theta must lie in (0, 1/2], got {theta}"
                )));
            }
            let z = math::powf(x as f64, 1.0 - theta);
            let smooth = math::floor(x as f64 / z) as usize; // = ⌊x^θ⌋ range of x/p
            let lo = table.first_prime_above(z);
            let hi = table.first_prime_above(x as f64);
            let large: Vec<u64> = table.primes()[lo..hi].iter().map(|&p| p as u64).collect();
            let mut s2 = Kahan::new();
            for &p in &large {
                let c = math::ln(x as f64 / p as f64) / p as f64;
                s2.add(c * c);
            }
            sigma = Some(math::sqrt(s2.total()));
            let mut buf: Vec<f64> = Vec::new();
            let mut prefix = vec![0.0f64; smooth + 1];
            for i in 0..trials {
                // materialize the trial's values on [1, x^θ] and prefix-sum L_f
                buf.clear();
                buf.resize(smooth + 1, 0.0);
                if smooth >= 1 {
                    buf[1] = 1.0;
                }
                let mut acc = Kahan::new();
                if smooth >= 1 {
                    acc.add(1.0);
                    prefix[1] = 1.0;
                }
                for m in 2..=smooth {
                    let p = table.spf(m as u64) as usize;
                    let v = if p == m {
                        trial_sign(seed, i, m as u64)
                    } else {
                        buf[m / p] * buf[p]
                    };
                    buf[m] = v;
                    acc.add(v / m as f64);
                    prefix[m] = acc.total();
                }
                let mut s = Kahan::new();
                for &p in &large {
                    let l = prefix[(x / p) as usize];
                    s.add(trial_sign(seed, i, p) / p as f64 * l);
                }
                values.push(s.total());
            }
        }
    }

    let exceedance: Vec<f64> = thresholds
        .iter()
        .map(|&th| {
            let count = match functional {
                TailFunctional::NegEuler { .. } => values.iter().filter(|&&v| v >= th).count(),
                TailFunctional::SplitSum { .. } => {
                    let s = sigma.unwrap();
                    values.iter().filter(|&&v| math::abs(v) >= th * s).count()
                }
            };
            count as f64 / trials as f64
        })
        .collect();
    let hoeffding = match functional {
        TailFunctional::SplitSum { .. } => Some(
            thresholds
                .iter()
                .map(|&l| 2.0 * math::exp(-l * l / 2.0))
                .collect(),
        ),
        TailFunctional::NegEuler { .. } => None,
    };

    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(TailReport {
        functional: functional.label(),
        x,
        trials,
        seed,
        values,
        thresholds: thresholds.to_vec(),
        exceedance,
        sigma,
        hoeffding_bound: hoeffding,
    })
}

/// Summary of the per-trial ratio `M̃_{g_{1/2}}(w₀x) / exp(Σ_{p≤x} f_{1/2}(p)/p)`,
/// where `f_{1/2}` kills primes above √x.
#[derive(Clone, Debug)]
pub struct ShiftedMeanReport {
    pub x: u64,
    pub trials: u64,
    pub seed: u64,
    pub min_ratio: f64,
    pub median_ratio: f64,
    pub max_ratio: f64,
}

/// Ratio for a single arbitrary spec (deterministic control path).
pub fn shifted_mean_ratio(table: &PrimeTable, spec: &FunctionSpec, x: u64) -> Result<f64> {
    let w0 = crate::consts::w0();
    let (y, _, _) = math::shifted_floor(w0, x as f64);
    if y > table.limit() {
        return Err(Error::OutOfRange(format!(
            "need sieve up to {y} for x = {x}"
        )));
    }
    let root = math::sqrt(x as f64);
    let mut half = alloc::collections::BTreeMap::new();
    for &p in table.primes() {
        let p = p as u64;
        if p > y {
            break;
        }
        half.insert(
            p,
            if p as f64 <= root {
                spec.prime_value(p)?
            } else {
                0.0
            },
        );
    }
    let half_spec = FunctionSpec::custom(half)?;
    let vt = crate::multfun::materialize(&half_spec, table, y)?;
    let mg = sums::mg_floor(&vt, y as f64)?;
    let mut exp_arg = Kahan::new();
    for &p in table.primes() {
        let pf = p as f64;
        if pf > root {
            break;
        }
        exp_arg.add(spec.prime_value(p as u64)? / pf);
    }
    Ok(mg / (w0 * x as f64) / math::exp(exp_arg.total()))
}

pub fn mc_shifted_mean_floor(
    table: &PrimeTable,
    x: u64,
    trials: u64,
    seed: u64,
) -> Result<ShiftedMeanReport> {
    let w0 = crate::consts::w0();
    let (y, _, _) = math::shifted_floor(w0, x as f64);
    if y > table.limit() {
        return Err(Error::OutOfRange(format!(
            "need sieve up to {y} for x = {x}"
        )));
    }
    if trials == 0 {
        return Err(Error::InvalidArgument("need at least one trial".into()));
    }
    let root = math::sqrt(x as f64);
    let yn = y as usize;
    let mut ratios = Vec::with_capacity(trials as usize);
    let mut buf: Vec<f64> = Vec::new();
    for i in 0..trials {
        buf.clear();
        buf.resize(yn + 1, 0.0);
        buf[1] = 1.0;
        let mut exp_arg = Kahan::new();
        let mut mg = Kahan::new();
        mg.add(yn as f64); // n = 1 term: f(1)·⌊y/1⌋
        for m in 2..=yn {
            let p = table.spf(m as u64) as usize;
            let v = if p == m {
                if (m as f64) <= root {
                    let s = trial_sign(seed, i, m as u64);
                    exp_arg.add(s / m as f64);
                    s
                } else {
                    0.0
                }
            } else {
                buf[m / p] * buf[p]
            };
            buf[m] = v;
            if v != 0.0 {
                mg.add(v * ((yn / m) as f64));
            }
        }
        ratios.push(mg.total() / (w0 * x as f64) / math::exp(exp_arg.total()));
    }
    let mut sorted = ratios.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(ShiftedMeanReport {
        x,
        trials,
        seed,
        min_ratio: sorted[0],
        median_ratio: sorted[sorted.len() / 2],
        max_ratio: sorted[sorted.len() - 1],
    })
}
