//! One-pass streaming evaluation of checkpoint series.
//!
//! Evaluating `L_f`, `M_f`, `M_g(w₀·)` and `Δ` at k geometric checkpoints up
//! to X costs a single O(w₀X) pass and O(√(w₀X)) memory, independent of k:
//!
//! * values `f(n)` are generated segment by segment from base primes ≤ √N,
//!   so no dense table is held;
//! * `M_f` prefixes are captured at the O(√Y) points each hyperbola
//!   evaluation `M_g(Y) = Σ_{a≤√Y} M_f(⌊Y/a⌋) + Σ_{b≤√Y} f(b)⌊Y/b⌋ − ⌊√Y⌋·M_f(⌊√Y⌋)`
//!   needs — an exact identity, so the result is bit-for-bit the same sum as
//!   the direct floor evaluation up to compensated rounding.

use crate::error::{Error, Result};
use crate::math::{self, Kahan};
use crate::multfun::FunctionSpec;
use crate::sieve::PrimeTable;
use crate::sums::{CheckpointRow, SumSeries};
use alloc::vec;
use alloc::vec::Vec;

const SEGMENT: usize = 1 << 20;

/// Evaluate the checkpoint series for `spec` with the standard shift `w₀`.
pub fn evaluate_series(spec: &FunctionSpec, checkpoints: &[u64]) -> Result<SumSeries> {
    evaluate_series_with_shift(spec, checkpoints, crate::consts::w0())
}

/// Evaluate with an explicit shift constant (1.0 gives the unshifted
/// negative control).
pub fn evaluate_series_with_shift(
    spec: &FunctionSpec,
    checkpoints: &[u64],
    shift: f64,
) -> Result<SumSeries> {
    if spec.is_complex() {
        return Err(Error::UnsupportedForComplex);
    }
    if checkpoints.is_empty() {
        return Err(Error::InvalidArgument("empty checkpoint list".into()));
    }
    if !(shift >= 1.0) {
        return Err(Error::InvalidArgument("shift must be >= 1".into()));
    }
    let mut xs: Vec<u64> = checkpoints.to_vec();
    xs.sort_unstable();
    xs.dedup();
    if xs[0] < 1 {
        return Err(Error::InvalidArgument("checkpoints must be >= 1".into()));
    }

    struct Target {
        x: u64,
        y: u64,
        a: u64,
        tie: bool,
    }
    let targets: Vec<Target> = xs
        .iter()
        .map(|&x| {
            let (y, _, tie) = math::shifted_floor(shift, x as f64);
            Target {
                x,
                y,
                a: y.isqrt(),
                tie,
            }
        })
        .collect();

    let n_max = targets.iter().map(|t| t.y).max().unwrap().max(xs[xs.len() - 1]);
    let x_max = xs[xs.len() - 1];
    let root = n_max.isqrt().max(2);

    // M_f capture points: every ⌊y/a⌋ plus ⌊√y⌋ per target, plus checkpoints.
    let mut captures: Vec<u64> = Vec::new();
    for t in &targets {
        for a in 1..=t.a {
            captures.push(t.y / a);
        }
        captures.push(t.a);
    }
    captures.extend_from_slice(&xs);
    captures.sort_unstable();
    captures.dedup();

    let base = PrimeTable::sieve(root)?;
    let base_fp: Vec<f64> = base
        .primes()
        .iter()
        .map(|&p| spec.prime_value(p as u64))
        .collect::<Result<_>>()?;

    let mut mf_at = vec![0.0f64; captures.len()];
    let mut lf_at = vec![0.0f64; xs.len()];
    let mut mf_at_x = vec![0.0f64; xs.len()];
    let mut small_values = vec![0.0f64; root as usize + 1];

    let mut mf = Kahan::new();
    let mut lf = Kahan::new();
    let mut cap_idx = 0usize;
    let mut x_idx = 0usize;

    let mut rem: Vec<u32> = vec![0; SEGMENT];
    let mut val: Vec<f64> = vec![0.0; SEGMENT];

    let mut lo = 1u64;
    while lo <= n_max {
        let hi = (lo + SEGMENT as u64 - 1).min(n_max);
        let len = (hi - lo + 1) as usize;
        for (i, r) in rem[..len].iter_mut().enumerate() {
            *r = (lo + i as u64) as u32;
        }
        for v in val[..len].iter_mut() {
            *v = 1.0;
        }
        for (bi, &p) in base.primes().iter().enumerate() {
            let p = p as u64;
            if p * p > hi {
                break;
            }
            let fp = base_fp[bi];
            let mut m = lo.div_ceil(p) * p;
            while m <= hi {
                let idx = (m - lo) as usize;
                let mut r = rem[idx] / p as u32;
                let mut f = fp;
                while r % p as u32 == 0 {
                    r /= p as u32;
                    f *= fp;
                }
                rem[idx] = r;
                val[idx] *= f;
                m += p;
            }
        }
        for i in 0..len {
            let n = lo + i as u64;
            let r = rem[i];
            let fv = if r > 1 {
                val[i] * spec.prime_value(r as u64)?
            } else if n == 1 {
                1.0
            } else {
                val[i]
            };
            if n <= root {
                small_values[n as usize] = fv;
            }
            mf.add(fv);
            if n <= x_max {
                lf.add(fv / n as f64);
            }
            while cap_idx < captures.len() && captures[cap_idx] == n {
                mf_at[cap_idx] = mf.total();
                cap_idx += 1;
            }
            while x_idx < xs.len() && xs[x_idx] == n {
                lf_at[x_idx] = lf.total();
                mf_at_x[x_idx] = mf.total();
                x_idx += 1;
            }
        }
        lo = hi + 1;
    }

    let mf_lookup = |point: u64| -> f64 {
        let i = captures.partition_point(|&c| c < point);
        debug_assert!(captures[i] == point);
        mf_at[i]
    };

    let rows: Vec<CheckpointRow> = targets
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let mut mg = Kahan::new();
            for a in 1..=t.a {
                mg.add(mf_lookup(t.y / a));
            }
            for b in 1..=t.a {
                mg.add(small_values[b as usize] * ((t.y / b) as f64));
            }
            mg.add(-(t.a as f64) * mf_lookup(t.a));
            let mg = mg.total();
            let denom = shift * t.x as f64;
            let mg_tilde = mg / denom;
            CheckpointRow {
                x: t.x,
                l_f: lf_at[i],
                m_f: mf_at_x[i],
                mg_w0: mg,
                mg_tilde_w0: mg_tilde,
                delta: lf_at[i] - mg_tilde,
                tie_flagged: t.tie,
            }
        })
        .collect();

    Ok(SumSeries {
        label: spec.label(),
        w0: shift,
        rows,
    })
}
