//! Partial-sum engines over materialized value tables.
//!
//! `L_f(x) = Σ_{n≤x} f(n)/n`, `M_f(x) = Σ_{n≤x} f(n)`, and for `g = 1∗f` the
//! exact floor identity `M_g(y) = Σ_{n≤⌊y⌋} f(n)·⌊y/n⌋`. The shifted
//! discrepancy is `Δ(x) = L_f(x) − M_g(w₀x)/(w₀x)` with `w₀ = e^{1−γ}`.
//!
//! All accumulation is compensated; identities advertised as exact are tested
//! to 1e-9 absolute or relative.

use crate::error::{Error, Result};
use crate::math::{self, Kahan};
use crate::multfun::ValueTable;
use crate::sieve::PrimeTable;
use alloc::format;
use alloc::vec::Vec;

/// Σ_{n ≤ x} f(n)/n.
pub fn log_sum(values: &ValueTable, x: u64) -> Result<f64> {
    check_range(values, x)?;
    let mut acc = Kahan::new();
    for n in 1..=x {
        acc.add(values.value(n) / n as f64);
    }
    Ok(acc.total())
}

/// Σ_{n ≤ x} f(n).
pub fn cesaro_sum(values: &ValueTable, x: u64) -> Result<f64> {
    check_range(values, x)?;
    let mut acc = Kahan::new();
    for n in 1..=x {
        acc.add(values.value(n));
    }
    Ok(acc.total())
}

/// Exact evaluation of `M_g(y) = Σ_{n≤⌊y⌋} f(n)·⌊y/n⌋` for `g = 1∗f`.
pub fn mg_floor(values: &ValueTable, y: f64) -> Result<f64> {
    let yf = math::floor(y) as u64;
    check_range(values, yf)?;
    let mut acc = Kahan::new();
    for n in 1..=yf {
        acc.add(values.value(n) * ((yf / n) as f64));
    }
    Ok(acc.total())
}

/// Cross-check route for [`mg_floor`]: materialize `g = 1∗f` by a divisor
/// sieve and sum directly. O(y log y) time, O(y) memory.
pub fn mg_divisor_sieve(values: &ValueTable, y: f64) -> Result<f64> {
    let yf = math::floor(y) as usize;
    check_range(values, yf as u64)?;
    let mut g = alloc::vec![0.0f64; yf + 1];
    for d in 1..=yf {
        let fd = values.value(d as u64);
        if fd != 0.0 {
            let mut m = d;
            while m <= yf {
                g[m] += fd;
                m += d;
            }
        }
    }
    let mut acc = Kahan::new();
    for &gn in &g[1..] {
        acc.add(gn);
    }
    Ok(acc.total())
}

/// `M̃_g(y) = M_g(y)/y` with the real (unfloored) denominator.
pub fn mg_tilde(values: &ValueTable, y: f64) -> Result<f64> {
    Ok(mg_floor(values, y)? / y)
}

/// The shifted discrepancy `Δ(x) = L_f(x) − M_g(w₀x)/(w₀x)`.
///
/// `w₀x` is evaluated in double-double precision before flooring; the second
/// return is a tie flag set when the product lies within 1e-9 of an integer.
pub fn delta_checked(values: &ValueTable, x: f64) -> Result<(f64, bool)> {
    delta_checked_with_shift(values, x, crate::consts::w0())
}

/// [`delta_checked`] with an explicit shift constant (negative-control runs
/// replace `w₀` by 1).
pub fn delta_checked_with_shift(values: &ValueTable, x: f64, w: f64) -> Result<(f64, bool)> {
    let (y_floor, _, tie) = math::shifted_floor(w, x);
    if y_floor > values.limit() {
        return Err(Error::OutOfRange(format!(
            "delta at x = {x} needs values up to floor({w}·x) = {y_floor}, table holds {}",
            values.limit()
        )));
    }
    let l = log_sum(values, math::floor(x) as u64)?;
    let mg = mg_floor(values, y_floor as f64)?;
    Ok((l - mg / (w * x), tie))
}

/// `Δ(x)` without the tie flag.
pub fn delta(values: &ValueTable, x: f64) -> Result<f64> {
    Ok(delta_checked(values, x)?.0)
}

/// Σ_{n ≤ x, P⁺(n) ≤ y} f(n)/n, the y-friable restriction of `L_f`.
pub fn friable_log_sum(values: &ValueTable, table: &PrimeTable, x: u64, y: f64) -> Result<f64> {
    check_range(values, x)?;
    if y < 2.0 {
        return Err(Error::InvalidArgument(format!(
            "friability bound must be >= 2, got {y}"
        )));
    }
    let mut acc = Kahan::new();
    acc.add(1.0);
    for n in 2..=x {
        if table.is_friable(n, y) {
            acc.add(values.value(n) / n as f64);
        }
    }
    Ok(acc.total())
}

/// Residual of the exact large-prime splitting of `L_f(x)` at threshold
/// `z = x^{1-θ}`:
///
/// `L_f(x) = Σ_{z < p ≤ x} Σ_{k ≥ 1} (f(p)^k/p^k) · L^{(<p)}_f(x/p^k) + L_{f_θ}(x)`
///
/// where `L^{(<p)}` restricts to integers with every prime factor `< p` and
/// `f_θ` kills primes above `z`. For θ ≤ 1/2 only `k = 1` contributes and the
/// inner restriction is vacuous, recovering the plain form
/// `Σ (f(p)/p)·L_f(x/p) + L_{f_θ}(x)`; the grouped form stays exact for every
/// θ in (0, 1). Returns `|LHS − RHS|`.
pub fn split_identity_check(
    values: &ValueTable,
    table: &PrimeTable,
    x: u64,
    theta: f64,
) -> Result<f64> {
    check_range(values, x)?;
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "theta must lie in (0,1), got {theta}"
        )));
    }
    let z = math::powf(x as f64, 1.0 - theta);

    // LHS and the friable part in one pass over n.
    let mut lhs = Kahan::new();
    let mut friable = Kahan::new();
    for n in 1..=x {
        let term = values.value(n) / n as f64;
        lhs.add(term);
        if n == 1 || table.is_friable(n, z) {
            friable.add(term);
        }
    }

    // Large-prime part grouped by largest prime factor and its multiplicity.
    let mut large = Kahan::new();
    let start = table.first_prime_above(z);
    for &p in &table.primes()[start..] {
        let p = p as u64;
        if p > x {
            break;
        }
        let fp = values.value(p);
        let mut pk = p;
        let mut fpk = fp;
        loop {
            // Σ_{m ≤ x/p^k, P⁺(m) < p} f(m)/m
            let bound = x / pk;
            let mut inner = Kahan::new();
            inner.add(1.0);
            for m in 2..=bound {
                if largest_factor_below(table, m, p) {
                    inner.add(values.value(m) / m as f64);
                }
            }
            large.add(fpk / pk as f64 * inner.total());
            if pk > x / p {
                break;
            }
            pk *= p;
            fpk *= fp;
        }
    }

    Ok(math::abs(lhs.total() - friable.total() - large.total()))
}

#[inline]
fn largest_factor_below(table: &PrimeTable, n: u64, p: u64) -> bool {
    let mut m = n as usize;
    while m > 1 {
        let q = table.spf(m as u64) as u64;
        if q >= p {
            return false;
        }
        m /= q as usize;
    }
    true
}

/// `|M̃_g(x) − M̃_g(x/w)| / ln(2w)` — the Lipschitz-type variation of the
/// normalized divisor-convolution mean.
pub fn lipschitz_ratio(values: &ValueTable, x: f64, w: f64) -> Result<f64> {
    if w < 1.0 {
        return Err(Error::InvalidArgument(format!("need w >= 1, got {w}")));
    }
    let a = mg_tilde(values, x)?;
    let b = mg_tilde(values, x / w)?;
    Ok(math::abs(a - b) / math::ln(2.0 * w))
}

fn check_range(values: &ValueTable, x: u64) -> Result<()> {
    if x > values.limit() {
        return Err(Error::OutOfRange(format!(
            "argument {x} exceeds materialized limit {}",
            values.limit()
        )));
    }
    Ok(())
}

/// One checkpoint row of a partial-sum series.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckpointRow {
    pub x: u64,
    pub l_f: f64,
    pub m_f: f64,
    /// `M_g(w₀x)` (exact floor-identity value).
    pub mg_w0: f64,
    /// `M̃_g(w₀x) = M_g(w₀x)/(w₀x)`.
    pub mg_tilde_w0: f64,
    /// `Δ(x) = L_f(x) − M̃_g(w₀x)`.
    pub delta: f64,
    /// `w₀x` landed within 1e-9 of an integer.
    pub tie_flagged: bool,
}

impl CheckpointRow {
    /// `Δ(x)·(ln x)^{1−2/π}`, the scaling used in reports.
    pub fn delta_scaled(&self) -> f64 {
        self.delta * math::powf(math::ln(self.x as f64), crate::consts::delta_scaling_exponent())
    }
}

/// Checkpointed series of `L_f`, `M_f`, `M_g(w₀·)`, `M̃_g(w₀·)`, `Δ` over an
/// ascending list of x values.
#[derive(Clone, Debug)]
pub struct SumSeries {
    pub label: alloc::string::String,
    pub w0: f64,
    pub rows: Vec<CheckpointRow>,
}
