//! Analytic constants computed at startup rather than pasted from tables.
//!
//! γ and γ₁ come out of Euler–Maclaurin tail formulas; the hard-coded windows
//! in the tests guard against regressions in those routines. The Bernoulli
//! numbers below are exact rationals, evaluated once.

use crate::math::{self, Kahan};

/// Exact values of B₂, B₄, …, B₂₄ (numerator/denominator evaluated in f64).
pub const BERNOULLI_EVEN: [f64; 12] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
];

/// Euler–Mascheroni constant via `γ = H_M − ln M − 1/(2M) + Σ B₂ₖ/(2k·M²ᵏ)`.
pub fn euler_gamma() -> f64 {
    const M: usize = 4096;
    let mut h = Kahan::new();
    for n in 1..=M {
        h.add(1.0 / n as f64);
    }
    let m = M as f64;
    let mut g = h.total() - math::ln(m) - 0.5 / m;
    let mut m2k = m * m;
    for (k, b) in BERNOULLI_EVEN.iter().enumerate().take(6) {
        g += b / ((2 * (k + 1)) as f64 * m2k);
        m2k *= m * m;
    }
    g
}

/// First Stieltjes constant via Euler–Maclaurin for `f(x) = ln x / x`:
/// `γ₁ = Σ_{n≤M} ln n/n − (ln M)²/2 − f(M)/2 − Σ B₂ₖ/(2k)!·f^{(2k−1)}(M)`.
pub fn stieltjes_gamma1() -> f64 {
    const M: usize = 4096;
    let m = M as f64;
    let mut s = Kahan::new();
    for n in 2..=M {
        s.add(math::ln(n as f64) / n as f64);
    }
    let lnm = math::ln(m);
    let mut g1 = s.total() - 0.5 * lnm * lnm - 0.5 * lnm / m;

    // f^{(j)}(x) = x^{-1-j} (a_j ln x + b_j) with a₀ = 1, b₀ = 0.
    let (mut a, mut b) = (1.0f64, 0.0f64);
    let mut fact = 1.0f64; // (2k)!
    let mut xpow = 1.0 / m; // x^{-1-j} at j = 0
    for (k, bern) in BERNOULLI_EVEN.iter().enumerate().take(6) {
        // advance derivative order j -> 2k-1
        let target = 2 * (k + 1) - 1;
        let current = if k == 0 { 0 } else { 2 * k - 1 };
        for j in current..target {
            let (na, nb) = (-((j + 1) as f64) * a, a - (j + 1) as f64 * b);
            a = na;
            b = nb;
            xpow /= m;
        }
        fact *= if k == 0 { 2.0 } else { ((2 * k + 1) * (2 * k + 2)) as f64 };
        g1 -= bern / fact * xpow * (a * lnm + b);
    }
    g1
}

/// The shift constant `w₀ = e^{1−γ}`, accurate to ≥ 15 significant digits.
pub fn w0() -> f64 {
    math::exp(1.0 - euler_gamma())
}

/// Exponent `1 − 2/π` used to rescale the discrepancy `Δ(x)`.
pub fn delta_scaling_exponent() -> f64 {
    1.0 - 2.0 / core::f64::consts::PI
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_in_reference_window() {
        let g = euler_gamma();
        assert!(g > 0.5772156 && g < 0.5772157, "gamma = {g}");
        assert!((g - 0.5772156649015329).abs() < 1e-13);
    }

    #[test]
    fn gamma1_in_reference_window() {
        let g1 = stieltjes_gamma1();
        assert!(g1 > -0.07282 && g1 < -0.07281, "gamma1 = {g1}");
        assert!((g1 - (-0.07281584548367673)).abs() < 1e-11);
    }

    #[test]
    fn w0_value() {
        let w = w0();
        assert!((w - 1.5262051115958639).abs() < 2e-15, "w0 = {w}");
    }
}
