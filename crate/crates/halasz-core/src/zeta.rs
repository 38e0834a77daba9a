//! Complex ζ near `Re(s) = 1`, the `w₀`-bracket identities, and the
//! truncated-product oscillation main term.
//!
//! ζ is evaluated by Euler–Maclaurin with cutoff `M ≈ max(20·base, 2|Im s|)`
//! and up to 12 Bernoulli correction terms; relative error stays below
//! 1e-10 for `Re(s) ≥ 0.5`, `|Im s| ≤ 10³`, degrading gracefully (at linear
//! cost in `|Im s|`) up to the documented ceiling `|Im s| ≤ 10⁶`. γ and γ₁
//! are computed at startup from their own tail formulas and cross-checked
//! against hard-coded windows.

use crate::consts;
use crate::error::{Error, Result};
use crate::math::{self, Kahan};
use crate::multfun;

use num_complex::Complex64;

/// Context caching the analytic constants and Euler–Maclaurin configuration.
#[derive(Clone, Debug)]
pub struct ZetaContext {
    /// Base cutoff; the effective cutoff is `max(20·scale, 2|Im s|)`.
    cutoff_scale: u32,
    bernoulli_terms: usize,
    gamma: f64,
    gamma1: f64,
    w0: f64,
}

impl Default for ZetaContext {
    fn default() -> Self {
        Self::new()
    }
}

impl ZetaContext {
    pub fn new() -> Self {
        Self::with_cutoff_scale(1)
    }

    /// Scale the Euler–Maclaurin cutoff (used by the convergence-plateau
    /// checks; results must agree to 1e-12 across scales).
    pub fn with_cutoff_scale(scale: u32) -> Self {
        let gamma = consts::euler_gamma();
        let gamma1 = consts::stieltjes_gamma1();
        debug_assert!(gamma > 0.5772156 && gamma < 0.5772157);
        debug_assert!(gamma1 > -0.07282 && gamma1 < -0.07281);
        ZetaContext {
            cutoff_scale: scale.max(1),
            bernoulli_terms: 12,
            gamma,
            gamma1,
            w0: consts::w0(),
        }
    }

    pub fn gamma_euler(&self) -> f64 {
        self.gamma
    }
    pub fn gamma1_stieltjes(&self) -> f64 {
        self.gamma1
    }
    pub fn w0(&self) -> f64 {
        self.w0
    }

    /// ζ(s) for `Re(s) > 0`, `s ≠ 1`, `|Im s| ≤ 10⁶`.
    pub fn zeta(&self, s: Complex64) -> Result<Complex64> {
        if s == Complex64::new(1.0, 0.0) {
            return Err(Error::Pole);
        }
        if s.re <= 0.0 {
            return Err(Error::InvalidArgument("zeta requires Re(s) > 0".into()));
        }
        if math::abs(s.im) > 1e6 {
            return Err(Error::OutOfRange("zeta supports |Im s| <= 1e6".into()));
        }
        let m = self.cutoff(s);
        // Σ_{n<M} n^{-s} + M^{1-s}/(s-1) + M^{-s}/2 + Σ_j B_{2j}/(2j)!·(s)_{2j-1}·M^{-s-2j+1}
        let mut re = Kahan::new();
        let mut im = Kahan::new();
        for n in 1..m {
            let t = (n as f64).powc_neg(s);
            re.add(t.re);
            im.add(t.im);
        }
        let mf = m as f64;
        let m_neg_s = mf.powc_neg(s);
        let mut total = Complex64::new(re.total(), im.total());
        total += m_neg_s * mf / (s - 1.0);
        total += m_neg_s * 0.5;
        let mut poch = s; // s(s+1)…(s+2j-2), starts at j=1 as s
        let mut mpow = m_neg_s / mf; // M^{-s-2j+1} at j=1
        let mut fact = 2.0; // (2j)!
        for (j, b) in consts::BERNOULLI_EVEN
            .iter()
            .enumerate()
            .take(self.bernoulli_terms)
        {
            if j > 0 {
                fact *= ((2 * j + 1) * (2 * j + 2)) as f64;
                poch *= (s + (2 * j - 1) as f64) * (s + (2 * j) as f64);
                mpow /= mf * mf;
            }
            total += b / fact * poch * mpow;
        }
        Ok(total)
    }

    /// ζ′(s) by term-wise differentiation of the same expansion.
    pub fn zeta_deriv(&self, s: Complex64) -> Result<Complex64> {
        if s == Complex64::new(1.0, 0.0) {
            return Err(Error::Pole);
        }
        if s.re <= 0.0 {
            return Err(Error::InvalidArgument("zeta requires Re(s) > 0".into()));
        }
        let m = self.cutoff(s);
        let mf = m as f64;
        let lnm = math::ln(mf);
        let mut re = Kahan::new();
        let mut im = Kahan::new();
        for n in 2..m {
            let t = -(math::ln(n as f64)) * (n as f64).powc_neg(s);
            re.add(t.re);
            im.add(t.im);
        }
        let m_neg_s = mf.powc_neg(s);
        let mut total = Complex64::new(re.total(), im.total());
        // d/ds [M^{1-s}/(s-1)] = -ln M·M^{1-s}/(s-1) − M^{1-s}/(s-1)²
        let sm1 = s - 1.0;
        total += m_neg_s * mf * (-lnm / sm1 - 1.0 / (sm1 * sm1));
        // d/ds [M^{-s}/2]
        total += -0.5 * lnm * m_neg_s;
        // d/ds [c·(s)_{2j-1}·M^{-s-2j+1}] = c·M^{-s-2j+1}·(P'(s) − ln M·P(s))
        let mut poch = s;
        let mut dpoch = Complex64::new(1.0, 0.0);
        let mut mpow = m_neg_s / mf;
        let mut fact = 2.0;
        for (j, b) in consts::BERNOULLI_EVEN
            .iter()
            .enumerate()
            .take(self.bernoulli_terms)
        {
            if j > 0 {
                fact *= ((2 * j + 1) * (2 * j + 2)) as f64;
                let f1 = s + (2 * j - 1) as f64;
                let f2 = s + (2 * j) as f64;
                dpoch = dpoch * f1 * f2 + poch * (f1 + f2);
                poch *= f1 * f2;
                mpow /= mf * mf;
            }
            total += b / fact * mpow * (dpoch - lnm * poch);
        }
        Ok(total)
    }

    fn cutoff(&self, s: Complex64) -> u64 {
        let base = 20u64 * self.cutoff_scale as u64;
        base.max((2.0 * math::abs(s.im)) as u64 + 1)
    }

    /// `(s/(s−1))·w₀^{1−s} − ζ(s)`, with the removable singularity at `s = 1`
    /// filled by its limit 0.
    pub fn w0_bracket(&self, s: Complex64) -> Result<Complex64> {
        if s == Complex64::new(1.0, 0.0) {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let w0s = Complex64::new(self.w0, 0.0).powc(Complex64::new(1.0, 0.0) - s);
        Ok(s / (s - 1.0) * w0s - self.zeta(s)?)
    }

    /// `|bracket| / |s−1|`; approaches `1 − γ − (1−γ)²/2 − γ₁ ≈ 0.40623`
    /// as `s → 1`.
    pub fn w0_bracket_ratio(&self, s: Complex64) -> Result<f64> {
        if s == Complex64::new(1.0, 0.0) {
            return Err(Error::Pole);
        }
        Ok(self.w0_bracket(s)?.norm() / (s - 1.0).norm())
    }

    /// The limit coefficient `1 − γ − (1−γ)²/2 − γ₁` of the bracket ratio.
    pub fn w0_bracket_limit_coefficient(&self) -> f64 {
        let g = 1.0 - self.gamma;
        g - g * g / 2.0 - self.gamma1
    }

    /// `ζ′(s) + s/(s−1)² − ζ(s)/s`; bounded by ~10 on `0 < |s−1| ≤ 1/2`.
    pub fn zetaprime_bracket(&self, s: Complex64) -> Result<Complex64> {
        if s == Complex64::new(1.0, 0.0) {
            return Err(Error::Pole);
        }
        let sm1 = s - 1.0;
        Ok(self.zeta_deriv(s)? + s / (sm1 * sm1) - self.zeta(s)? / s)
    }

    /// Γ(x) for real x (Lanczos g = 7; relative error ≲ 1e-13 away from the
    /// poles at 0, −1, −2, …).
    pub fn gamma_fn(&self, x: f64) -> Result<f64> {
        gamma_real(x)
    }

    /// Oscillation main term of the smooth square-wave construction.
    ///
    /// Computes `μ₁ = H(1+it₀)/(1+it₀)·Π_{|m|≤2N, m∉{0,1}} ζ(1−i(m−1)t₀)^{ĥ(m)}`
    /// with `H(s) = ζ(s)^{ĥ(0)}·((s/(s−1))w₀^{1−s} − ζ(s))`, and predicts
    /// `L_f(x) − M̃_g(w₀x) ≈ 2·Re((w₀x)^{it₀}·μ₁)·(ln x)^{ĥ(1)−1}/Γ(ĥ(1)−1)`.
    pub fn oscillation_main_term(
        &self,
        t0: f64,
        eps: f64,
        n_max: usize,
        x: f64,
    ) -> Result<OscillationTerm> {
        if t0 == 0.0 {
            return Err(Error::InvalidArgument("t0 must be nonzero".into()));
        }
        if (n_max as f64) < 1.0 / math::abs(t0) {
            return Err(Error::InvalidArgument(alloc::format!(
                "n_max = {n_max} must be at least 1/|t0| = {}",
                1.0 / math::abs(t0)
            )));
        }
        let n = n_max as i64;
        let q = multfun::fourier_quadrature_points(eps);
        let hhat = multfun::fourier_coefficients(eps, 2 * n_max, q)?;
        let at = |m: i64| hhat[(m + 2 * n) as usize];
        for m in 1..=2 * n {
            assert!(
                math::abs(at(m)) < 1.0,
                "Fourier coefficient at {m} has modulus >= 1"
            );
        }
        let s1 = Complex64::new(1.0, t0);
        let h_at_s1 = self.zeta(s1)?.powf_principal(at(0)) * self.w0_bracket(s1)?;
        let mut log_product = Complex64::new(0.0, 0.0);
        for m in -2 * n..=2 * n {
            if m == 0 || m == 1 {
                continue;
            }
            let arg = Complex64::new(1.0, -((m - 1) as f64) * t0);
            log_product += at(m) * self.zeta(arg)?.ln();
        }
        let mu1 = h_at_s1 / s1 * log_product.exp();
        let hhat1 = at(1);
        let gamma_factor = gamma_real(hhat1 - 1.0)?;
        Ok(OscillationTerm {
            t0,
            eps,
            n_max,
            x_anchor: x,
            mu1,
            hhat0: at(0),
            hhat1,
            gamma_factor,
            w0: self.w0,
        })
    }
}

/// Principal-branch helpers on the positive reals.
trait PowcNeg {
    fn powc_neg(self, s: Complex64) -> Complex64;
}
impl PowcNeg for f64 {
    /// `self^{-s}` for positive real self.
    #[inline]
    fn powc_neg(self, s: Complex64) -> Complex64 {
        let ln = math::ln(self);
        let scale = math::exp(-s.re * ln);
        let (si, co) = libm::sincos(-s.im * ln);
        Complex64::new(scale * co, scale * si)
    }
}

trait PowfPrincipal {
    fn powf_principal(self, a: f64) -> Complex64;
}
impl PowfPrincipal for Complex64 {
    /// `self^a` via the principal logarithm.
    #[inline]
    fn powf_principal(self, a: f64) -> Complex64 {
        (a * self.ln()).exp()
    }
}

/// Γ(x) by the Lanczos approximation (g = 7, 9 coefficients), reflection for
/// x < 1/2. Errors at the poles 0, −1, −2, ….
pub fn gamma_real(x: f64) -> Result<f64> {
    const G: [f64; 9] = [
        0.999_999_999_999_809_93,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_13,
        -176.615_029_162_140_59,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_571_6e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x <= 0.0 && x == math::floor(x) {
        return Err(Error::Pole);
    }
    if x < 0.5 {
        // Γ(x)Γ(1−x) = π/sin(πx)
        let pi = core::f64::consts::PI;
        return Ok(pi / (math::sin(pi * x) * gamma_real(1.0 - x)?));
    }
    let z = x - 1.0;
    let mut a = G[0];
    for (i, &g) in G.iter().enumerate().skip(1) {
        a += g / (z + i as f64);
    }
    let t = z + 7.5;
    Ok(math::sqrt(2.0 * core::f64::consts::PI) * math::powf(t, z + 0.5) * math::exp(-t) * a)
}

/// Everything needed to evaluate the predicted oscillation at any x.
#[derive(Clone, Debug)]
pub struct OscillationTerm {
    pub t0: f64,
    pub eps: f64,
    pub n_max: usize,
    pub x_anchor: f64,
    /// `μ₁`, the residue-style coefficient of the dominant pair `n = ±1`.
    pub mu1: Complex64,
    pub hhat0: f64,
    pub hhat1: f64,
    /// `Γ(ĥ(1) − 1)` (negative on the relevant range).
    pub gamma_factor: f64,
    pub w0: f64,
}

impl OscillationTerm {
    /// Predicted `L_f(x) − M̃_g(w₀x)` at the point x.
    pub fn predicted_delta(&self, x: f64) -> f64 {
        let phase = Complex64::new(0.0, self.t0 * math::ln(self.w0 * x)).exp();
        2.0 * (phase * self.mu1).re * math::powf(math::ln(x), self.hhat1 - 1.0)
            / self.gamma_factor
    }

    /// Envelope of the prediction: `2|μ₁|·(ln x)^{ĥ(1)−1}/|Γ(ĥ(1)−1)|`.
    pub fn amplitude(&self, x: f64) -> f64 {
        2.0 * self.mu1.norm() * math::powf(math::ln(x), self.hhat1 - 1.0)
            / math::abs(self.gamma_factor)
    }
}
