//! Declarative specs for completely multiplicative functions and their bulk
//! evaluation.
//!
//! A [`FunctionSpec`] assigns a value in the closed unit disc to every prime;
//! composites follow by complete multiplicativity. [`materialize`] fills a
//! dense table `f(1..N)` in one linear pass over the spf array.

use crate::error::{Error, Result};
use crate::math::{self, Kahan};
use crate::sieve::PrimeTable;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use num_complex::Complex64;

const TAU: f64 = core::f64::consts::TAU;

/// Smooth ±1 transition profile: the normalized integral of the standard
/// bump `exp(-1/(1-s²))`, tabulated once with values and derivatives for
/// cubic Hermite interpolation (absolute error well below 1e-10).
#[derive(Clone, Debug)]
struct TransitionProfile {
    nodes: Vec<f64>,
    derivs: Vec<f64>,
}

const PROFILE_STEPS: usize = 2048;

fn bump(s: f64) -> f64 {
    let d = 1.0 - s * s;
    if d <= 0.0 {
        0.0
    } else {
        math::exp(-1.0 / d)
    }
}

impl TransitionProfile {
    fn build() -> Self {
        let n = PROFILE_STEPS;
        let h = 2.0 / n as f64;
        let mut raw = Vec::with_capacity(n + 1);
        raw.push(0.0f64);
        let mut acc = 0.0;
        for i in 0..n {
            let a = -1.0 + i as f64 * h;
            acc += math::adaptive_simpson(a, a + h, 1e-14, &bump);
            raw.push(acc);
        }
        let z = raw[n];
        let nodes: Vec<f64> = raw.iter().map(|v| v / z).collect();
        let derivs: Vec<f64> = (0..=n)
            .map(|i| bump(-1.0 + i as f64 * h) / z)
            .collect();
        TransitionProfile { nodes, derivs }
    }

    /// B(s) on [-1, 1]: 0 at -1, 1 at +1, strictly increasing.
    fn eval(&self, s: f64) -> f64 {
        if s <= -1.0 {
            return 0.0;
        }
        if s >= 1.0 {
            return 1.0;
        }
        let n = PROFILE_STEPS;
        let h = 2.0 / n as f64;
        let t = (s + 1.0) / h;
        let i = (t as usize).min(n - 1);
        let u = t - i as f64;
        let (y0, y1) = (self.nodes[i], self.nodes[i + 1]);
        let (d0, d1) = (self.derivs[i] * h, self.derivs[i + 1] * h);
        // cubic Hermite basis
        let u2 = u * u;
        let u3 = u2 * u;
        (2.0 * u3 - 3.0 * u2 + 1.0) * y0
            + (u3 - 2.0 * u2 + u) * d0
            + (-2.0 * u3 + 3.0 * u2) * y1
            + (u3 - u2) * d1
    }
}

/// Period-1, even, C^∞ approximation of `sign(cos 2πu)`: +1 on
/// `|u| ≤ 1/4 − eps`, −1 on `1/4 + eps ≤ |u| ≤ 1/2`, smooth in between.
#[derive(Clone, Debug)]
pub struct SquareWave {
    eps: f64,
    profile: TransitionProfile,
}

impl SquareWave {
    pub fn new(eps: f64) -> Result<Self> {
        if !(eps > 0.0 && eps < 0.25) {
            return Err(Error::InvalidArgument(format!(
                "transition half-width must lie in (0, 1/4), got {eps}"
            )));
        }
        Ok(SquareWave {
            eps,
            profile: TransitionProfile::build(),
        })
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// h(u), reduced by periodicity and evenness to distance-to-nearest-integer.
    pub fn eval(&self, u: f64) -> f64 {
        let d = math::dist_to_nearest_int(u);
        if d <= 0.25 - self.eps {
            1.0
        } else if d >= 0.25 + self.eps {
            -1.0
        } else {
            1.0 - 2.0 * self.profile.eval((d - 0.25) / self.eps)
        }
    }
}

/// Fourier coefficients `ĥ(n) = ∫₀¹ h(u) e^{-2πinu} du` of [`SquareWave`],
/// real by evenness, returned for `n = -n_max..=n_max` (index `n + n_max`).
///
/// Composite trapezoid on one period; for the smooth `h` the rule is
/// spectrally accurate once `quadrature_points ≥ 64/eps`.
pub fn fourier_coefficients(eps: f64, n_max: usize, quadrature_points: usize) -> Result<Vec<f64>> {
    let wave = SquareWave::new(eps)?;
    let q = quadrature_points.max(4 * n_max + 4);
    let samples: Vec<f64> = (0..q).map(|j| wave.eval(j as f64 / q as f64)).collect();
    let mut out = alloc::vec![0.0; 2 * n_max + 1];
    for n in 0..=n_max {
        let mut acc = Kahan::new();
        for (j, &hj) in samples.iter().enumerate() {
            acc.add(hj * math::cos(TAU * n as f64 * j as f64 / q as f64));
        }
        let c = acc.total() / q as f64;
        out[n_max + n] = c;
        out[n_max - n] = c;
    }
    Ok(out)
}

/// Recommended quadrature panel count for [`fourier_coefficients`].
pub fn fourier_quadrature_points(eps: f64) -> usize {
    ((64.0 / eps) as usize).max(4096)
}

#[derive(Clone, Debug)]
pub enum Family {
    /// f ≡ 1.
    One,
    /// f(p) = −1 at every prime.
    Liouville,
    /// Non-principal character mod 4: f(2) = 0, f(p) = ±1 by p mod 4.
    Character4,
    /// f(p) = sign(cos(t₀ ln p)), with sign(0) = +1.
    CosSign { t0: f64 },
    /// Three-range ±1 construction anchored at `x`: θ-band signs on small
    /// primes, +1 in the middle range, feedback signs `-sign(L_f(x/p))` on
    /// large primes, −1 beyond `x`.
    Section6 {
        x: u64,
        v: f64,
        t0: f64,
        theta: f64,
        /// `L_f(d)` over the already-fixed small-prime values, d ≤ ⌊x^{1/v}⌋.
        smooth_prefix: Vec<f64>,
    },
    /// f(p) = h(t₀ ln p / 2π) for the smooth square wave h.
    Section7 { t0: f64, wave: SquareWave },
    /// i.i.d. uniform ±1 at primes, keyed by (seed, p).
    Rademacher { seed: u64 },
    /// Explicit prime-value map, values in [−1, 1].
    Custom { values: BTreeMap<u64, f64> },
    /// Explicit prime-value map on the complex unit disc.
    CustomComplex { values: BTreeMap<u64, Complex64> },
}

/// A completely multiplicative function, described by its prime values.
#[derive(Clone, Debug)]
pub struct FunctionSpec {
    family: Family,
    overrides: BTreeMap<u64, f64>,
}

impl FunctionSpec {
    pub fn one() -> Self {
        Family::One.into()
    }
    pub fn liouville() -> Self {
        Family::Liouville.into()
    }
    pub fn character4() -> Self {
        Family::Character4.into()
    }
    pub fn cos_sign(t0: f64) -> Self {
        Family::CosSign { t0 }.into()
    }

    /// Uniform ±1 prime values from a counter-based generator keyed by
    /// `(seed, p)`, so any subset of values is reproducible independent of
    /// evaluation order.
    pub fn rademacher(seed: u64) -> Self {
        Family::Rademacher { seed }.into()
    }

    pub fn custom(values: BTreeMap<u64, f64>) -> Result<Self> {
        for (&p, &v) in &values {
            if !(v.is_finite() && math::abs(v) <= 1.0) {
                return Err(Error::InvalidArgument(format!(
                    "custom value at prime {p} is outside [-1, 1]"
                )));
            }
        }
        Ok(Family::Custom { values }.into())
    }

    pub fn custom_complex(values: BTreeMap<u64, Complex64>) -> Result<Self> {
        for (&p, &v) in &values {
            if !(v.re.is_finite() && v.im.is_finite() && v.norm_sqr() <= 1.0 + 1e-12) {
                return Err(Error::InvalidArgument(format!(
                    "custom complex value at prime {p} is outside the unit disc"
                )));
            }
        }
        Ok(Family::CustomComplex { values }.into())
    }

    /// Replace values at individual primes.
    pub fn with_overrides(mut self, overrides: BTreeMap<u64, f64>) -> Result<Self> {
        for (&p, &v) in &overrides {
            if !(v.is_finite() && math::abs(v) <= 1.0) {
                return Err(Error::InvalidArgument(format!(
                    "override at prime {p} is outside [-1, 1]"
                )));
            }
        }
        self.overrides = overrides;
        Ok(self)
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn is_complex(&self) -> bool {
        matches!(self.family, Family::CustomComplex { .. })
    }

    /// Every value is exactly ±1 (the constant family, Rademacher,
    /// Liouville, and the sign constructions).
    pub fn is_pm_one(&self) -> bool {
        matches!(
            self.family,
            Family::One
                | Family::Liouville
                | Family::CosSign { .. }
                | Family::Section6 { .. }
                | Family::Rademacher { .. }
        ) && self.overrides.is_empty()
    }

    /// Value at a prime `p`. Callers must pass primes; compositeness is not
    /// checked here.
    pub fn prime_value(&self, p: u64) -> Result<f64> {
        if let Some(&v) = self.overrides.get(&p) {
            return Ok(v);
        }
        match &self.family {
            Family::One => Ok(1.0),
            Family::Liouville => Ok(-1.0),
            Family::Character4 => Ok(match p % 4 {
                1 => 1.0,
                3 => -1.0,
                _ => 0.0,
            }),
            Family::CosSign { t0 } => {
                Ok(if math::cos(t0 * math::ln(p as f64)) < 0.0 {
                    -1.0
                } else {
                    1.0
                })
            }
            Family::Section6 {
                x,
                v,
                t0,
                theta,
                smooth_prefix,
            } => {
                let pf = p as f64;
                let xf = *x as f64;
                let z1 = math::powf(xf, 1.0 / v);
                let z2 = math::powf(xf, 1.0 - 1.0 / v);
                if pf <= z1 {
                    let band = math::dist_to_nearest_int(t0 / TAU * math::ln(pf));
                    Ok(if band <= *theta { 1.0 } else { -1.0 })
                } else if pf <= z2 {
                    Ok(1.0)
                } else if p <= *x {
                    let l = smooth_prefix[(x / p) as usize];
                    // sign(0) resolves to +1, so the prime gets −1
                    Ok(if l >= 0.0 { -1.0 } else { 1.0 })
                } else {
                    Ok(-1.0)
                }
            }
            Family::Section7 { t0, wave } => Ok(wave.eval(t0 * math::ln(p as f64) / TAU)),
            Family::Rademacher { seed } => {
                Ok(if math::counter_rng(*seed, 0x5261_6465, p) >> 63 == 0 {
                    1.0
                } else {
                    -1.0
                })
            }
            Family::Custom { values } => values
                .get(&p)
                .copied()
                .ok_or(Error::IncompleteSpec { prime: p }),
            Family::CustomComplex { .. } => Err(Error::UnsupportedForComplex),
        }
    }

    /// Complex value at a prime (real families are promoted).
    pub fn prime_value_c(&self, p: u64) -> Result<Complex64> {
        if let Family::CustomComplex { values } = &self.family {
            if let Some(&v) = self.overrides.get(&p) {
                return Ok(Complex64::new(v, 0.0));
            }
            return values
                .get(&p)
                .copied()
                .ok_or(Error::IncompleteSpec { prime: p });
        }
        self.prime_value(p).map(|v| Complex64::new(v, 0.0))
    }

    /// Short label for reports.
    pub fn label(&self) -> String {
        match &self.family {
            Family::One => "one".into(),
            Family::Liouville => "liouville".into(),
            Family::Character4 => "character4".into(),
            Family::CosSign { t0 } => format!("cos_sign(t0={t0})"),
            Family::Section6 { x, v, t0, theta, .. } => {
                format!("section6(x={x},v={v},t0={t0},theta={theta})")
            }
            Family::Section7 { t0, wave } => format!("section7(t0={t0},eps={})", wave.eps()),
            Family::Rademacher { seed } => format!("rademacher(seed={seed})"),
            Family::Custom { values } => format!("custom({} primes)", values.len()),
            Family::CustomComplex { values } => format!("custom_complex({} primes)", values.len()),
        }
    }
}

impl From<Family> for FunctionSpec {
    fn from(family: Family) -> Self {
        FunctionSpec {
            family,
            overrides: BTreeMap::new(),
        }
    }
}

/// Build the three-range ±1 construction anchored at `x`.
///
/// Small primes `p ≤ x^{1/v}` get +1 exactly when `‖(t₀/2π)·ln p‖ ≤ θ`;
/// middle primes get +1; each large prime `x^{1-1/v} < p ≤ x` gets
/// `-sign(L_f(x/p))`, which only reads the already-fixed small values since
/// `x/p < x^{1/v}`. θ is clamped into (0, 1/2]: at 1/2 the band condition is
/// vacuous and every small prime gets +1.
pub fn construct_section6(
    table: &PrimeTable,
    x: u64,
    v: f64,
    t0: f64,
    theta: f64,
) -> Result<FunctionSpec> {
    if x > table.limit() {
        return Err(Error::OutOfRange(format!(
            "anchor {x} exceeds sieve limit {}",
            table.limit()
        )));
    }
    if !(v > 2.0) {
        return Err(Error::InvalidArgument(format!("need v > 2, got {v}")));
    }
    if !(math::abs(t0) <= 1.0) {
        return Err(Error::InvalidArgument(format!("need |t0| <= 1, got {t0}")));
    }
    if !(theta > 0.0) {
        return Err(Error::InvalidArgument(format!("need theta > 0, got {theta}")));
    }
    let theta = theta.min(0.5);
    let xf = x as f64;
    let z1 = math::powf(xf, 1.0 / v);
    if z1 < 2.0 {
        return Err(Error::DegenerateParameters(format!(
            "x^(1/v) = {z1} < 2: no small primes"
        )));
    }

    // Materialize the smooth range and its prefix sums L_f(d), d ≤ ⌊x^{1/v}⌋.
    let z1_floor = math::floor(z1) as usize;
    let mut values = alloc::vec![0.0f64; z1_floor + 1];
    if z1_floor >= 1 {
        values[1] = 1.0;
    }
    for n in 2..=z1_floor {
        let p = table.spf(n as u64) as usize;
        if p == n {
            let band = math::dist_to_nearest_int(t0 / TAU * math::ln(n as f64));
            values[n] = if band <= theta { 1.0 } else { -1.0 };
        } else {
            values[n] = values[n / p] * values[p];
        }
    }
    let mut prefix = alloc::vec![0.0f64; z1_floor + 1];
    let mut acc = Kahan::new();
    for d in 1..=z1_floor {
        acc.add(values[d] / d as f64);
        prefix[d] = acc.total();
    }

    Ok(Family::Section6 {
        x,
        v,
        t0,
        theta,
        smooth_prefix: prefix,
    }
    .into())
}

/// Paper-style default parameters for [`construct_section6`]:
/// `v = 3e`, `t₀ = 1/2`, `θ = (ln ln x)^{-1/3}` (before clamping).
pub fn section6_defaults(x: u64) -> (f64, f64, f64) {
    let v = 3.0 * core::f64::consts::E;
    let t0 = 0.5;
    let theta = math::powf(math::ln(math::ln(x as f64)), -1.0 / 3.0);
    (v, t0, theta)
}

/// Spec whose prime values are `h(t₀ ln p / 2π)` for the smooth square wave.
pub fn construct_section7(t0: f64, eps: f64) -> Result<FunctionSpec> {
    if t0 == 0.0 {
        return Err(Error::InvalidArgument("t0 must be nonzero".into()));
    }
    Ok(Family::Section7 {
        t0,
        wave: SquareWave::new(eps)?,
    }
    .into())
}

/// A dense table of `f(1..=limit)`, filled in one linear pass.
#[derive(Clone, Debug)]
pub struct ValueTable {
    spec: FunctionSpec,
    limit: u64,
    values: Vec<f64>,
}

impl ValueTable {
    pub fn spec(&self) -> &FunctionSpec {
        &self.spec
    }
    pub fn limit(&self) -> u64 {
        self.limit
    }
    #[inline(always)]
    pub fn value(&self, n: u64) -> f64 {
        self.values[n as usize]
    }
    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Evaluate `spec` at every integer up to `limit` via `f(n) = f(spf)·f(n/spf)`.
pub fn materialize(spec: &FunctionSpec, table: &PrimeTable, limit: u64) -> Result<ValueTable> {
    if limit > table.limit() {
        return Err(Error::OutOfRange(format!(
            "materialize limit {limit} exceeds sieve limit {}",
            table.limit()
        )));
    }
    if limit < 1 {
        return Err(Error::InvalidArgument("limit must be >= 1".into()));
    }
    if spec.is_complex() {
        return Err(Error::UnsupportedForComplex);
    }
    let n = limit as usize;
    let mut values: Vec<f64> = Vec::new();
    values
        .try_reserve_exact(n + 1)
        .map_err(|_| Error::Resource(format!("cannot allocate value table for limit {limit}")))?;
    values.resize(n + 1, 0.0);
    values[1] = 1.0;
    for m in 2..=n {
        let p = table.spf(m as u64) as usize;
        values[m] = if p == m {
            spec.prime_value(m as u64)?
        } else {
            values[m / p] * values[p]
        };
    }
    Ok(ValueTable {
        spec: spec.clone(),
        limit,
        values,
    })
}
