//! Floating-point helpers shared by every module.
//!
//! All transcendentals route through `libm` so results do not depend on the
//! host libm or on `std` being present.

use alloc::vec::Vec;

#[inline(always)]
pub fn ln(x: f64) -> f64 {
    libm::log(x)
}
#[inline(always)]
pub fn exp(x: f64) -> f64 {
    libm::exp(x)
}
#[inline(always)]
pub fn cos(x: f64) -> f64 {
    libm::cos(x)
}
#[inline(always)]
pub fn sin(x: f64) -> f64 {
    libm::sin(x)
}
#[inline(always)]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}
#[inline(always)]
pub fn powf(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}
#[inline(always)]
pub fn floor(x: f64) -> f64 {
    libm::floor(x)
}
#[inline(always)]
pub fn round(x: f64) -> f64 {
    libm::round(x)
}
#[inline(always)]
pub fn abs(x: f64) -> f64 {
    libm::fabs(x)
}
#[inline(always)]
pub fn fma(a: f64, b: f64, c: f64) -> f64 {
    libm::fma(a, b, c)
}

/// Distance from `u` to the nearest integer.
#[inline]
pub fn dist_to_nearest_int(u: f64) -> f64 {
    abs(u - round(u))
}

/// Neumaier-compensated accumulator.
///
/// Error after n additions is ~2ε·Σ|xᵢ|, which keeps sums of 10⁸ reciprocal
/// or ±1 terms accurate well past the 10⁻⁹ contracts used downstream.
#[derive(Clone, Copy, Debug, Default)]
pub struct Kahan {
    sum: f64,
    c: f64,
}

impl Kahan {
    #[inline]
    pub fn new() -> Self {
        Kahan { sum: 0.0, c: 0.0 }
    }

    #[inline(always)]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if abs(self.sum) >= abs(x) {
            self.c += (self.sum - t) + x;
        } else {
            self.c += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn total(&self) -> f64 {
        self.sum + self.c
    }
}

/// Compensated sum of an iterator.
pub fn kahan_sum(iter: impl IntoIterator<Item = f64>) -> f64 {
    let mut acc = Kahan::new();
    for x in iter {
        acc.add(x);
    }
    acc.total()
}

/// `w·x` evaluated as a double-double product, then floored.
///
/// Returns `(floor, fractional_part, tie)` where `tie` is set when the exact
/// product sits within 10⁻⁹ of an integer. The extra precision matters: a
/// plain f64 product of `w ≈ 1.526` with `x ≈ 10⁸` can land on the wrong
/// side of an integer boundary.
pub fn shifted_floor(w: f64, x: f64) -> (u64, f64, bool) {
    let p = w * x;
    let e = fma(w, x, -p);
    let mut f = floor(p);
    let mut r = (p - f) + e;
    if r < 0.0 {
        f -= 1.0;
        r += 1.0;
    } else if r >= 1.0 {
        f += 1.0;
        r -= 1.0;
    }
    let tie = r < 1e-9 || r > 1.0 - 1e-9;
    (f as u64, r, tie)
}

/// Golden-section search for the minimum of `f` on `[a, b]`.
///
/// `f` is assumed unimodal on the bracket; the search stops when the bracket
/// is shorter than `tol` and returns `(argmin, min)`.
pub fn golden_section_min(mut a: f64, mut b: f64, tol: f64, f: impl Fn(f64) -> f64) -> (f64, f64) {
    const INVPHI: f64 = 0.618_033_988_749_894_9;
    const INVPHI2: f64 = 0.381_966_011_250_105_1;
    let mut h = b - a;
    if h <= tol {
        let m = 0.5 * (a + b);
        return (m, f(m));
    }
    let mut c = a + INVPHI2 * h;
    let mut d = a + INVPHI * h;
    let mut yc = f(c);
    let mut yd = f(d);
    while h > tol {
        if yc < yd {
            b = d;
            d = c;
            yd = yc;
            h = b - a;
            c = a + INVPHI2 * h;
            yc = f(c);
        } else {
            a = c;
            c = d;
            yc = yd;
            h = b - a;
            d = a + INVPHI * h;
            yd = f(d);
        }
    }
    if yc < yd {
        (c, yc)
    } else {
        (d, yd)
    }
}

/// Adaptive Simpson quadrature of `f` over `[a, b]` to absolute tolerance `tol`.
pub fn adaptive_simpson(a: f64, b: f64, tol: f64, f: &impl Fn(f64) -> f64) -> f64 {
    fn simpson(a: f64, fa: f64, _m: f64, fm: f64, b: f64, fb: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &impl Fn(f64) -> f64,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        m: f64,
        fm: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(a, fa, lm, flm, m, fm);
        let right = simpson(m, fm, rm, frm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || abs(delta) <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            recurse(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1)
                + recurse(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1)
        }
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson(a, fa, m, fm, b, fb);
    recurse(f, a, fa, b, fb, m, fm, whole, tol, 48)
}

/// Mean value of a periodic function over one period `[0, period]` by the
/// composite trapezoid rule (`n` panels; spectrally accurate for smooth
/// integrands, O(n⁻²) for bounded variation).
pub fn periodic_mean(period: f64, n: usize, f: impl Fn(f64) -> f64) -> f64 {
    let h = period / n as f64;
    let mut acc = Kahan::new();
    for i in 0..n {
        acc.add(f(i as f64 * h));
    }
    acc.total() / n as f64
}

/// Wilson score interval for a binomial proportion.
///
/// Returns `(low, high)` for `successes` out of `n` at critical value `z`.
pub fn wilson_interval(successes: u64, n: u64, z: f64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let nf = n as f64;
    let p = successes as f64 / nf;
    let z2 = z * z;
    let denom = 1.0 + z2 / nf;
    let center = (p + z2 / (2.0 * nf)) / denom;
    let half = z / denom * sqrt(p * (1.0 - p) / nf + z2 / (4.0 * nf * nf));
    // at the boundary counts the analytic endpoints are exactly 0 resp. 1
    let lo = if successes == 0 {
        0.0
    } else {
        (center - half).max(0.0)
    };
    let hi = if successes == n {
        1.0
    } else {
        (center + half).min(1.0)
    };
    (lo, hi)
}

/// One Wilson "σ": half-width of the z = 1 Wilson interval. Stays positive
/// even at `successes = 0`, unlike the plain binomial standard error.
pub fn wilson_sigma(successes: u64, n: u64) -> f64 {
    let (lo, hi) = wilson_interval(successes, n, 1.0);
    0.5 * (hi - lo)
}

/// Deterministic 64-bit mix (splitmix64 finalizer applied twice with
/// distinct odd constants). Used to key per-prime and per-trial randomness.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Counter-based stream: a pure function of `(seed, stream, counter)`,
/// reproducible independent of evaluation order.
#[inline]
pub fn counter_rng(seed: u64, stream: u64, counter: u64) -> u64 {
    mix64(mix64(seed ^ mix64(stream)).wrapping_add(counter.wrapping_mul(0xd6e8_feb8_6659_fd93)))
}

/// Geometric checkpoint grid `x_j = ⌈X·r^{-j}⌉` with ratio `r = 10^{1/per_decade}`,
/// descending until `x < lo`, returned ascending and deduplicated.
pub fn geometric_checkpoints(xmax: u64, lo: u64, per_decade: u32) -> Vec<u64> {
    let r = powf(10.0, 1.0 / per_decade as f64);
    let mut pts = Vec::new();
    let mut j = 0u32;
    loop {
        let x = libm::ceil(xmax as f64 / powf(r, j as f64)) as u64;
        if x < lo || x < 2 {
            break;
        }
        pts.push(x);
        if j > 20_000 {
            break;
        }
        j += 1;
    }
    pts.sort_unstable();
    pts.dedup();
    pts
}
