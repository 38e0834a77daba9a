//! Smallest-prime-factor sieve and prime-indexed sums.
//!
//! One segmented pass fills a 32-bit `spf` array (4 bytes per integer, so a
//! 10⁸ table costs ~400 MB) and yields both primality and O(log n)
//! factorization for every n up to the limit. Output is independent of the
//! segment size, which only tunes cache behaviour.

use crate::error::{Error, Result};
use crate::math::{self, Kahan};
use alloc::format;

use alloc::vec::Vec;

const DEFAULT_SEGMENT: usize = 1 << 18;

/// Primes and smallest prime factors up to a limit.
///
/// Immutable after construction; shareable across threads.
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u32>,
    spf: Vec<u32>,
}

impl PrimeTable {
    /// Sieve up to `limit` (inclusive). `2 ≤ limit < 2³²`.
    pub fn sieve(limit: u64) -> Result<Self> {
        Self::sieve_with_segment(limit, DEFAULT_SEGMENT)
    }

    /// Same as [`PrimeTable::sieve`] with an explicit segment size; exposed so
    /// tests can assert the output does not depend on it.
    pub fn sieve_with_segment(limit: u64, segment: usize) -> Result<Self> {
        if limit < 2 {
            return Err(Error::InvalidArgument(format!(
                "sieve limit must be >= 2, got {limit}"
            )));
        }
        if limit >= u32::MAX as u64 {
            return Err(Error::InvalidArgument(format!(
                "sieve limit must fit 32-bit spf entries, got {limit}"
            )));
        }
        let segment = segment.max(64);
        let n = limit as usize;
        let mut spf: Vec<u32> = Vec::new();
        spf.try_reserve_exact(n + 1)
            .map_err(|_| Error::Resource(format!("cannot allocate spf array for limit {limit}")))?;
        spf.resize(n + 1, 0);

        // Base primes up to sqrt(limit) by a simple in-place pass.
        let root = limit.isqrt() as usize;
        let mut base: Vec<u32> = Vec::new();
        for p in 2..=root {
            if spf[p] == 0 {
                base.push(p as u32);
                let mut m = p * p;
                while m <= root {
                    if spf[m] == 0 {
                        spf[m] = p as u32;
                    }
                    m += p;
                }
            }
        }
        for p in 2..=root {
            if spf[p] == 0 {
                spf[p] = p as u32;
            }
        }

        // Segmented marking above the root: ascending p guarantees the first
        // mark on each composite is its smallest factor.
        let mut lo = root + 1;
        while lo <= n {
            let hi = (lo + segment - 1).min(n);
            for &p in &base {
                let p = p as usize;
                let mut m = lo.div_ceil(p) * p;
                while m <= hi {
                    if spf[m] == 0 {
                        spf[m] = p as u32;
                    }
                    m += p;
                }
            }
            for m in lo..=hi {
                if spf[m] == 0 {
                    spf[m] = m as u32;
                }
            }
            lo = hi + 1;
        }

        let mut primes: Vec<u32> = Vec::new();
        for p in 2..=n {
            if spf[p] == p as u32 {
                primes.push(p as u32);
            }
        }
        Ok(PrimeTable { limit, primes, spf })
    }

    /// Rebuild a table from a raw spf array (index 0..=limit), validating the
    /// basic structure. Used by the sieve cache loader.
    pub fn from_spf(limit: u64, spf: Vec<u32>) -> Result<Self> {
        if limit < 2 || spf.len() != limit as usize + 1 {
            return Err(Error::InvalidArgument(format!(
                "spf array length {} does not match limit {limit}",
                spf.len()
            )));
        }
        let mut primes = Vec::new();
        for n in 2..=limit as usize {
            let p = spf[n];
            if p == 0 || n as u32 % p != 0 {
                return Err(Error::InvalidArgument(format!("corrupt spf entry at {n}")));
            }
            if p == n as u32 {
                primes.push(p);
            }
        }
        Ok(PrimeTable { limit, primes, spf })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u32] {
        &self.primes
    }

    pub fn prime_count(&self) -> usize {
        self.primes.len()
    }

    /// Raw spf entries, index 0..=limit (entries 0 and 1 are 0).
    pub fn spf_raw(&self) -> &[u32] {
        &self.spf
    }

    /// Smallest prime factor of `n` (2 ≤ n ≤ limit).
    #[inline(always)]
    pub fn spf(&self, n: u64) -> u32 {
        self.spf[n as usize]
    }

    #[inline(always)]
    pub fn is_prime(&self, n: u64) -> bool {
        n >= 2 && n <= self.limit && self.spf[n as usize] == n as u32
    }

    /// Largest prime factor of `n ≥ 2` by repeated spf division.
    #[inline]
    pub fn largest_prime_factor(&self, n: u64) -> u32 {
        let mut m = n as usize;
        let mut last = 0u32;
        while m > 1 {
            let p = self.spf[m];
            last = p;
            m /= p as usize;
        }
        last
    }

    /// Is every prime factor of `n` at most `y`? Early-exits on the first
    /// factor above the bound.
    #[inline]
    pub fn is_friable(&self, n: u64, y: f64) -> bool {
        let mut m = n as usize;
        while m > 1 {
            let p = self.spf[m];
            if p as f64 > y {
                return false;
            }
            m /= p as usize;
        }
        true
    }

    /// Index of the first prime `> bound` in the primes list.
    pub fn first_prime_above(&self, bound: f64) -> usize {
        self.primes.partition_point(|&p| p as f64 <= bound)
    }

    /// Σ_{lo < p ≤ hi} weight(ln p)/p, compensated.
    pub fn prime_recip_sum(&self, lo: f64, hi: f64, weight: impl Fn(f64) -> f64) -> Result<f64> {
        if hi > self.limit as f64 {
            return Err(Error::OutOfRange(format!(
                "prime sum upper bound {hi} exceeds sieve limit {}",
                self.limit
            )));
        }
        let a = self.first_prime_above(lo);
        let b = self.first_prime_above(hi);
        let mut acc = Kahan::new();
        for &p in &self.primes[a..b] {
            let pf = p as f64;
            acc.add(weight(math::ln(pf)) / pf);
        }
        Ok(acc.total())
    }

    /// Σ_{lo < p ≤ hi} 1/p.
    pub fn recip_sum(&self, lo: f64, hi: f64) -> Result<f64> {
        self.prime_recip_sum(lo, hi, |_| 1.0)
    }

    /// Chebyshev θ(t) = Σ_{p ≤ t} ln p.
    pub fn chebyshev_theta(&self, t: f64) -> Result<f64> {
        if !(2.0..=self.limit as f64).contains(&t) {
            return Err(Error::OutOfRange(format!(
                "theta argument {t} outside [2, {}]",
                self.limit
            )));
        }
        let b = self.first_prime_above(t);
        let mut acc = Kahan::new();
        for &p in &self.primes[..b] {
            acc.add(math::ln(p as f64));
        }
        Ok(acc.total())
    }

    /// R(t) = θ(t)/t − 1, the relative deviation from the PNT main term.
    pub fn chebyshev_r(&self, t: f64) -> Result<f64> {
        Ok(self.chebyshev_theta(t)? / t - 1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division_primes(limit: u64) -> Vec<u64> {
        let mut out = Vec::new();
        'outer: for n in 2..=limit {
            let mut d = 2;
            while d * d <= n {
                if n % d == 0 {
                    continue 'outer;
                }
                d += 1;
            }
            out.push(n);
        }
        out
    }

    #[test]
    fn small_enumeration() {
        let t = PrimeTable::sieve(10).unwrap();
        assert_eq!(t.primes(), &[2, 3, 5, 7]);
        assert_eq!(t.prime_count(), 4);
    }

    #[test]
    fn boundary_limit_two() {
        let t = PrimeTable::sieve(2).unwrap();
        assert_eq!(t.primes(), &[2]);
    }

    #[test]
    fn limit_below_two_rejected() {
        assert!(matches!(
            PrimeTable::sieve(1),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn hundred_against_trial_division() {
        let t = PrimeTable::sieve(100).unwrap();
        let oracle = trial_division_primes(100);
        assert_eq!(t.prime_count(), 25);
        assert_eq!(
            t.primes().iter().map(|&p| p as u64).collect::<Vec<_>>(),
            oracle
        );
    }

    #[test]
    fn spf_invariants() {
        let t = PrimeTable::sieve(10_000).unwrap();
        for n in 2..=10_000u64 {
            let p = t.spf(n) as u64;
            assert_eq!(n % p, 0);
            assert!(p * p <= n || p == n, "spf {p} of {n}");
            // repeated division recovers n
            let mut m = n;
            let mut prod = 1u64;
            let mut prev = 0u64;
            while m > 1 {
                let q = t.spf(m) as u64;
                assert!(q >= prev);
                prev = q;
                prod *= q;
                m /= q;
            }
            assert_eq!(prod, n);
        }
        for &p in t.primes() {
            assert_eq!(t.spf(p as u64), p);
        }
    }

    #[test]
    fn segment_size_does_not_matter() {
        let a = PrimeTable::sieve_with_segment(50_000, 64).unwrap();
        let b = PrimeTable::sieve_with_segment(50_000, 1 << 14).unwrap();
        let c = PrimeTable::sieve_with_segment(50_000, 1 << 20).unwrap();
        assert_eq!(a.spf_raw(), b.spf_raw());
        assert_eq!(a.spf_raw(), c.spf_raw());
        assert_eq!(a.primes(), c.primes());
    }

    #[test]
    fn recip_sum_below_hundred() {
        let t = PrimeTable::sieve(100).unwrap();
        let s = t.recip_sum(1.5, 100.0).unwrap();
        assert!((s - 1.80283).abs() < 1e-4, "sum = {s}");
    }

    #[test]
    fn recip_sum_empty_range() {
        let t = PrimeTable::sieve(100).unwrap();
        assert_eq!(t.recip_sum(7.0, 7.0).unwrap(), 0.0);
    }

    #[test]
    fn cos_weight_at_zero_matches_unit_weight() {
        let t = PrimeTable::sieve(100).unwrap();
        let unit = t.recip_sum(1.5, 100.0).unwrap();
        let cos0 = t
            .prime_recip_sum(1.5, 100.0, |lp| math::cos(0.0 * lp))
            .unwrap();
        assert_eq!(unit, cos0);
    }

    #[test]
    fn recip_sum_out_of_range() {
        let t = PrimeTable::sieve(100).unwrap();
        assert!(t.recip_sum(2.0, 101.0).is_err());
    }

    #[test]
    fn theta_small_values() {
        let t = PrimeTable::sieve(100).unwrap();
        let th = t.chebyshev_theta(10.0).unwrap();
        assert!((th - 5.347107530717468).abs() < 1e-12);
        let th2 = t.chebyshev_theta(2.0).unwrap();
        assert!((th2 - core::f64::consts::LN_2).abs() < 1e-15);
    }

    #[test]
    fn theta_pnt_consistency_at_1e6() {
        let t = PrimeTable::sieve(1_000_000).unwrap();
        let r = t.chebyshev_r(1_000_000.0).unwrap();
        assert!(r.abs() < 0.01, "R(1e6) = {r}");
    }

    #[test]
    fn mertens_asymptotic() {
        // Mertens constant computed independently of the asserted bound:
        // B1 = γ + Σ_p [ln(1 − 1/p) + 1/p], truncated at the sieve limit.
        let t = PrimeTable::sieve(100_000).unwrap();
        let mut b1 = crate::consts::euler_gamma();
        for &p in t.primes() {
            let pf = p as f64;
            b1 += math::ln(1.0 - 1.0 / pf) + 1.0 / pf;
        }
        assert!((b1 - 0.2615).abs() < 1e-3, "B1 = {b1}");
        let s = t.recip_sum(1.5, 100_000.0).unwrap();
        let predicted = math::ln(math::ln(100_000.0)) + b1;
        assert!((s - predicted).abs() < 0.05);
    }

    #[test]
    fn shared_tables_are_send_sync() {
        fn assert_shareable<T: Send + Sync>() {}
        assert_shareable::<PrimeTable>();
        assert_shareable::<crate::multfun::FunctionSpec>();
        assert_shareable::<crate::multfun::ValueTable>();
    }

    #[test]
    fn largest_prime_factor_chain() {
        let t = PrimeTable::sieve(1000).unwrap();
        assert_eq!(t.largest_prime_factor(1000), 5);
        assert_eq!(t.largest_prime_factor(997), 997);
        assert_eq!(t.largest_prime_factor(2 * 3 * 7 * 19), 19);
        assert!(t.is_friable(96, 3.0));
        assert!(!t.is_friable(97, 3.0));
    }
}
