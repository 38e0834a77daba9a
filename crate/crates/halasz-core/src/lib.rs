//! Numerical engines for logarithmic and Cesàro means of 1-bounded
//! completely multiplicative functions.
//!
//! The crate is organized around a small set of primitives:
//!
//! * [`sieve`] — segmented smallest-prime-factor sieve and prime-indexed sums,
//! * [`multfun`] — declarative function specs (`λ`, `χ₄`, sign constructions,
//!   Rademacher samples, custom tables) and their bulk evaluation,
//! * [`sums`] — partial sums `L_f`, `M_f` and the floor identity for
//!   `M_g` with `g = 1∗f`, the shifted discrepancy `Δ`, friable restrictions,
//! * [`series`] — one-pass streaming evaluation of checkpoint series,
//! * [`functionals`] — pretentious distances and the Euler-product error
//!   functionals `M(x;T)`, `H₁`, `H₂`, `H₂′`,
//! * [`zeta`] — Euler–Maclaurin ζ evaluation near `Re(s) = 1` and the
//!   truncated-product oscillation main term,
//! * [`random`] — Monte Carlo experiments on random ±1 multiplicative
//!   functions with an exact small-x oracle,
//! * [`search`] — minimization of `L_f(x)` over sign patterns and over
//!   `[-1,1]`-valued prime assignments.
//!
//! The crate is `no_std` (with `alloc`); all floating-point transcendentals
//! go through `libm` so results are identical across targets. Everything is
//! immutable after construction and safe to share across threads.

#![cfg_attr(not(test), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

pub mod consts;
pub mod error;
pub mod functionals;
pub mod math;
pub mod multfun;
pub mod random;
pub mod search;
pub mod series;
pub mod sieve;
pub mod sums;
pub mod zeta;

pub use error::{Error, Result};
pub use multfun::{FunctionSpec, ValueTable};
pub use sieve::PrimeTable;
pub use num_complex::Complex64;
