//! Certified evaluation of periodized sinc power sums, constructive
//! convex-dominance checking for one-crossing vector pairs, and grid-based
//! verification suites.
//!
//! The library studies the 1-periodic functions
//!
//! ```text
//! f_r(x) = sum over integers m of h(x + m)^r,    h(x) = (sin(pi x) / (pi x))^2,
//! ```
//!
//! for exponents `r >= 1`. Three facts organize everything here:
//!
//! * `f_1` is identically 1 (the translates of `h` form a partition of
//!   unity), which [`core_math`] verifies through certified evaluation and
//!   which lets tail masses be computed exactly as `1 - partial sum`;
//! * `f_r` attains its global minimum at the midpoint `x = 1/2`, with the
//!   closed-form minimum value `f_r(1/2) = 2^(1-r) sum_m y_m^r` for
//!   `y_m = 8 / (pi^2 (2m + 1)^2)`;
//! * the minimum claim reduces to a finite, checkable mechanism: pair sums
//!   `s_m(x)` cross their midpoint values `(y_m)` exactly once, and
//!   [`dominance`] certifies `sum g(x_k) >= sum g(y_k)` for convex
//!   nondecreasing `g` by an explicit sequence of mass transfers.
//!
//! [`verify`] wires these into grid suites with machine-readable reports;
//! every numerical claim carries an explicit error bound or tolerance.

#![forbid(unsafe_code)]

pub mod core_math;
pub mod dominance;
pub mod verify;

pub use core_math::{CertifiedValue, CoreError, EvalParams};
pub use dominance::{CrossingInstance, DominanceError, DominanceOutcome, TransferStep};
pub use verify::{GridSpec, SuiteLevel, TruncatedPair, VerificationReport, VerifyError};
