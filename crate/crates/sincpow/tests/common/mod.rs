//! Naive reference implementations used as independent oracles.
//!
//! Everything here favors obviousness over speed and shares no code with
//! the library paths under test: direct summation, generous term counts,
//! no range reduction, no exponent dispatch.
#![allow(dead_code)] // each integration test target uses a subset

use std::f64::consts::PI;

/// `sinc^2(pi x)` computed the obvious way.
pub fn h_naive(x: f64) -> f64 {
    if x == 0.0 {
        return 1.0;
    }
    let s = (PI * x).sin() / (PI * x);
    s * s
}

/// `f_r(x)` by direct summation of `h(x + m)^r` over `m` in
/// `[-terms, terms]`, smallest terms first to limit rounding loss.
pub fn f_r_brute(x: f64, r: f64, terms: u64) -> f64 {
    let mut sum = 0.0;
    for m in (1..=terms).rev() {
        let m = m as f64;
        sum += h_naive(x + m).powf(r) + h_naive(x - m).powf(r);
    }
    sum + h_naive(x).powf(r)
}

/// Two-sided truncation tail `sum over |m| >= n of h(x + m)^r` for `x` in
/// `[0, 1]`, summed outward over at most `terms` further offsets.
///
/// Terms decrease monotonically in `m`, so once an addition falls below the
/// running sum by eighteen orders of magnitude the remainder cannot affect
/// any comparison made at oracle precision.
pub fn tail_brute(n: u64, r: f64, x: f64, terms: u64) -> f64 {
    let mut sum = 0.0;
    for m in n..n + terms {
        let m = m as f64;
        let t = h_naive(x + m).powf(r) + h_naive(x - m).powf(r);
        sum += t;
        if t < sum * 1e-18 {
            break;
        }
    }
    sum
}
