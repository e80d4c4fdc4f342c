//! Certified evaluation of periodized sinc power sums.
//!
//! The central object is
//!
//! ```text
//! f_r(x) = sum over all integers m of h(x + m)^r,    h(x) = sinc(pi x)^2,
//! ```
//!
//! a 1-periodic function of `x` for any exponent `r >= 1`. Every evaluator
//! here returns a [`CertifiedValue`]: a computed value together with a bound
//! covering both the truncation of the infinite sum and the accumulated
//! floating-point rounding, so the true value is guaranteed to lie within
//! `value ± error_bound`.
//!
//! Alongside the full sum the module exposes the pairing
//! `s_m(x) = h(x + m) + h(x - (m + 1))`, its midpoint values
//! `y_m = s_m(1/2) = 8 / (pi^2 (2m + 1)^2)`, the closed-form midpoint series
//! for `f_r(1/2)`, and the two-pole kernel `Phi_D(u)` with its logarithmic
//! derivative, which carry the analytic facts the verification suites check.

use std::f64::consts::PI;

use thiserror::Error;

/// Default cap on the number of terms any single evaluation may sum.
///
/// The half-width needed for a truncation tolerance `tol` scales like
/// `tol^(-1/(2r - 1))`, which is punishing for exponents near 1; the cap
/// turns a runaway request into a reported error instead of a stall.
pub const DEFAULT_MAX_TERMS: u64 = 10_000_000;

/// Relative threshold below which `sinc` switches to its Taylor expansion.
///
/// For `|x| < 1e-4` the degree-2 truncation `1 - x^2/6` is accurate to about
/// `x^4/120 < 1e-18`, below one ulp of the result, while `sin(x)/x` would
/// lose nothing either; the guard exists for `x == 0` and keeps the branch
/// cheap and obviously correct near it.
const SINC_TAYLOR_THRESHOLD: f64 = 1e-4;

/// Errors reported by the evaluators in this module.
#[derive(Debug, Error, PartialEq)]
pub enum CoreError {
    /// Exponents below 1 break both the convexity arguments and the tail
    /// bound, which needs `2r - 1 > 1` to integrate the tail.
    #[error("exponent r must be at least 1, got {0}")]
    ExponentTooSmall(f64),
    /// Tolerances must be positive and finite.
    #[error("tolerance must be positive and finite, got {0}")]
    ToleranceInvalid(f64),
    /// The evaluation argument lies outside the fundamental domain `[0, 1]`.
    #[error("argument x must lie in [0, 1], got {0}")]
    ArgumentOutOfRange(f64),
    /// The truncation half-width is too short for the tail bound to apply.
    #[error("tail bound requires a half-width of at least 2 terms, got {0}")]
    TailTooShort(u64),
    /// No truncation within the term cap meets the requested tolerance.
    #[error(
        "tolerance {tol} is unachievable within {max_terms} terms for r = {r} \
         (best achievable bound ~{best:.3e})"
    )]
    ToleranceUnachievable {
        r: f64,
        tol: f64,
        max_terms: u64,
        best: f64,
    },
    /// Term cap must be at least 5 (half-width 2 on each side plus center).
    #[error("max_terms must be at least 5, got {0}")]
    MaxTermsTooSmall(u64),
    /// Invalid two-pole kernel point.
    #[error("Phi point requires |u| <= 1/2 and d >= 1/2, got u = {u}, d = {d}")]
    PhiPointInvalid { u: f64, d: f64 },
    /// The logarithmic-derivative bound is stated on the open interval
    /// `(0, 1/2)` with pole offset `d >= 3/2`.
    #[error("log-derivative requires u in (0, 1/2) and d >= 3/2, got u = {u}, d = {d}")]
    LogDerivOutOfDomain { u: f64, d: f64 },
}

/// A numerical result with a rigorous two-sided error bound.
///
/// The contract: the exact mathematical quantity lies in
/// `[value - error_bound, value + error_bound]`. The bound covers truncation
/// of the infinite sum and a conservative allowance for floating-point
/// rounding of the partial sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertifiedValue {
    /// Computed approximation.
    pub value: f64,
    /// Nonnegative, finite half-width of the certification interval.
    pub error_bound: f64,
}

impl CertifiedValue {
    /// True when two certified values are consistent with being equal,
    /// i.e. their certification intervals overlap after widening by `slack`.
    pub fn agrees_with(&self, other: &CertifiedValue, slack: f64) -> bool {
        (self.value - other.value).abs() <= self.error_bound + other.error_bound + slack
    }
}

/// Validated parameters for a certified evaluation of `f_r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalParams {
    r: f64,
    tol: f64,
    max_terms: u64,
}

impl EvalParams {
    /// Creates parameters for exponent `r >= 1` and truncation tolerance
    /// `tol > 0`, with the default term cap.
    pub fn new(r: f64, tol: f64) -> Result<Self, CoreError> {
        if !r.is_finite() || r < 1.0 {
            return Err(CoreError::ExponentTooSmall(r));
        }
        if !tol.is_finite() || tol <= 0.0 {
            return Err(CoreError::ToleranceInvalid(tol));
        }
        Ok(Self {
            r,
            tol,
            max_terms: DEFAULT_MAX_TERMS,
        })
    }

    /// Replaces the term cap. The cap bounds the total number of summed
    /// terms (`2N + 1` for half-width `N`).
    pub fn with_max_terms(mut self, max_terms: u64) -> Result<Self, CoreError> {
        if max_terms < 5 {
            return Err(CoreError::MaxTermsTooSmall(max_terms));
        }
        self.max_terms = max_terms;
        Ok(self)
    }

    /// Exponent `r`.
    pub fn r(&self) -> f64 {
        self.r
    }

    /// Truncation tolerance.
    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// Cap on the total number of summed terms.
    pub fn max_terms(&self) -> u64 {
        self.max_terms
    }
}

/// Normalized cardinal sine: `sinc(x) = sin(x) / x`, continuously extended
/// by `sinc(0) = 1`.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < SINC_TAYLOR_THRESHOLD {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// Squared sinc kernel `h(x) = sinc(pi x)^2 = (sin(pi x) / (pi x))^2`,
/// with `h(0) = 1` and `h(n) = 0` at nonzero integers.
///
/// The argument is reduced by its nearest integer before the sine is taken:
/// `sin(pi x) = ±sin(pi u)` for `u = x - round(x)`, and the subtraction is
/// exact in floating point, so `h` keeps full relative accuracy even for
/// arguments like `x = 50.3` where evaluating `sin(pi x)` directly would
/// lose digits to argument rounding.
pub fn h(x: f64) -> f64 {
    let u = x - x.round();
    if u == 0.0 {
        return if x == 0.0 { 1.0 } else { 0.0 };
    }
    // sin(pi x) / (pi x) = [sin(pi u) / (pi u)] * (u / x)
    let q = sinc(PI * u) * (u / x);
    q * q
}

/// Symmetric pair sum `s_m(x) = h(x + m) + h(x - (m + 1))` for `x` in
/// `[0, 1]`, in its explicit trigonometric form
/// `sin(pi x)^2 / pi^2 * (1/(m + x)^2 + 1/(m + 1 - x)^2)`.
///
/// For `m = 0` the explicit form has removable singularities at the
/// endpoints, so that case falls back to `h` directly.
///
/// # Panics
///
/// Panics if `x` is outside `[0, 1]`; the pairing is only meaningful on the
/// fundamental domain.
pub fn s_m(m: u32, x: f64) -> f64 {
    assert!(
        (0.0..=1.0).contains(&x),
        "s_m requires x in [0, 1], got {x}"
    );
    if m == 0 {
        return h(x) + h(x - 1.0);
    }
    let m = f64::from(m);
    // sin(pi x)^2 = sin(pi (x - round(x)))^2, and the reduced argument keeps
    // the sine fully accurate near x = 1 (exactly 0 at both endpoints).
    let s = (PI * (x - x.round())).sin();
    let a = s / (PI * (m + x));
    let b = s / (PI * (m + 1.0 - x));
    a * a + b * b
}

/// Midpoint value `y_m = s_m(1/2) = 8 / (pi^2 (2m + 1)^2)`.
pub fn y_half(m: u32) -> f64 {
    let odd = 2.0 * f64::from(m) + 1.0;
    8.0 / (PI * PI * odd * odd)
}

/// Rigorous bound on the truncation tail of `f_r`: discarding all terms
/// `h(x + m)^r` with `|m| > n` (for `x` in `[0, 1]`) loses at most
///
/// ```text
/// pi^(-2r) / (2r - 1) * (n^(1 - 2r) + (n - 1)^(1 - 2r)).
/// ```
///
/// Each discarded term satisfies `h(x + m)^r <= (pi (x + m))^(-2r)`, and the
/// two one-sided tails are compared with integrals of `t^(-2r)` starting at
/// `n` and `n - 1` (the left tail starts one unit closer because `x` can sit
/// at the right end of the fundamental domain). The bound is independent of
/// `x`, decreasing in `n`, and requires `n >= 2` so the integral comparison
/// has room on both sides.
pub fn tail_bound(n: u64, r: f64, x: f64) -> Result<f64, CoreError> {
    if !r.is_finite() || r < 1.0 {
        return Err(CoreError::ExponentTooSmall(r));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(CoreError::ArgumentOutOfRange(x));
    }
    if n < 2 {
        return Err(CoreError::TailTooShort(n));
    }
    Ok(one_sided_tail(n, r) + one_sided_tail(n - 1, r))
}

/// `pi^(-2r) * n^(1 - 2r) / (2r - 1)`: integral bound for one tail.
fn one_sided_tail(n: u64, r: f64) -> f64 {
    let two_r = 2.0 * r;
    PI.powf(-two_r) * (n as f64).powf(1.0 - two_r) / (two_r - 1.0)
}

/// Exponentiation strategy selected once per evaluation.
///
/// `powf` costs roughly an order of magnitude more than a multiply on
/// typical hardware; grid sweeps spend nearly all their time in this spot,
/// so integer and half-integer exponents take specialized paths.
#[derive(Debug, Clone, Copy)]
enum PowPath {
    /// `r = 1`: the term is used as-is.
    One,
    /// `r = 2`.
    Square,
    /// Integer `r` up to 64.
    Int(i32),
    /// Half-integer `r` (2r integral, up to 128); bases are nonnegative.
    HalfInt(i32),
    /// General real exponent.
    General(f64),
}

impl PowPath {
    fn for_exponent(r: f64) -> Self {
        let two_r = 2.0 * r;
        if r == 1.0 {
            PowPath::One
        } else if r == 2.0 {
            PowPath::Square
        } else if r.fract() == 0.0 && r <= 64.0 {
            PowPath::Int(r as i32)
        } else if two_r.fract() == 0.0 && two_r <= 128.0 {
            PowPath::HalfInt(two_r as i32)
        } else {
            PowPath::General(r)
        }
    }

    #[inline]
    fn apply(self, base: f64) -> f64 {
        match self {
            PowPath::One => base,
            PowPath::Square => base * base,
            PowPath::Int(k) => base.powi(k),
            PowPath::HalfInt(k) => base.sqrt().powi(k),
            PowPath::General(r) => base.powf(r),
        }
    }
}

/// Smallest half-width `n` within the term cap whose tail bound meets `tol`.
fn required_half_width(params: &EvalParams) -> Result<u64, CoreError> {
    let bound = |n: u64| one_sided_tail(n, params.r) + one_sided_tail(n - 1, params.r);
    // max_terms >= 5 guarantees room for half-width 2.
    let n_cap = (params.max_terms - 1) / 2;
    if bound(2) <= params.tol {
        return Ok(2);
    }
    if bound(n_cap) > params.tol {
        return Err(CoreError::ToleranceUnachievable {
            r: params.r,
            tol: params.tol,
            max_terms: params.max_terms,
            best: bound(n_cap),
        });
    }
    // Invariant: bound(lo) > tol >= bound(hi); the bound is decreasing in n.
    let (mut lo, mut hi) = (2u64, n_cap);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if bound(mid) <= params.tol {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Certified evaluation of `f_r(x) = sum_m h(x + m)^r` for `x` in `[0, 1]`.
///
/// The truncation half-width is chosen as the smallest `n` whose
/// [`tail_bound`] meets `params.tol()`, so the reported `error_bound` is at
/// most `tol` plus a rounding allowance of `4 * eps` per summed term.
/// Summation runs from the far (smallest) terms inward to keep rounding on
/// the small terms from being swamped.
///
/// `sin(pi x)` is hoisted out of the term loop: every term is
/// `(sin(pi x) / (pi (x + m)))^(2r)` up to sign, so each term costs one
/// divide, one multiply and one exponentiation.
pub fn f_r_certified(x: f64, params: &EvalParams) -> Result<CertifiedValue, CoreError> {
    if !(0.0..=1.0).contains(&x) {
        return Err(CoreError::ArgumentOutOfRange(x));
    }
    let n = required_half_width(params)?;
    let tail = tail_bound(n, params.r, x)?;
    let pow = PowPath::for_exponent(params.r);

    // Every term is (c / t)^2 raised to r, for c = sin(pi x) / pi up to
    // sign; the reduced argument keeps c fully accurate near x = 1 and makes
    // it exactly 0 at the endpoints, where the t == 0 term alone carries the
    // value h = 1.
    let c = (PI * (x - x.round())).sin() / PI;
    let term = |t: f64| -> f64 {
        if t == 0.0 {
            return 1.0; // h at an exact integer offset of x = 0 or x = 1
        }
        let q = c / t;
        pow.apply(q * q)
    };

    let mut sum = 0.0;
    for m in (1..=n).rev() {
        let m = m as f64;
        sum += term(x + m) + term(x - m);
    }
    sum += term(x);

    let n_terms = 2 * n + 1;
    let rounding = (n_terms as f64) * 4.0 * f64::EPSILON * sum.abs();
    Ok(CertifiedValue {
        value: sum,
        error_bound: tail + rounding,
    })
}

/// Certified evaluation of the midpoint value through its closed-form
/// series: `f_r(1/2) = 2^(1 - r) * sum_{m >= 0} y_m^r` with
/// `y_m = 8 / (pi^2 (2m + 1)^2)`.
///
/// The terms are `(8 / pi^2)^r (2m + 1)^(-2r)`; truncating after `m = M`
/// loses at most `(8 / pi^2)^r (2M + 1)^(1 - 2r) / (2 (2r - 1))` by integral
/// comparison. This is an independent route to `f_r(1/2)` — it never calls
/// the periodized evaluator — so the two can cross-check each other.
pub fn f_half_closed(r: f64, tol: f64) -> Result<CertifiedValue, CoreError> {
    if !r.is_finite() || r < 1.0 {
        return Err(CoreError::ExponentTooSmall(r));
    }
    if !tol.is_finite() || tol <= 0.0 {
        return Err(CoreError::ToleranceInvalid(tol));
    }
    let scale = (1.0 - r).exp2();
    let a = (8.0 / (PI * PI)).powf(r);
    let tail_after = |m_last: u64| -> f64 {
        scale * a * (2.0 * m_last as f64 + 1.0).powf(1.0 - 2.0 * r) / (2.0 * (2.0 * r - 1.0))
    };

    // Smallest M with tail <= tol, by bisection on the decreasing bound.
    let m_cap = 1_000_000_000u64;
    if tail_after(m_cap) > tol {
        return Err(CoreError::ToleranceUnachievable {
            r,
            tol,
            max_terms: m_cap,
            best: tail_after(m_cap),
        });
    }
    let m_last = if tail_after(1) <= tol {
        1
    } else {
        let (mut lo, mut hi) = (1u64, m_cap);
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if tail_after(mid) <= tol {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    };

    let pow = PowPath::for_exponent(r);
    let inv_pi2 = 8.0 / (PI * PI);
    let mut sum = 0.0;
    for m in (0..=m_last).rev() {
        let odd = 2.0 * m as f64 + 1.0;
        sum += pow.apply(inv_pi2 / (odd * odd));
    }
    let value = scale * sum;
    let rounding = (m_last as f64 + 2.0) * 4.0 * f64::EPSILON * value.abs();
    Ok(CertifiedValue {
        value,
        error_bound: tail_after(m_last) + rounding,
    })
}

/// A point in the domain of the two-pole kernel: offset `u` with
/// `|u| <= 1/2` and pole distance `d >= 1/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiPoint {
    u: f64,
    d: f64,
}

impl PhiPoint {
    /// Validates `|u| <= 1/2` and `d >= 1/2`.
    pub fn new(u: f64, d: f64) -> Result<Self, CoreError> {
        if u.is_nan() || u.abs() > 0.5 || !d.is_finite() || d < 0.5 {
            return Err(CoreError::PhiPointInvalid { u, d });
        }
        Ok(Self { u, d })
    }

    /// Point with pole distance `d = m + 1/2`, matching the pair sum `s_m`
    /// recentred at the midpoint: `pi^2 * s_m(u + 1/2) = Phi_{m + 1/2}(u)`.
    pub fn for_pair(m: u32, u: f64) -> Result<Self, CoreError> {
        Self::new(u, f64::from(m) + 0.5)
    }

    /// Offset from the center.
    pub fn u(&self) -> f64 {
        self.u
    }

    /// Distance from the center to each pole.
    pub fn d(&self) -> f64 {
        self.d
    }
}

/// Two-pole kernel `Phi_d(u) = cos(pi u)^2 * (1/(d + u)^2 + 1/(d - u)^2)`.
///
/// `cos(pi u)` is computed as `sin(pi (1/2 - |u|))` so the argument of the
/// sine is small where the cosine is small, preserving relative accuracy
/// near `|u| = 1/2`. At `u = ±1/2` with `d = 1/2` one pole meets the cosine
/// zero; the removable limit there is `pi^2`.
pub fn phi(p: PhiPoint) -> f64 {
    let c = (PI * (0.5 - p.u.abs())).sin();
    if c == 0.0 {
        // Exactly u = ±1/2. The regular pole contributes 0; the coincident
        // pole (d = 1/2) contributes the limit value pi^2.
        return if p.d == 0.5 { PI * PI } else { 0.0 };
    }
    let a = c / (p.d + p.u);
    let b = c / (p.d - p.u);
    a * a + b * b
}

/// Logarithmic derivative of the two-pole kernel,
///
/// ```text
/// (log Phi_d)'(u) = -2 pi tan(pi u) + 2u / (d^2 + u^2) + 4u / (d^2 - u^2),
/// ```
///
/// valid for `u` in `(0, 1/2)` and `d >= 3/2`. On that domain it is bounded
/// above by `u * (3 - 2 pi^2) < 0`: the tangent term alone is below
/// `-2 pi^2 u`, while the two rational terms together contribute at most
/// `3u` once `d >= 3/2`. The strictly negative bound is what makes the
/// kernel strictly decreasing away from the center.
pub fn phi_log_deriv(p: PhiPoint) -> Result<f64, CoreError> {
    // PhiPoint construction already excludes NaN, so plain comparisons
    // carve out the open interval safely.
    if p.u <= 0.0 || p.u >= 0.5 || p.d < 1.5 {
        return Err(CoreError::LogDerivOutOfDomain { u: p.u, d: p.d });
    }
    let (u, d) = (p.u, p.d);
    let tan_term = -2.0 * PI * (PI * u).tan();
    Ok(tan_term + 2.0 * u / (d * d + u * u) + 4.0 * u / (d * d - u * u))
}

/// Upper bound `u * (3 - 2 pi^2)` for the logarithmic derivative on
/// `u` in `(0, 1/2)`, `d >= 3/2`.
pub fn log_deriv_upper_bound(u: f64) -> f64 {
    u * (3.0 - 2.0 * PI * PI)
}
