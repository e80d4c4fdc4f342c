//! Constructive dominance for one-crossing vector pairs.
//!
//! Two nonnegative vectors `x` and `y` of equal length form a *one-crossing
//! pair* at threshold `t >= 0` when they have equal sums and `y` crosses `x`
//! once in value: `x_k <= y_k` wherever `y_k < t` (the low side) and
//! `x_k >= y_k` wherever `y_k >= t` (the high side). For such a pair,
//! `sum g(x_k) >= sum g(y_k)` for every convex nondecreasing `g` — mass in
//! `x` has only been moved from low values to high values, which convexity
//! rewards.
//!
//! The inequality is established *constructively*: [`transfer_sequence`]
//! produces at most `n - 1` single transfers, each moving `delta > 0` from a
//! low-side coordinate down toward its target and a high-side coordinate up
//! toward its target, morphing `y` into `x` while `sum g` never decreases.
//! [`dominance_verify`] replays the construction and checks that
//! monotonicity step by step for `g(v) = v^r`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Tolerance on the equal-sums hypothesis, relative to `max(1, sum)`.
pub const SUM_TOLERANCE: f64 = 1e-12;

/// Tolerance on the pointwise crossing hypothesis, relative to
/// `max(1, |y_k|)`; admits pairs assembled from rounded evaluations.
pub const HYPOTHESIS_TOLERANCE: f64 = 1e-12;

/// After the transfer completes, every coordinate must sit within this
/// tolerance of its target (relative to `max(1, |target|)`); a larger
/// leftover residue indicates floating-point drift. The bound matches the
/// slack admitted on the input hypotheses — an instance whose sums disagree
/// by `1e-12` necessarily strands that much mass somewhere.
pub const PIN_TOLERANCE: f64 = 1e-12;

/// Slack allowed in the final dominance comparison and in the per-step
/// monotonicity of `sum g`, relative to `max(1, sum g)`.
pub const DOMINANCE_TOLERANCE: f64 = 1e-10;

/// Errors from constructing or processing one-crossing instances.
#[derive(Debug, Error, PartialEq)]
pub enum DominanceError {
    /// The two vectors have different lengths.
    #[error("vectors must have equal length, got {x_len} and {y_len}")]
    LengthMismatch { x_len: usize, y_len: usize },
    /// Entries must be nonnegative (and finite).
    #[error("entries must be nonnegative and finite, found {value} at index {index}")]
    NegativeEntry { index: usize, value: f64 },
    /// The threshold must be nonnegative and finite.
    #[error("threshold must be nonnegative and finite, got {0}")]
    ThresholdInvalid(f64),
    /// The pair fails a one-crossing hypothesis.
    #[error("one-crossing hypothesis fails: {0}")]
    Hypothesis(CrossingViolation),
    /// Exponent for `v^r` must satisfy `r >= 1` so the power is convex
    /// and nondecreasing on the nonnegative axis.
    #[error("dominance exponent must be at least 1, got {0}")]
    ExponentTooSmall(f64),
    /// Instances need at least two coordinates to have two sides.
    #[error("instance needs at least 2 coordinates, got {0}")]
    TooShort(usize),
    /// After the transfer completed, some coordinate was left farther from
    /// its target than the admitted sum slack explains — floating-point
    /// drift has broken the equal-sums bookkeeping.
    #[error("transfer drift: residual {residual:.3e} left at index {index} after completion")]
    Drift { index: usize, residual: f64 },
}

/// The first way in which a vector pair fails the one-crossing hypotheses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CrossingViolation {
    /// The sums differ by more than [`SUM_TOLERANCE`].
    SumMismatch { sum_x: f64, sum_y: f64 },
    /// A low-side coordinate (`y_k < t`) has `x_k > y_k`.
    LowSide { index: usize, x_k: f64, y_k: f64 },
    /// A high-side coordinate (`y_k >= t`) has `x_k < y_k`.
    HighSide { index: usize, x_k: f64, y_k: f64 },
}

impl std::fmt::Display for CrossingViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CrossingViolation::SumMismatch { sum_x, sum_y } => {
                write!(f, "sums differ: sum x = {sum_x:.17e}, sum y = {sum_y:.17e}")
            }
            CrossingViolation::LowSide { index, x_k, y_k } => write!(
                f,
                "low side violated at index {index}: x = {x_k:.17e} > y = {y_k:.17e}"
            ),
            CrossingViolation::HighSide { index, x_k, y_k } => write!(
                f,
                "high side violated at index {index}: x = {x_k:.17e} < y = {y_k:.17e}"
            ),
        }
    }
}

/// A validated one-crossing pair `(x, y)` with threshold `t`.
///
/// Construction enforces the hypotheses, so every `CrossingInstance` in
/// circulation admits a transfer sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossingInstance {
    x: Vec<f64>,
    y: Vec<f64>,
    t: f64,
}

impl CrossingInstance {
    /// Validates shapes, signs, and both one-crossing hypotheses.
    pub fn new(x: Vec<f64>, y: Vec<f64>, t: f64) -> Result<Self, DominanceError> {
        match check_one_crossing(&x, &y, t)? {
            None => Ok(Self { x, y, t }),
            Some(v) => Err(DominanceError::Hypothesis(v)),
        }
    }

    /// Target vector (the majorizing side).
    pub fn x(&self) -> &[f64] {
        &self.x
    }

    /// Start vector (the majorized side).
    pub fn y(&self) -> &[f64] {
        &self.y
    }

    /// Crossing threshold.
    pub fn t(&self) -> f64 {
        self.t
    }

    /// Number of coordinates.
    pub fn len(&self) -> usize {
        self.y.len()
    }

    /// True when the instance has no coordinates. Cannot occur for
    /// instances built by [`CrossingInstance::new`] via [`random_instance`],
    /// but the conventional accessor pair is provided.
    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }
}

/// Checks the one-crossing hypotheses for `(x, y)` at threshold `t`.
///
/// Returns `Ok(None)` when both hold within tolerance, or `Ok(Some(v))`
/// describing the first violation: the sum check first, then the pointwise
/// checks in index order. Malformed input (length mismatch, negative or
/// non-finite entries, bad threshold) is an error, not a violation.
pub fn check_one_crossing(
    x: &[f64],
    y: &[f64],
    t: f64,
) -> Result<Option<CrossingViolation>, DominanceError> {
    if x.len() != y.len() {
        return Err(DominanceError::LengthMismatch {
            x_len: x.len(),
            y_len: y.len(),
        });
    }
    if x.len() < 2 {
        return Err(DominanceError::TooShort(x.len()));
    }
    if !t.is_finite() || t < 0.0 {
        return Err(DominanceError::ThresholdInvalid(t));
    }
    for (index, &value) in x.iter().chain(y.iter()).enumerate() {
        if !value.is_finite() || value < 0.0 {
            return Err(DominanceError::NegativeEntry {
                index: index % x.len(),
                value,
            });
        }
    }

    let sum_x: f64 = x.iter().sum();
    let sum_y: f64 = y.iter().sum();
    if (sum_x - sum_y).abs() > SUM_TOLERANCE * sum_y.abs().max(1.0) {
        return Ok(Some(CrossingViolation::SumMismatch { sum_x, sum_y }));
    }

    for (k, (&x_k, &y_k)) in x.iter().zip(y).enumerate() {
        let slack = HYPOTHESIS_TOLERANCE * y_k.abs().max(1.0);
        if y_k < t {
            if x_k > y_k + slack {
                return Ok(Some(CrossingViolation::LowSide { index: k, x_k, y_k }));
            }
        } else if x_k < y_k - slack {
            return Ok(Some(CrossingViolation::HighSide { index: k, x_k, y_k }));
        }
    }
    Ok(None)
}

/// One elementary mass transfer: move `delta` from coordinate `from`
/// (low side, currently above its target) to coordinate `to` (high side,
/// currently below its target).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferStep {
    /// Donating coordinate, in the low set `{k : y_k < t}`.
    pub from: usize,
    /// Receiving coordinate, in the high set `{k : y_k >= t}`.
    pub to: usize,
    /// Transferred mass, strictly positive.
    pub delta: f64,
}

/// Runs the transfer construction, invoking `visit` with each step and the
/// state vector immediately after it. Returns the number of steps.
///
/// At each step the smallest-index unpinned donor and receiver are paired
/// and `delta = min(z_from - x_from, x_to - z_to)` is moved; whichever side
/// attains its target is *assigned* the target exactly, so every step pins
/// at least one coordinate permanently and the loop takes at most `n - 1`
/// steps (it needs an unpinned coordinate on each side to continue).
///
/// A coordinate stays active while it differs from its target at all, so
/// arbitrarily small surpluses still get traded. Once one side exhausts,
/// whatever residue remains is audited against [`PIN_TOLERANCE`]: residue
/// up to the slack admitted on the input sums is the expected leftover of
/// an imbalanced instance, anything beyond that is reported as drift.
fn simulate<F>(inst: &CrossingInstance, mut visit: F) -> Result<usize, DominanceError>
where
    F: FnMut(&TransferStep, &[f64]),
{
    let (x, y, t) = (inst.x(), inst.y(), inst.t());
    let mut z = y.to_vec();
    let mut steps = 0usize;
    loop {
        let donor = (0..z.len()).find(|&k| y[k] < t && z[k] > x[k]);
        let receiver = (0..z.len()).find(|&k| y[k] >= t && z[k] < x[k]);
        let (Some(i), Some(j)) = (donor, receiver) else {
            break;
        };
        let give = z[i] - x[i];
        let take = x[j] - z[j];
        let delta = give.min(take);
        // Assign the exhausted side its target exactly; adjust the other
        // side by delta. Exact assignment is what guarantees pinning (and
        // thus termination) despite rounding: a pinned coordinate compares
        // equal to its target and is never selected again, while the
        // adjusted side can overshoot by at most one ulp, which likewise
        // deactivates it.
        if give <= take {
            z[i] = x[i];
            z[j] += delta;
        } else {
            z[j] = x[j];
            z[i] -= delta;
        }
        steps += 1;
        visit(
            &TransferStep {
                from: i,
                to: j,
                delta,
            },
            &z,
        );
    }
    for (k, (&z_k, &x_k)) in z.iter().zip(x).enumerate() {
        let residual = (z_k - x_k).abs();
        if residual > PIN_TOLERANCE * x_k.abs().max(1.0) {
            return Err(DominanceError::Drift { index: k, residual });
        }
    }
    Ok(steps)
}

/// Constructs the explicit transfer sequence morphing `y` into `x`.
///
/// The sequence has at most `n - 1` steps, each with `delta > 0`, moving
/// mass only from the low side to the high side. Along the way every state
/// `z` stays sandwiched: `x_k <= z_k <= y_k` on the low side and
/// `y_k <= z_k <= x_k` on the high side.
pub fn transfer_sequence(inst: &CrossingInstance) -> Result<Vec<TransferStep>, DominanceError> {
    let mut steps = Vec::new();
    simulate(inst, |step, _| steps.push(*step))?;
    Ok(steps)
}

/// Transfer sequence together with the intermediate states: `states[k]` is
/// the vector after `steps[k]` has been applied (starting from `y`).
#[derive(Debug, Clone, PartialEq)]
pub struct TransferTrace {
    pub steps: Vec<TransferStep>,
    pub states: Vec<Vec<f64>>,
}

/// Like [`transfer_sequence`], but also records the state after each step.
pub fn transfer_trace(inst: &CrossingInstance) -> Result<TransferTrace, DominanceError> {
    let mut steps = Vec::new();
    let mut states = Vec::new();
    simulate(inst, |step, z| {
        steps.push(*step);
        states.push(z.to_vec());
    })?;
    Ok(TransferTrace { steps, states })
}

/// Outcome of a constructive dominance check for `g(v) = v^r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DominanceOutcome {
    /// True when the final comparison holds and `sum g` was nondecreasing
    /// at every intermediate step, all within [`DOMINANCE_TOLERANCE`].
    pub passed: bool,
    /// Raw margin `sum x_k^r - sum y_k^r` (nonnegative when dominance
    /// holds exactly).
    pub margin: f64,
    /// Number of elementary transfers used.
    pub steps: usize,
}

/// Verifies `sum x_k^r >= sum y_k^r` constructively: runs the transfer
/// sequence and checks that `sum z_k^r` never decreases along it.
///
/// This is stronger than comparing the two endpoint sums — it confirms the
/// mechanism (every single transfer helps), not just the aggregate.
pub fn dominance_verify(
    inst: &CrossingInstance,
    r: f64,
) -> Result<DominanceOutcome, DominanceError> {
    if !r.is_finite() || r < 1.0 {
        return Err(DominanceError::ExponentTooSmall(r));
    }
    let sum_pow = |v: &[f64]| -> f64 { v.iter().map(|&u| u.powf(r)).sum() };
    let start = sum_pow(inst.y());
    let goal = sum_pow(inst.x());

    let mut prev = start;
    let mut monotone = true;
    let steps = simulate(inst, |_, z| {
        let now = sum_pow(z);
        if now < prev - DOMINANCE_TOLERANCE * prev.abs().max(1.0) {
            monotone = false;
        }
        prev = now;
    })?;

    let margin = goal - start;
    let passed = monotone && margin >= -DOMINANCE_TOLERANCE * start.abs().max(1.0);
    Ok(DominanceOutcome {
        passed,
        margin,
        steps,
    })
}

/// Generates a pseudorandom valid one-crossing instance, deterministically
/// from `seed`.
///
/// The start vector `y` is uniform in `[0, 1)^n`; a threshold is placed
/// between two adjacent distinct values of `y`; low-side coordinates give up
/// a random fraction of their mass, which is distributed over the high side
/// with the last receiver absorbing the exact residual so the sums match to
/// rounding.
pub fn random_instance(n: usize, seed: u64) -> Result<CrossingInstance, DominanceError> {
    if n < 2 {
        return Err(DominanceError::TooShort(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let y: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.0)).collect();

    let mut sorted = y.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite entries"));
    sorted.dedup();
    // With fewer than two distinct values (probability ~0 for the RNG, but
    // cheap to handle) every coordinate is "high" and x = y works trivially.
    let t = if sorted.len() < 2 {
        sorted[0]
    } else {
        let cut = rng.gen_range(1..sorted.len());
        0.5 * (sorted[cut - 1] + sorted[cut])
    };

    let mut x = y.clone();
    let mut removed = 0.0;
    for k in 0..n {
        if y[k] < t {
            let keep: f64 = rng.gen_range(0.0..1.0);
            x[k] = y[k] * keep;
            removed += y[k] - x[k];
        }
    }
    let high: Vec<usize> = (0..n).filter(|&k| y[k] >= t).collect();
    // The threshold sits between two attained values, so both sides are
    // nonempty whenever there are two distinct values.
    let weights: Vec<f64> = high.iter().map(|_| rng.gen_range(0.5..1.5)).collect();
    let total_weight: f64 = weights.iter().sum();
    let mut distributed = 0.0;
    for (pos, &k) in high.iter().enumerate() {
        if pos + 1 == high.len() {
            // Last receiver absorbs the exact residual, keeping the sums
            // equal up to a final rounding error.
            x[k] += removed - distributed;
        } else {
            let share = removed * weights[pos] / total_weight;
            x[k] += share;
            distributed += share;
        }
    }

    CrossingInstance::new(x, y, t)
}
