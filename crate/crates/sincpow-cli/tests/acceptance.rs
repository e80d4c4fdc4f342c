//! Acceptance suite: one test per acceptance criterion, each printing a
//! single pass/fail line.
//!
//! These tests intentionally re-derive their oracles with naive brute-force
//! summation where a numeric claim is involved, so a bug in the library's
//! clever paths cannot hide behind itself.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sincpow::core_math::{f_half_closed, f_r_certified, tail_bound, EvalParams};
use sincpow::dominance::{dominance_verify, random_instance, transfer_sequence};
use sincpow::verify::{
    build_truncated_pair, find_min, grid_eval_tolerance, n_zero, verify_log_deriv_bound,
    verify_parseval, verify_proposition, verify_s0_min, verify_sm_max_range, GridSpec,
};
use sincpow_cli::figure::{figure_table, FigureSpec};
use std::f64::consts::PI;

#[test]
fn criterion_1_parseval_identity_on_dense_grid() {
    let grid = GridSpec::unit(100_000).unwrap();
    let report = verify_parseval(&grid, 1e-10).unwrap();
    assert!(report.passed, "criterion 1 FAIL: {report}");
    println!("criterion 1 PASS: {report}");
}

#[test]
fn criterion_2_closed_form_cross_check() {
    for &r in &[1.0, 1.5, 2.0, 5.0, 10.0, 158.6] {
        let tol = grid_eval_tolerance(r);
        let closed = f_half_closed(r, tol).unwrap();
        let periodized = f_r_certified(0.5, &EvalParams::new(r, tol).unwrap()).unwrap();
        assert!(
            closed.agrees_with(&periodized, 1e-12),
            "criterion 2 FAIL: r = {r}: closed {closed:?} vs periodized {periodized:?}"
        );
    }

    let brute = f_r_brute(0.5, 2.0, 1_000_000);
    assert!(
        (brute - 1.0 / 3.0).abs() <= 1e-10,
        "criterion 2 FAIL: brute-force f_2(1/2) = {brute}"
    );
    let closed = f_half_closed(2.0, 1e-12).unwrap();
    assert!(
        (closed.value - 1.0 / 3.0).abs() <= closed.error_bound + 1e-12,
        "criterion 2 FAIL: closed-form f_2(1/2) = {closed:?}"
    );
    println!(
        "criterion 2 PASS: closed form and periodized sum agree at the midpoint \
         for six exponents; f_2(1/2) = {:.12} vs 1/3",
        closed.value
    );
}

#[test]
fn criterion_3_global_minimum_at_midpoint() {
    let grid = GridSpec::unit(100_000).unwrap();
    let mut worst = f64::INFINITY;
    for &r in &[1.02, 1.5, 2.0, 5.0, 20.0, 158.6] {
        let report = verify_proposition(r, &grid, 1e-8).unwrap();
        assert!(report.passed, "criterion 3 FAIL: {report}");
        worst = worst.min(report.worst_margin);

        let argmin = find_min(r, 1e-8).unwrap();
        assert!(
            (argmin - 0.5).abs() <= 1e-6,
            "criterion 3 FAIL: find_min({r}) = {argmin}"
        );
    }
    println!(
        "criterion 3 PASS: grid minimum at 1/2 for six exponents \
         (worst margin {worst:.3e}); find_min within 1e-6 of 1/2"
    );
}

#[test]
fn criterion_4_pair_sum_extremes() {
    let grid = GridSpec::unit(10_000).unwrap();
    let s0 = verify_s0_min(&grid).unwrap();
    assert!(s0.passed, "criterion 4 FAIL: {s0}");
    let sm = verify_sm_max_range(50, &grid).unwrap();
    assert!(sm.passed, "criterion 4 FAIL: {sm}");
    println!("criterion 4 PASS: {s0}; {sm}");
}

#[test]
fn criterion_5_log_derivative_bound() {
    let grid = GridSpec::new(49, 0.01, 0.49).unwrap();
    let report = verify_log_deriv_bound(100, &grid).unwrap();
    assert!(report.passed, "criterion 5 FAIL: {report}");
    println!("criterion 5 PASS: {report} (finite differences agree to 1e-6)");
}

#[test]
fn criterion_6_dominance_property_suite() {
    let mut checked = 0u64;
    for seed in 0..1000u64 {
        let n = 2 + (seed as usize) % 23;
        let inst = random_instance(n, seed).unwrap();
        let steps = transfer_sequence(&inst).unwrap();
        assert!(
            steps.len() < n,
            "criterion 6 FAIL: seed {seed}: {} steps exceed n - 1 for n = {n}",
            steps.len()
        );
        for &r in &[1.0, 1.5, 2.0, 4.0, 8.0] {
            let out = dominance_verify(&inst, r).unwrap();
            assert!(
                out.passed,
                "criterion 6 FAIL: seed {seed}, r = {r}: {out:?}"
            );
            checked += 1;
        }
    }
    println!("criterion 6 PASS: {checked} instance/exponent dominance checks");
}

#[test]
fn criterion_7_proof_pipeline_end_to_end() {
    let n = n_zero() + 10;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..100 {
        let x: f64 = rng.gen_range(0.0..=1.0);
        let pair = build_truncated_pair(x, n).unwrap();
        let inst = pair
            .crossing_instance()
            .unwrap_or_else(|e| panic!("criterion 7 FAIL: x = {x}: {e}"));
        for &r in &[1.5, 2.0, 5.0] {
            let out = dominance_verify(&inst, r).unwrap();
            assert!(out.passed, "criterion 7 FAIL: x = {x}, r = {r}: {out:?}");
        }
    }
    println!("criterion 7 PASS: truncated pairs (N = {n}) pass the one-crossing check and the finite dominance inequality at 100 random points");
}

#[test]
fn criterion_8_figure_family_structure() {
    let table = figure_table(&FigureSpec::default(), None).unwrap();
    let n = table.xs.len();
    assert_eq!(n, 1001, "criterion 8 FAIL: wrong grid size");
    assert_eq!(table.values.len(), 9, "criterion 8 FAIL: wrong curve count");

    for (c, (vals, errs)) in table.values.iter().zip(&table.errors).enumerate() {
        let k = table.k_values[c];
        // Endpoints are exactly 1 within certification.
        for &i in &[0, n - 1] {
            assert!(
                (vals[i] - 1.0).abs() <= errs[i],
                "criterion 8 FAIL: k = {k}: endpoint value {} at x = {}",
                vals[i],
                table.xs[i]
            );
        }
        for i in 0..n {
            // All values in (0, 1]: the truncated sum underestimates, so
            // only rounding can push a value past 1.
            assert!(
                vals[i] > 0.0 && vals[i] <= 1.0 + 1e-12,
                "criterion 8 FAIL: k = {k}: value {} outside (0, 1]",
                vals[i]
            );
            // Symmetry about x = 1/2.
            let j = n - 1 - i;
            assert!(
                (vals[i] - vals[j]).abs() <= errs[i] + errs[j] + 1e-12,
                "criterion 8 FAIL: k = {k}: asymmetry at x = {}",
                table.xs[i]
            );
        }
    }
    // Pointwise decreasing in k off the endpoints, within combined bounds.
    for c in 0..8 {
        for i in 1..n - 1 {
            let gap = table.values[c][i] - table.values[c + 1][i];
            assert!(
                gap >= -(table.errors[c][i] + table.errors[c + 1][i]),
                "criterion 8 FAIL: curves k = {} and k = {} cross at x = {}",
                table.k_values[c],
                table.k_values[c + 1],
                table.xs[i]
            );
        }
    }
    // Spot value: the k = 2 curve at x = 1/2 against the closed form.
    let r = 1.02f64.powi(2);
    let closed = f_half_closed(r, grid_eval_tolerance(r)).unwrap();
    let mid = n / 2;
    assert!(
        (table.values[1][mid] - closed.value).abs()
            <= table.errors[1][mid] + closed.error_bound + 1e-12,
        "criterion 8 FAIL: midpoint of k = 2 curve {} vs closed form {closed:?}",
        table.values[1][mid]
    );
    println!("criterion 8 PASS: 9 curves x 1001 points, symmetric, ordered in k, endpoints 1");
}

#[test]
fn criterion_9_tail_bound_soundness() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for trial in 0..200 {
        let n = rng.gen_range(2u64..=1000);
        let r = rng.gen_range(1.0f64..=30.0);
        let x = rng.gen_range(0.0f64..=1.0);
        let bound = tail_bound(n, r, x).unwrap();
        let brute = tail_brute(n, r, x, 1_000_000);
        assert!(
            bound >= brute,
            "criterion 9 FAIL: trial {trial}: tail_bound({n}, {r}, {x}) = {bound:e} \
             below brute tail {brute:e}"
        );
    }
    println!("criterion 9 PASS: tail bound dominates 200 brute-force tails");
}

// ---------------------------------------------------------------------------
// Naive oracles, deliberately independent of the library implementations.

fn h_naive(x: f64) -> f64 {
    if x == 0.0 {
        return 1.0;
    }
    let s = (PI * x).sin() / (PI * x);
    s * s
}

fn f_r_brute(x: f64, r: f64, terms: u64) -> f64 {
    let mut sum = 0.0;
    for m in (1..=terms).rev() {
        let m = m as f64;
        sum += h_naive(x + m).powf(r) + h_naive(x - m).powf(r);
    }
    sum + h_naive(x).powf(r)
}

fn tail_brute(n: u64, r: f64, x: f64, terms: u64) -> f64 {
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
