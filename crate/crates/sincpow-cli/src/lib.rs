//! Command implementations behind the `sincpow` binary.
//!
//! Each command is a plain function writing to a caller-supplied sink, so
//! the binary stays a thin flag-parsing shell and integration tests can
//! drive the commands directly.
//!
//! Exit-code contract (enforced in `main`): 0 success, 1 verification
//! failure, 2 usage error (bad flags, bad output path), 3 evaluation
//! failure (e.g. requested tolerance unachievable within the term cap).

#![forbid(unsafe_code)]

pub mod figure;

use std::fmt;
use std::io::Write;

use sincpow::core_math::{f_r_certified, DEFAULT_MAX_TERMS};
use sincpow::dominance::{dominance_verify, random_instance, transfer_trace};
use sincpow::verify::{find_min, grid_eval_tolerance, run_standard_suites, verify_parseval};
use sincpow::{EvalParams, GridSpec, SuiteLevel, VerificationReport};

/// Environment variable overriding the evaluator's term cap for the
/// commands that construct evaluations directly (`eval`, `figure`).
pub const MAX_TERMS_ENV: &str = "SINCPOW_MAX_TERMS";

/// Command failure, tagged with how it should exit.
#[derive(Debug)]
pub enum CliError {
    /// Bad flag values or unusable output path: exit 2.
    Usage(String),
    /// The requested computation could not be completed: exit 3.
    Eval(String),
}

impl CliError {
    /// Wraps any displayable evaluation-side error.
    pub fn eval<E: fmt::Display>(err: E) -> Self {
        CliError::Eval(err.to_string())
    }

    /// The process exit code this error maps to.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Eval(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Eval(msg) => write!(f, "evaluation error: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

/// Reads the term-cap override from the environment, if set.
pub fn max_terms_from_env() -> Result<Option<u64>, CliError> {
    match std::env::var(MAX_TERMS_ENV) {
        Ok(raw) => raw.trim().parse::<u64>().map(Some).map_err(|_| {
            CliError::Usage(format!(
                "{MAX_TERMS_ENV} must be a positive integer, got {raw:?}"
            ))
        }),
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(CliError::Usage(format!("{MAX_TERMS_ENV}: {e}"))),
    }
}

fn require(cond: bool, msg: impl Into<String>) -> Result<(), CliError> {
    if cond {
        Ok(())
    } else {
        Err(CliError::Usage(msg.into()))
    }
}

/// Classifies a result-line write. A closed pipe is benign — the reader
/// (`head`, a pager, a closed terminal) took what it wanted — so it must
/// not surface as an evaluation failure; any other sink error is real.
fn sink(res: std::io::Result<()>) -> Result<(), CliError> {
    match res {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        Err(e) => Err(CliError::Eval(format!("cannot write output: {e}"))),
    }
}

/// `eval`: certified evaluation of `f_r(x)`.
pub fn cmd_eval(
    x: f64,
    r: f64,
    tol: f64,
    max_terms: Option<u64>,
    out: &mut impl Write,
) -> Result<(), CliError> {
    require(
        (0.0..=1.0).contains(&x),
        format!("--x must lie in [0, 1], got {x}"),
    )?;
    require(
        r >= 1.0 && r.is_finite(),
        format!("--r must be at least 1, got {r}"),
    )?;
    require(
        tol > 0.0 && tol.is_finite(),
        format!("--tol must be positive, got {tol}"),
    )?;
    let mut params = EvalParams::new(r, tol).map_err(CliError::eval)?;
    if let Some(cap) = max_terms {
        params = params.with_max_terms(cap).map_err(CliError::eval)?;
    }
    let cv = f_r_certified(x, &params).map_err(CliError::eval)?;
    sink(writeln!(out, "f_r(x) for r = {r}, x = {x}"))?;
    sink(writeln!(out, "value = {:.16e}", cv.value))?;
    sink(writeln!(out, "error = {:.3e}", cv.error_bound))?;
    Ok(())
}

/// `minimize`: locate the minimizer of `f_r` and report the value there.
pub fn cmd_minimize(r: f64, tol: f64, out: &mut impl Write) -> Result<(), CliError> {
    require(
        r >= 1.0 && r.is_finite(),
        format!("--r must be at least 1, got {r}"),
    )?;
    require(
        tol > 0.0 && tol.is_finite(),
        format!("--tol must be positive, got {tol}"),
    )?;
    let argmin = find_min(r, tol).map_err(CliError::eval)?;
    let params = EvalParams::new(r, grid_eval_tolerance(r)).map_err(CliError::eval)?;
    let cv = f_r_certified(argmin, &params).map_err(CliError::eval)?;
    sink(writeln!(out, "argmin = {argmin:.16e}"))?;
    sink(writeln!(out, "value = {:.16e}", cv.value))?;
    sink(writeln!(out, "error = {:.3e}", cv.error_bound))?;
    Ok(())
}

/// Report stream format for `verify-all`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    /// One human-readable line per suite.
    Text,
    /// One JSON object per line per suite.
    Json,
}

fn emit_report(rep: &VerificationReport, format: ReportFormat, out: &mut impl Write) {
    let line = match format {
        ReportFormat::Text => rep.to_string(),
        ReportFormat::Json => serde_json::to_string(rep).expect("report serializes"),
    };
    // Sink failures must not abort a verification run half-way; the exit
    // code still carries the verdict.
    let _ = writeln!(out, "{line}");
}

/// `verify-all`: run the suite bundle, streaming one report per line.
/// Returns whether every suite passed.
///
/// With `self_test_fail` the run is replaced by a single deliberately
/// corrupted suite (a negative tolerance no sound evaluator can meet),
/// exercising the failure path end to end.
pub fn cmd_verify_all(
    level: SuiteLevel,
    format: ReportFormat,
    self_test_fail: bool,
    out: &mut impl Write,
) -> Result<bool, CliError> {
    if self_test_fail {
        let grid = GridSpec::unit(101).map_err(CliError::eval)?;
        let mut rep = verify_parseval(&grid, -1.0).map_err(CliError::eval)?;
        rep.name = "parseval(self-test, corrupted tolerance)".into();
        emit_report(&rep, format, out);
        if format == ReportFormat::Text {
            let _ = writeln!(
                out,
                "self-test: 1 suite deliberately failed (witness {})",
                rep.witness
            );
        }
        return Ok(rep.passed);
    }

    let mut failures: Vec<String> = Vec::new();
    let all = run_standard_suites(level, |rep| {
        emit_report(rep, format, out);
        if !rep.passed {
            failures.push(format!("{} (witness {:.17})", rep.name, rep.witness));
        }
    })
    .map_err(CliError::eval)?;
    if format == ReportFormat::Text {
        if all {
            let _ = writeln!(out, "all suites passed");
        } else {
            let _ = writeln!(out, "FAILED: {}", failures.join("; "));
        }
    }
    Ok(all)
}

/// Output format for `figure`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureFormat {
    Csv,
    Svg,
}

/// `figure`: evaluate the curve family and write it to `path`.
pub fn cmd_figure(
    spec: &figure::FigureSpec,
    format: FigureFormat,
    path: &std::path::Path,
    max_terms: Option<u64>,
    out: &mut impl Write,
) -> Result<(), CliError> {
    let table = figure::figure_table(spec, max_terms)?;
    let file = std::fs::File::create(path)
        .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
    let mut file = std::io::BufWriter::new(file);
    let write_res = match format {
        FigureFormat::Csv => figure::write_csv(&table, &mut file),
        FigureFormat::Svg => figure::write_svg(&table, &mut file),
    };
    write_res
        .and_then(|()| file.flush())
        .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
    let _ = writeln!(
        out,
        "wrote {} points x {} curves to {}",
        table.xs.len(),
        table.k_values.len(),
        path.display()
    );
    Ok(())
}

/// `dominance`: generate a seeded random one-crossing instance, print the
/// transfer trace with the running power sum, and report the final margin.
/// Returns whether dominance held.
pub fn cmd_dominance(n: usize, seed: u64, r: f64, out: &mut impl Write) -> Result<bool, CliError> {
    require(n >= 2, format!("--n must be at least 2, got {n}"))?;
    require(
        r >= 1.0 && r.is_finite(),
        format!("--r must be at least 1, got {r}"),
    )?;
    let inst = random_instance(n, seed).map_err(CliError::eval)?;
    let sum_pow = |v: &[f64]| -> f64 { v.iter().map(|&u| u.powf(r)).sum() };

    let mut w = |line: String| {
        let _ = writeln!(out, "{line}");
    };
    w(format!(
        "one-crossing instance: n = {n}, seed = {seed}, threshold t = {:.6}",
        inst.t()
    ));
    w(format!("y = {}", fmt_vec(inst.y())));
    w(format!("x = {}", fmt_vec(inst.x())));

    let trace = transfer_trace(&inst).map_err(CliError::eval)?;
    let start = sum_pow(inst.y());
    w(format!("sum y^r = {start:.12e} with r = {r}"));
    for (step, state) in trace.steps.iter().zip(&trace.states) {
        w(format!(
            "move {:.6e} from index {} to index {} -> sum g = {:.12e}",
            step.delta,
            step.from,
            step.to,
            sum_pow(state)
        ));
    }
    if trace.steps.is_empty() {
        w("no transfers needed (start equals target)".into());
    }

    let outcome = dominance_verify(&inst, r).map_err(CliError::eval)?;
    w(format!(
        "final margin = {:.12e} (sum x^r - sum y^r), steps = {}, dominance {}",
        outcome.margin,
        outcome.steps,
        if outcome.passed { "holds" } else { "VIOLATED" }
    ));
    Ok(outcome.passed)
}

fn fmt_vec(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|u| format!("{u:.6}")).collect();
    format!("[{}]", parts.join(", "))
}

/// Default term cap, re-exported where the binary documents its flags.
pub const DEFAULT_CAP: u64 = DEFAULT_MAX_TERMS;
