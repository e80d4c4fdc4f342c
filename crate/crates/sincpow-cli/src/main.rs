//! `sincpow`: certified evaluation of periodized sinc power sums.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 evaluation failure (tolerance unachievable within the term cap).

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use sincpow::SuiteLevel;
use sincpow_cli::{
    cmd_dominance, cmd_eval, cmd_figure, cmd_minimize, cmd_verify_all, figure::FigureSpec,
    max_terms_from_env, CliError, FigureFormat, ReportFormat,
};

#[derive(Parser)]
#[command(
    name = "sincpow",
    version,
    about = "Certified periodized sinc power sums: evaluation, minimization, verification, figures",
    after_help = "Environment:\n  SINCPOW_MAX_TERMS  override the evaluator term cap for eval/figure\n\n\
                  Exit codes:\n  0 success, 1 verification failure, 2 usage error, 3 evaluation failure"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate f_r(x) with a certified error bound
    Eval {
        /// Evaluation point in [0, 1]
        #[arg(long)]
        x: f64,
        /// Exponent, at least 1
        #[arg(long)]
        r: f64,
        /// Truncation tolerance for the certified sum
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
    },
    /// Locate the minimizer of f_r over [0, 1]
    Minimize {
        /// Exponent, at least 1
        #[arg(long)]
        r: f64,
        /// Bracket width at which the search stops
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Run the verification suites, streaming one report per line
    VerifyAll {
        /// Suite depth
        #[arg(long, value_enum, default_value_t = LevelArg::Fast)]
        level: LevelArg,
        /// Report stream format
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
        /// Replace the run with one deliberately failing suite
        /// (exercises the failure path and exit code 1)
        #[arg(long)]
        self_test_fail: bool,
    },
    /// Evaluate the curve family f_(base^k) and write CSV or SVG
    Figure {
        /// Output file path
        #[arg(long)]
        out: PathBuf,
        /// Output format
        #[arg(long, value_enum, default_value_t = FigFormatArg::Csv)]
        format: FigFormatArg,
        /// Base of the exponent family
        #[arg(long, default_value_t = 1.02)]
        base: f64,
        /// Comma-separated exponent indices k (curves are f_(base^k))
        #[arg(long, value_delimiter = ',')]
        k: Option<Vec<u32>>,
        /// Number of grid points across [0, 1]
        #[arg(long, default_value_t = 1001)]
        points: usize,
    },
    /// Generate a seeded one-crossing instance and print its transfer trace
    Dominance {
        /// Number of coordinates, at least 2
        #[arg(long)]
        n: usize,
        /// RNG seed
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Convex power g(u) = u^r, at least 1
        #[arg(long, default_value_t = 2.0)]
        r: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Fast,
    Release,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum FigFormatArg {
    Csv,
    Svg,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("{err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Eval { x, r, tol } => {
            cmd_eval(x, r, tol, max_terms_from_env()?, &mut out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Minimize { r, tol } => {
            cmd_minimize(r, tol, &mut out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyAll {
            level,
            format,
            self_test_fail,
        } => {
            let level = match level {
                LevelArg::Fast => SuiteLevel::Fast,
                LevelArg::Release => SuiteLevel::Release,
            };
            let format = match format {
                FormatArg::Text => ReportFormat::Text,
                FormatArg::Json => ReportFormat::Json,
            };
            let all = cmd_verify_all(level, format, self_test_fail, &mut out)?;
            let _ = out.flush();
            Ok(if all {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Figure {
            out: path,
            format,
            base,
            k,
            points,
        } => {
            let spec = FigureSpec {
                k_values: k.unwrap_or_else(|| FigureSpec::default().k_values),
                base,
                n_points: points,
            };
            let format = match format {
                FigFormatArg::Csv => FigureFormat::Csv,
                FigFormatArg::Svg => FigureFormat::Svg,
            };
            cmd_figure(&spec, format, &path, max_terms_from_env()?, &mut out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Dominance { n, seed, r } => {
            let held = cmd_dominance(n, seed, r, &mut out)?;
            Ok(if held {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}
