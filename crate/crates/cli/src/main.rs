//! `sincpow`: evaluate sinc-power integrals, print exact oracles and
//! certify the sharpened Ball inequality chain.
//!
//! Exit codes: 0 success, 1 certification or property failure, 2 usage
//! error, 3 numerical failure.

mod render;

use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sincpow::bspline::{bspline_value, integral_exact, BSplineOrder};
use sincpow::check;
use sincpow::theorem::{certify_grid, crossover_residual, linear_grid, solve_p0};
use sincpow::{integral_numeric, Error, ExactRational, PValue, QuadratureConfig, TheoremConstants, Verdict};

use render::{fmt_sig, json_num, json_object, json_str, num, ScanRow};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NUMERIC: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "sincpow", version, about = "Sinc-power integrals and the sharpened Ball inequality")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Debug, Args)]
struct GridArgs {
    #[arg(long = "p-from", allow_negative_numbers = true)]
    p_from: f64,
    #[arg(long = "p-to", allow_negative_numbers = true)]
    p_to: f64,
    #[arg(long, default_value_t = 0.01)]
    step: f64,
    /// Absolute tolerance of the quadrature at non-integer p.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Multiplies C(p); values below 1 must make certification fail.
    #[arg(long = "c-scale", default_value_t = 1.0, hide = true)]
    c_scale: f64,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Numerically evaluate I(p) with an error bound.
    Eval {
        #[arg(long, allow_negative_numbers = true)]
        p: f64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Exact rational value of I(n) for integer n.
    Exact {
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[command(flatten)]
        output: Output,
    },
    /// Certify the inequality chain on a grid of p; exit 1 if any point fails.
    Certify(GridArgs),
    /// Tabulate the chain and the asymptotic ratio on a grid of p.
    Scan(GridArgs),
    /// Solve for the crossover exponent p0.
    P0 {
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Exact value of the centered B-spline of order n at rational x.
    Bspline {
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        /// Rational such as 1/2, -3/4 or 0.125.
        #[arg(long, allow_negative_numbers = true)]
        x: String,
        #[command(flatten)]
        output: Output,
    },
    /// Run the self-check suite.
    Check {
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
}

/// A failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_numerical() { EXIT_NUMERIC } else { EXIT_USAGE };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// Text to emit and the exit code to finish with.
struct Report {
    text: String,
    code: u8,
}

impl Report {
    fn ok(text: String) -> Self {
        Report { text, code: 0 }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let out_path = match &cli.command {
        Command::Eval { output, .. }
        | Command::Exact { output, .. }
        | Command::P0 { output, .. }
        | Command::Bspline { output, .. } => output.out.clone(),
        Command::Certify(g) | Command::Scan(g) => g.output.out.clone(),
        Command::Check { out } => out.clone(),
    };
    match run(cli.command) {
        Ok(report) => {
            let written = match out_path {
                Some(path) => fs::write(&path, &report.text)
                    .map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => io::stdout()
                    .write_all(report.text.as_bytes())
                    .map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => ExitCode::from(report.code),
                Err(msg) => {
                    eprintln!("error: {msg}");
                    ExitCode::from(EXIT_USAGE)
                }
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn parse_p(p: f64) -> Result<PValue, Failure> {
    PValue::new(p).map_err(|_| Failure::usage(format!("--p must be a finite number >= 1 (got {p})")))
}

fn quadrature_config(tol: f64) -> Result<QuadratureConfig, Failure> {
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Failure::usage(format!("--tol must be positive (got {tol})")));
    }
    Ok(QuadratureConfig::with_abs_tol(tol))
}

fn run(command: Command) -> Result<Report, Failure> {
    match command {
        Command::Eval { p, tol, output } => {
            let pv = parse_p(p)?;
            let cfg = quadrature_config(tol)?;
            let est = integral_numeric(pv, &cfg)?;
            Ok(Report::ok(match output.format {
                Format::Csv => render::eval_csv(p, &est),
                Format::Json => render::eval_json(p, &est),
            }))
        }
        Command::Exact { n, output } => {
            let n = u32::try_from(n)
                .ok()
                .filter(|&n| n >= 1)
                .ok_or_else(|| Failure::usage(format!("--n must be an integer >= 1 (got {n})")))?;
            let value = integral_exact(n)?;
            Ok(Report::ok(match output.format {
                Format::Csv => format!("n,exact,decimal\n{n},{value},{}\n", num(value.to_f64())),
                Format::Json => format!(
                    "{}\n",
                    json_object(&[
                        ("n", n.to_string()),
                        ("exact", json_str(&value.to_string())),
                        ("decimal", json_num(value.to_f64())),
                    ])
                ),
            }))
        }
        Command::Certify(grid) => scan(grid, true),
        Command::Scan(grid) => scan(grid, false),
        Command::P0 { tol, output } => {
            if !(tol > 0.0) || !tol.is_finite() {
                return Err(Failure::usage(format!("--tol must be positive (got {tol})")));
            }
            let p0 = solve_p0(tol)?;
            let residual = crossover_residual(p0);
            Ok(Report::ok(match output.format {
                Format::Csv => format!("p0,residual\n{},{}\n", fmt_sig(p0, 12), num(residual)),
                Format::Json => format!(
                    "{}\n",
                    json_object(&[("p0", fmt_sig(p0, 12)), ("residual", json_num(residual))])
                ),
            }))
        }
        Command::Bspline { n, x, output } => {
            let order = u32::try_from(n)
                .ok()
                .and_then(|n| BSplineOrder::new(n).ok())
                .ok_or_else(|| Failure::usage(format!("--n must be an integer >= 1 (got {n})")))?;
            let x: ExactRational = x.parse().map_err(|e: Error| Failure::usage(e.to_string()))?;
            let value = bspline_value(order, &x);
            Ok(Report::ok(match output.format {
                Format::Csv => format!("n,x,value,decimal\n{n},{x},{value},{}\n", num(value.to_f64())),
                Format::Json => format!(
                    "{}\n",
                    json_object(&[
                        ("n", n.to_string()),
                        ("x", json_str(&x.to_string())),
                        ("value", json_str(&value.to_string())),
                        ("decimal", json_num(value.to_f64())),
                    ])
                ),
            }))
        }
        Command::Check { .. } => {
            let outcomes = check::run_all();
            let mut text = String::new();
            for o in &outcomes {
                let status = if o.passed { "pass" } else { "fail" };
                text.push_str(&format!("{status} {}: {}\n", o.name, o.detail));
            }
            let passed = outcomes.iter().filter(|o| o.passed).count();
            text.push_str(&format!("{passed}/{} properties passed\n", outcomes.len()));
            let code = if passed == outcomes.len() { 0 } else { EXIT_FAIL };
            Ok(Report { text, code })
        }
    }
}

fn scan(args: GridArgs, strict: bool) -> Result<Report, Failure> {
    if !(args.p_from >= 1.0) || !args.p_from.is_finite() {
        return Err(Failure::usage(format!("--p-from must be >= 1 (got {})", args.p_from)));
    }
    if !(args.p_to >= args.p_from) || !args.p_to.is_finite() {
        return Err(Failure::usage("--p-to must be finite and >= --p-from"));
    }
    if !(args.step > 0.0) || !args.step.is_finite() {
        return Err(Failure::usage(format!("--step must be positive (got {})", args.step)));
    }
    if !(args.c_scale > 0.0) || !args.c_scale.is_finite() {
        return Err(Failure::usage("--c-scale must be positive"));
    }
    let cfg = quadrature_config(args.tol)?;
    let ps = linear_grid(args.p_from, args.p_to, args.step)?
        .into_iter()
        .map(PValue::new)
        .collect::<Result<Vec<_>, _>>()?;
    let consts = TheoremConstants::compute()?;
    let certs = certify_grid(&ps, &cfg, &consts, args.c_scale)?;
    let rows: Vec<ScanRow> = certs.iter().map(ScanRow::from).collect();
    let text = match args.output.format {
        Format::Csv => render::scan_csv(&rows),
        Format::Json => render::scan_json(&rows),
    };
    let all_pass = certs.iter().all(|c| c.verdict == Verdict::Pass);
    let code = if strict && !all_pass { EXIT_FAIL } else { 0 };
    Ok(Report { text, code })
}
