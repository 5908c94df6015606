//! `logser` command-line front end. [`run`] is the whole program; the binary
//! only forwards `std::env::args_os` and the standard streams.

pub mod args;
pub mod bench;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::{CommandFactory, Parser};
use serde_json::{json, Map, Value};
use thiserror::Error;

use logser_core::quadrature::{pi_arctan, pi_series};
use logser_core::rational::to_f64;
use logser_core::relations::divisor_relations_with;
use logser_core::{
    format_rational, integrate, ln_rational_vector, ln_vector, make_vector, CoefficientVector,
    EvalConfig, Evaluator, ExactRational, Method, SeriesError,
};

use crate::args::{parse_budget, Cli, Command, OutputFormat, TargetName};
use crate::bench::{bench, BenchTarget, CSV_HEADER};
use crate::report::Report;

pub use crate::args::OutputFormat as Format;
pub use crate::bench::{BenchMethod, ConvergenceRow};

pub const BUDGET_ENV: &str = "LOGSER_BLOCK_BUDGET";

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] SeriesError),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Domain(_) | CliError::Io(_) => EXIT_DOMAIN,
        }
    }
}

/// Effective settings for one invocation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    pub abs_err: f64,
    pub method: Method,
    pub block_budget: u64,
    pub output_format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            abs_err: 1e-9,
            method: Method::Accelerated,
            block_budget: EvalConfig::default().block_budget,
            output_format: OutputFormat::Text,
        }
    }
}

/// Parses `argv` (program name first), runs the command and returns the
/// exit code: 0 on success, 1 on domain errors, 2 on usage errors.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            if !e.use_stderr() {
                let _ = write!(out, "{}", e.render());
                return e.exit_code();
            }
            let mut text = e.render().to_string();
            if !text.contains("Usage:") {
                text.push('\n');
                text.push_str(&synopsis(&argv).to_string());
                text.push('\n');
            }
            let _ = write!(err, "{text}");
            return e.exit_code();
        }
    };
    match execute(cli, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if let CliError::Usage(_) = e {
                let _ = writeln!(err, "\n{}", synopsis(&argv));
            }
            e.exit_code()
        }
    }
}

/// Usage line of the subcommand named in `argv`, or of the program.
fn synopsis(argv: &[OsString]) -> clap::builder::StyledStr {
    let mut cmd = Cli::command();
    cmd.build();
    let name = argv
        .iter()
        .skip(1)
        .filter_map(|a| a.to_str())
        .find(|a| cmd.find_subcommand(a).is_some())
        .map(str::to_owned);
    match name.and_then(|n| cmd.find_subcommand_mut(&n).map(|c| c.render_usage())) {
        Some(usage) => usage,
        None => cmd.render_usage(),
    }
}

fn block_budget(cli: &Cli) -> Result<u64, CliError> {
    if let Some(b) = cli.block_budget {
        return Ok(b);
    }
    match std::env::var(BUDGET_ENV) {
        Ok(text) => parse_budget(&text).map_err(|e| CliError::Usage(format!("{BUDGET_ENV}: {e}"))),
        Err(_) => Ok(RunConfig::default().block_budget),
    }
}

fn inputs(pairs: &[(&str, Value)]) -> Map<String, Value> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

fn rationals(values: &[ExactRational]) -> Value {
    values.iter().map(format_rational).collect()
}

fn vector_json(v: &CoefficientVector) -> Value {
    json!({ "T": v.modulus(), "coeffs": rationals(v.coeffs()) })
}

fn timed<T>(f: impl FnOnce() -> Result<T, SeriesError>) -> Result<(T, u128), SeriesError> {
    let start = Instant::now();
    let value = f()?;
    Ok((value, start.elapsed().as_micros()))
}

fn evaluate_report(
    ev: &Evaluator,
    command: &'static str,
    inputs: Map<String, Value>,
    v: &CoefficientVector,
    cfg: &RunConfig,
) -> Result<Report, SeriesError> {
    let (r, micros) = timed(|| ev.evaluate(v, cfg.abs_err, cfg.method))?;
    let mut report = Report::new(command, inputs)
        .with_eval(&r)
        .detail("vector", vector_json(v));
    report.wall_time_micros = micros;
    Ok(report)
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let budget = block_budget(&cli)?;
    let ev = Evaluator::new(EvalConfig {
        block_budget: budget,
        ..EvalConfig::default()
    });
    let shared_cfg = |abs_err: f64, method: Method, format: OutputFormat| RunConfig {
        abs_err,
        method,
        block_budget: budget,
        output_format: format,
    };

    let (report, format) = match cli.command {
        Command::Eval { t, coeffs, shared } => {
            let cfg = shared_cfg(shared.abs_err, shared.method, shared.output.format);
            let ins = inputs(&[
                ("T", json!(t)),
                ("coeffs", rationals(&coeffs)),
                ("abs_err", json!(report::real(cfg.abs_err))),
                ("method", json!(cfg.method.as_str())),
            ]);
            let v = make_vector(t, coeffs)?;
            (
                evaluate_report(&ev, "eval", ins, &v, &cfg)?,
                cfg.output_format,
            )
        }
        Command::Ln { t, shared } => {
            let cfg = shared_cfg(shared.abs_err, shared.method, shared.output.format);
            let ins = inputs(&[
                ("T", json!(t)),
                ("abs_err", json!(report::real(cfg.abs_err))),
                ("method", json!(cfg.method.as_str())),
            ]);
            let v = ln_vector(t)?;
            (
                evaluate_report(&ev, "ln", ins, &v, &cfg)?,
                cfg.output_format,
            )
        }
        Command::Lnq {
            ratio: (m, l),
            shared,
        } => {
            let cfg = shared_cfg(shared.abs_err, shared.method, shared.output.format);
            let ins = inputs(&[
                ("M", json!(m)),
                ("L", json!(l)),
                ("abs_err", json!(report::real(cfg.abs_err))),
                ("method", json!(cfg.method.as_str())),
            ]);
            let v = ln_rational_vector(m, l)?;
            (
                evaluate_report(&ev, "lnq", ins, &v, &cfg)?,
                cfg.output_format,
            )
        }
        Command::Pi { shared } => {
            let cfg = shared_cfg(shared.abs_err, shared.method, shared.output.format);
            let ins = inputs(&[
                ("abs_err", json!(report::real(cfg.abs_err))),
                ("method", json!(cfg.method.as_str())),
            ]);
            let (r, micros) = timed(|| pi_series(&ev, cfg.abs_err, cfg.method))?;
            let mut report = Report::new("pi", ins)
                .with_eval(&r)
                .detail("arctan_value", json!(report::real(pi_arctan())));
            report.wall_time_micros = micros;
            (report, cfg.output_format)
        }
        Command::Gamma { n, shared } => {
            let ins = inputs(&[("n", json!(n))]);
            let (g, micros) = timed(|| ev.gamma_partial(n))?;
            let nf = n as f64;
            let mut report = Report::new("gamma", ins).detail(
                "asymptotic_gamma_estimate",
                json!(report::real(g.value - 0.5 / nf + 1.0 / (12.0 * nf * nf))),
            );
            report.value = Some(g.value);
            // rounding of H_n, of ln n and of the difference
            report.error_bound = Some(2.0 * f64::EPSILON * (g.value.abs() + nf.ln() + 1.0));
            report.wall_time_micros = micros;
            (report, shared.output.format)
        }
        Command::IntegralCheck { t, j, tol, output } => {
            let ins = inputs(&[
                ("T", json!(t)),
                ("j", json!(j)),
                ("tol", json!(report::real(tol))),
            ]);
            let (c, micros) =
                timed(|| logser_core::quadrature::integral_series_check_with(&ev, t, j, tol))?;
            let mut report = Report::new("integral-check", ins)
                .detail("series_value", json!(report::real(c.series_value)))
                .detail("discrepancy", json!(report::real(c.discrepancy)))
                .detail("tolerance", json!(report::real(c.tolerance)))
                .detail("passed", json!(c.passed()));
            report.value = Some(c.integral_value);
            report.error_bound = Some(tol);
            report.bound_is_heuristic = true;
            report.wall_time_micros = micros;
            (report, output.format)
        }
        Command::Decompose { t, tol, output } => {
            let ins = inputs(&[("T", json!(t)), ("tol", json!(report::real(tol)))]);
            let (value, micros) = timed(|| {
                let total = logser_core::decomposition_check(t, tol)?;
                let parts = (1..t)
                    .map(|j| Ok(report::real(integrate(t, j, tol / t as f64)?)))
                    .collect::<Result<Vec<_>, SeriesError>>()?;
                Ok((total, parts))
            })?;
            let reference = (t as f64).ln();
            let mut report = Report::new("decompose", ins)
                .detail("integrals", json!(value.1))
                .detail("ln_reference", json!(report::real(reference)))
                .detail(
                    "abs_error_vs_reference",
                    json!(report::real((value.0 - reference).abs())),
                );
            report.value = Some(value.0);
            report.error_bound = Some(tol);
            report.bound_is_heuristic = true;
            report.wall_time_micros = micros;
            (report, output.format)
        }
        Command::Relations { t, eps, output } => {
            let ins = inputs(&[("T", json!(t)), ("eps", json!(report::real(eps)))]);
            let (rel, micros) = timed(|| divisor_relations_with(&ev, t, eps))?;
            let mut report = Report::new("relations", ins)
                .detail("modulus", json!(rel.modulus))
                .detail("primes", json!(rel.primes))
                .detail(
                    "family",
                    rel.family
                        .iter()
                        .map(
                            |f| json!({ "label": f.label, "coeffs": rationals(f.vector.coeffs()) }),
                        )
                        .collect(),
                )
                .detail(
                    "relations",
                    rel.relations.vectors.iter().map(|r| rationals(r)).collect(),
                )
                .detail(
                    "witnesses",
                    rel.witnesses
                        .iter()
                        .map(|w| {
                            let check = match &w.check {
                                Ok((is_zero, r)) => json!({
                                    "is_zero": is_zero,
                                    "value": report::real(r.value),
                                    "error_bound": report::real(r.error_bound),
                                }),
                                Err(e) => json!({ "error": e.to_string() }),
                            };
                            json!({
                                "relation": rationals(&w.relation),
                                "coeffs": rationals(w.vector.coeffs()),
                                "basis_coords": rationals(&w.basis_coords),
                                "check": check,
                            })
                        })
                        .collect(),
                );
            report.wall_time_micros = micros;
            (report, output.format)
        }
        Command::Rearranged { t, n, output } => {
            let ins = inputs(&[("T", json!(t)), ("n", json!(n))]);
            let (terms, micros) = timed(|| ev.rearranged_terms(t, n))?;
            let sum: ExactRational = terms.iter().sum();
            let mut report = Report::new("rearranged", ins)
                .detail("terms", rationals(&terms))
                .detail("sum", json!(format_rational(&sum)));
            let value = to_f64(&sum);
            report.value = Some(value);
            // nearest-f64 conversion of the exact sum
            report.error_bound = Some(0.5 * f64::EPSILON * value.abs());
            report.wall_time_micros = micros;
            (report, output.format)
        }
        Command::Bench {
            target,
            methods,
            work,
            t,
            coeffs,
        } => {
            let target = match (target, t, coeffs) {
                (TargetName::Ln(t), _, _) => BenchTarget::ln(t)?,
                (TargetName::LnRational(m, l), _, _) => BenchTarget::ln_rational(m, l)?,
                (TargetName::Pi, _, _) => BenchTarget::pi()?,
                (TargetName::Vector, Some(t), Some(c)) => BenchTarget::vector(make_vector(t, c)?),
                (TargetName::Vector, _, _) => {
                    return Err(CliError::Usage(
                        "the vector target needs --T <int> and --coeffs <c1,c2,...>".into(),
                    ))
                }
            };
            let rows = bench(&ev, &target, &methods, &work)?;
            let mut text = format!("{CSV_HEADER}\n");
            for row in &rows {
                text.push_str(&row.to_csv());
                text.push('\n');
            }
            out.write_all(text.as_bytes())?;
            return Ok(());
        }
    };
    out.write_all(report.render(format).as_bytes())?;
    Ok(())
}
