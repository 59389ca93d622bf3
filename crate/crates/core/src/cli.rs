//! Command-line front end.
//!
//! Exit codes: 0 when every status matches its expectation, 1 on a mismatch
//! or a failed computation, 2 on a usage error.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::identities::{
    run_check, run_suite, CheckReport, CheckStatus, IdentityId, Params, SuiteManifest,
};
use crate::operator::{check_q, OperatorKind, OperatorSpec};
use crate::rational::Rational;
use crate::ring::RingDescriptor;
use crate::series::TruncatedSeries;
use crate::solvers::{closed_solve, picard_solve, EquationForm, EquationSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Picard,
    Closed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
    Both,
}

#[derive(Debug, Parser)]
#[command(
    name = "rota-baxter",
    version,
    about = "Exact Rota-Baxter series solver and identity checker"
)]
struct Cli {
    #[command(subcommand)]
    command: CommandArgs,
}

#[derive(Debug, Subcommand)]
enum CommandArgs {
    /// Run one identity check
    Verify {
        /// Identity id, e.g. spitzer or eulerian-prop-two
        identity_id: String,
        #[command(flatten)]
        common: CommonArgs,
        /// Status the check is expected to have (default pass)
        #[arg(long, value_parser = parse_status)]
        expect: Option<CheckStatus>,
        /// Kingman exponent, a single value or a range a-b
        #[arg(long)]
        n: Option<String>,
        /// Lemma nesting depth, a single value or a range a-b
        #[arg(long)]
        k: Option<String>,
        /// Sides of the non-commutative closed forms to check
        #[arg(long, value_enum)]
        side: Option<SideArg>,
        /// Bound on random numerators and denominators
        #[arg(long)]
        bound: Option<u32>,
    },
    /// Run a suite manifest (the bundled one by default)
    Suite {
        /// JSON manifest file
        #[arg(long)]
        manifest: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Solve a linear Rota-Baxter equation
    Solve {
        #[arg(long, value_parser = parse_equation)]
        equation: EquationForm,
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum, default_value = "picard")]
        method: Method,
    },
}

#[derive(Debug, Args)]
struct CommonArgs {
    #[arg(long, value_parser = parse_operator)]
    operator: Option<OperatorKind>,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    q: Option<Rational>,
    /// Truncation order (cap)
    #[arg(long, allow_hyphen_values = true)]
    order: Option<usize>,
    /// Matrix dimension; 1 is the scalar ring
    #[arg(long, allow_hyphen_values = true)]
    dim: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    seed: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    samples: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Coefficients c0,c1,... ; matrix coefficients as [[a,b],[c,d]]
    #[arg(long, allow_hyphen_values = true)]
    a0: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a1: Option<String>,
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_operator(s: &str) -> Result<OperatorKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_status(s: &str) -> Result<CheckStatus, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_equation(s: &str) -> Result<EquationForm, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveConfig {
    pub equation: EquationSpec,
    pub method: Method,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Verify {
        identity_id: String,
        params: Params,
        expect: CheckStatus,
    },
    Suite {
        manifest: Option<PathBuf>,
    },
    Solve(SolveConfig),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliConfig {
    pub command: Command,
    pub format: Format,
}

/// A parse outcome that ends the program: a usage error, or `--help`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliExit {
    pub code: i32,
    pub message: String,
}

impl fmt::Display for CliExit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

fn usage(message: impl Into<String>) -> CliExit {
    CliExit {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn check_order_and_dim(common: &CommonArgs) -> Result<RingDescriptor, CliExit> {
    let dim = common.dim.unwrap_or(1);
    RingDescriptor::with_dim(dim).map_err(|e| usage(format!("--dim: {e}")))
}

/// The q guard applies whenever the chosen operator (or the default q-integral) needs q.
fn check_q_flag(common: &CommonArgs) -> Result<(), CliExit> {
    if let Some(q) = &common.q {
        if common.operator.is_none_or(OperatorKind::needs_q) {
            check_q(q).map_err(|e| usage(format!("--q: {e}")))?;
        }
    }
    Ok(())
}

fn parse_series(
    flag: &str,
    text: &str,
    ring: RingDescriptor,
    cap: usize,
) -> Result<TruncatedSeries, CliExit> {
    TruncatedSeries::parse(text, ring, cap).map_err(|e| usage(format!("--{flag}: {e}")))
}

/// Parses `argv` (program name first) into a validated configuration.
pub fn parse_args<I, T>(argv: I) -> Result<CliConfig, CliExit>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| CliExit {
        code: if e.use_stderr() { EXIT_USAGE } else { EXIT_OK },
        message: e.to_string(),
    })?;
    match cli.command {
        CommandArgs::Verify {
            identity_id,
            common,
            expect,
            n,
            k,
            side,
            bound,
        } => {
            identity_id
                .parse::<IdentityId>()
                .map_err(|e| usage(format!("identity id: {e}")))?;
            check_q_flag(&common)?;
            let ring = check_order_and_dim(&common)?;
            let cap = common.order.unwrap_or(12);
            for (flag, text) in [("a0", &common.a0), ("a1", &common.a1)] {
                if let Some(text) = text {
                    parse_series(flag, text, ring, cap)?;
                }
            }
            let mut params = Params::new();
            let mut put = |key: &str, value: Option<String>| {
                if let Some(v) = value {
                    params.insert(key.to_string(), v);
                }
            };
            put("operator", common.operator.map(|o| o.to_string()));
            put("q", common.q.as_ref().map(Rational::to_string));
            put("order", common.order.map(|o| o.to_string()));
            put("dim", common.dim.map(|d| d.to_string()));
            put("seed", common.seed.map(|s| s.to_string()));
            put("samples", common.samples.map(|s| s.to_string()));
            put("bound", bound.map(|b| b.to_string()));
            put("a0", common.a0.clone());
            put("a1", common.a1.clone());
            put("n", n);
            put("k", k);
            put(
                "side",
                side.map(|s| {
                    match s {
                        SideArg::Left => "left",
                        SideArg::Right => "right",
                        SideArg::Both => "both",
                    }
                    .to_string()
                }),
            );
            Ok(CliConfig {
                command: Command::Verify {
                    identity_id,
                    params,
                    expect: expect.unwrap_or(CheckStatus::Pass),
                },
                format: common.format,
            })
        }
        CommandArgs::Suite { manifest, format } => Ok(CliConfig {
            command: Command::Suite { manifest },
            format,
        }),
        CommandArgs::Solve {
            equation,
            common,
            method,
        } => {
            check_q_flag(&common)?;
            let ring = check_order_and_dim(&common)?;
            let cap = common.order.unwrap_or(12);
            let kind = common.operator.unwrap_or(OperatorKind::QIntegral);
            let q = kind
                .needs_q()
                .then(|| common.q.clone().unwrap_or_else(|| Rational::new(1, 2)));
            let op = OperatorSpec::new(kind, q).map_err(|e| usage(format!("--q: {e}")))?;
            let a1 = match &common.a1 {
                Some(text) => parse_series("a1", text, ring, cap)?,
                None => return Err(usage("--a1 is required for solve")),
            };
            let a0 = match (&common.a0, equation) {
                (Some(_), EquationForm::Homogeneous) => {
                    return Err(usage("--a0: the homogeneous equation takes no a0"))
                }
                (Some(text), _) => Some(parse_series("a0", text, ring, cap)?),
                (None, EquationForm::Homogeneous) => None,
                (None, _) => return Err(usage(format!("--a0 is required for {equation}"))),
            };
            let equation = EquationSpec::new(equation, op, a0, a1).map_err(|e| {
                let flag = if e.to_string().contains("a0") {
                    "--a0"
                } else {
                    "--a1"
                };
                usage(format!("{flag}: {e}"))
            })?;
            Ok(CliConfig {
                command: Command::Solve(SolveConfig { equation, method }),
                format: common.format,
            })
        }
    }
}

/// Renders reports: one line each as text, or a JSON array.
pub fn emit_report(reports: &[CheckReport], format: Format) -> String {
    match format {
        Format::Text => reports.iter().map(|r| format!("{r}\n")).collect(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(reports).expect("reports serialize");
            s.push('\n');
            s
        }
    }
}

pub fn solve(cfg: &SolveConfig) -> crate::Result<TruncatedSeries> {
    match cfg.method {
        Method::Picard => picard_solve(&cfg.equation),
        Method::Closed => closed_solve(&cfg.equation),
    }
}

/// Executes a configuration, writing results to `out` and diagnostics to `err`.
pub fn run_command(cfg: &CliConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match &cfg.command {
        Command::Verify {
            identity_id,
            params,
            expect,
        } => run_check(identity_id, params).map(|report| {
            let code = if report.status == *expect {
                EXIT_OK
            } else {
                EXIT_MISMATCH
            };
            let _ =
                out.write_all(emit_report(std::slice::from_ref(&report), cfg.format).as_bytes());
            code
        }),
        Command::Suite { manifest } => load_manifest(manifest.as_ref())
            .and_then(|m| run_suite(&m))
            .map(|outcome| {
                let _ = out.write_all(emit_report(&outcome.reports, cfg.format).as_bytes());
                for (report, expected) in outcome.unexpected() {
                    let _ = writeln!(
                        err,
                        "unexpected status: {} (expected {expected})",
                        report.identity_id
                    );
                }
                if outcome.success() {
                    EXIT_OK
                } else {
                    EXIT_MISMATCH
                }
            }),
        Command::Solve(solve_cfg) => solve(solve_cfg).map(|b| {
            let text = match cfg.format {
                Format::Text => b.to_string(),
                Format::Json => b.to_json(),
            };
            let _ = writeln!(out, "{text}");
            EXIT_OK
        }),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Usage(_) | Error::Config(_) | Error::Parse(_) => EXIT_USAGE,
                _ => EXIT_MISMATCH,
            }
        }
    }
}

fn load_manifest(path: Option<&PathBuf>) -> crate::Result<SuiteManifest> {
    match path {
        None => Ok(SuiteManifest::default_manifest()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Error::Config(format!("--manifest {}: {e}", p.display())))?;
            SuiteManifest::from_json(&text)
        }
    }
}

/// Parses and runs; the binary's whole body.
pub fn main_with_args<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match parse_args(argv) {
        Ok(cfg) => run_command(&cfg, out, err),
        Err(exit) => {
            let target: &mut dyn Write = if exit.code == EXIT_OK { out } else { err };
            let _ = write!(target, "{}", exit.message);
            exit.code
        }
    }
}
