//! The `ptx` command line.
//!
//! [`run`] parses arguments, echoes the resolved configuration to the error
//! stream, dispatches to a subcommand and returns the process exit code.
//! Results go to the output stream and diagnostics to the error stream, so
//! two identical invocations print byte-identical output.
//!
//! Exit codes: [`EXIT_OK`], [`EXIT_USAGE`], [`EXIT_REFUTED`], [`EXIT_BUDGET`]
//! and [`EXIT_PRECONDITION`].

mod commands;

use std::fmt;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::budget::{Budget, BudgetExhausted};
use crate::constructions::Claim;
use crate::graph::VertexRef;

pub const EXIT_OK: i32 = 0;
/// Bad arguments or unreadable, malformed input files.
pub const EXIT_USAGE: i32 = 1;
/// A claim or structural check was refuted.
pub const EXIT_REFUTED: i32 = 2;
/// A search ran out of budget.
pub const EXIT_BUDGET: i32 = 3;
/// Well-formed input that does not meet the preconditions of the operation.
pub const EXIT_PRECONDITION: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "ptx",
    version,
    about = "Partial independent transversals: solve, construct, certify and bound"
)]
pub struct Cli {
    /// Search node budget. Overrides the PTX_BUDGET environment variable.
    #[arg(long, global = true, value_name = "N")]
    pub budget: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a recipe and write the graph plus a claim sidecar (`<out>.claim`).
    Construct(ConstructArgs),
    /// Certify a claim `r,D,n,delta` against a graph.
    Verify(VerifyArgs),
    /// Largest partial independent transversal of a graph.
    Solve(SolveArgs),
    /// Lower and upper bounds on n(r, d+1, delta).
    Bounds(BoundsArgs),
    /// Extract an induced matching configuration.
    Imc(ImcArgs),
    /// Certificate that a graph has no independent transversal.
    Certify(CertifyArgs),
    /// Build and certify a family of constructions and tabulate the results.
    Table(TableArgs),
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    /// Recipe file, or recipe text such as "(kdd 4) (rows-spine 3)".
    #[arg(long)]
    pub recipe: String,
    /// Output MPG path.
    #[arg(long)]
    pub out: PathBuf,
    /// Certify the claim before writing; the sidecar then records the measured
    /// maximum partial IT.
    #[arg(long)]
    pub certify: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub graph: PathBuf,
    /// Claim as `r,D,n,delta`.
    #[arg(long, value_parser = parse_claim)]
    pub claim: Claim,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub graph: PathBuf,
    /// Also report whether an (r - d)-IT exists.
    #[arg(long)]
    pub defect: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Markdown,
    Csv,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Markdown => "markdown",
            Format::Csv => "csv",
        })
    }
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long)]
    pub r: u64,
    #[arg(long)]
    pub d: u64,
    #[arg(long)]
    pub delta: u64,
    /// Report every 2 <= r' <= r and d' <= min(d, r' - 1) instead of one point.
    #[arg(long)]
    pub grid: bool,
    #[arg(long, value_enum, default_value_t = Format::Markdown)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ImcArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub d: usize,
    /// Run the structure checks on the extracted configuration.
    #[arg(long)]
    pub check_lemmas: bool,
    /// Seed through the edge `p1,i1,p2,i2`, which must be critical.
    #[arg(long, value_parser = parse_edge)]
    pub critical_edge: Option<(VertexRef, VertexRef)>,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[arg(long)]
    pub graph: PathBuf,
    /// Use the exhaustive edge-subset search instead of the augmentation
    /// procedure.
    #[arg(long)]
    pub brute: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// Three rows of K_{Δ,Δ} with a spine: 6 classes, defect 2, n = ⌊5Δ/4⌋.
    F65,
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Preset::F65 => "f65",
        })
    }
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, value_enum)]
    pub preset: Preset,
    /// A single value or an inclusive range `a..b`.
    #[arg(long, value_parser = parse_range)]
    pub delta: RangeInclusive<usize>,
    #[arg(long, value_enum, default_value_t = Format::Markdown)]
    pub format: Format,
}

fn parse_numbers<const N: usize>(s: &str) -> Result<[usize; N], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != N {
        return Err(format!("expected {N} comma-separated integers, got `{s}`"));
    }
    let mut out = [0; N];
    for (slot, p) in out.iter_mut().zip(&parts) {
        *slot = p.parse().map_err(|_| format!("`{p}` is not a nonnegative integer"))?;
    }
    Ok(out)
}

fn parse_claim(s: &str) -> Result<Claim, String> {
    let [r, defect, n, delta] = parse_numbers(s)?;
    Ok(Claim { r, defect, n, delta })
}

fn parse_edge(s: &str) -> Result<(VertexRef, VertexRef), String> {
    let [p1, i1, p2, i2] = parse_numbers(s)?;
    Ok((VertexRef::new(p1, i1), VertexRef::new(p2, i2)))
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| format!("`{t}` is not a nonnegative integer"))
    };
    let range = match s.split_once("..") {
        Some((a, b)) => num(a)?..=num(b.strip_prefix('=').unwrap_or(b))?,
        None => {
            let v = num(s)?;
            v..=v
        }
    };
    if range.is_empty() {
        return Err(format!("empty range `{s}`"));
    }
    Ok(range)
}

/// A failed run, classified by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Refuted(String),
    #[error(transparent)]
    Budget(#[from] BudgetExhausted),
    #[error("{0}")]
    Precondition(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Refuted(_) => EXIT_REFUTED,
            CliError::Budget(_) => EXIT_BUDGET,
            CliError::Precondition(_) => EXIT_PRECONDITION,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(format!("i/o error: {e}"))
    }
}

/// Where the budget came from, for the configuration echo.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum BudgetSource {
    Flag,
    Env,
    Default,
}

impl fmt::Display for BudgetSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BudgetSource::Flag => "flag",
            BudgetSource::Env => Budget::ENV_VAR,
            BudgetSource::Default => "default",
        })
    }
}

fn resolve_budget(flag: Option<u64>, env: Option<String>) -> Result<(u64, BudgetSource), CliError> {
    if let Some(n) = flag {
        return Ok((n, BudgetSource::Flag));
    }
    match env {
        Some(text) => text
            .trim()
            .parse()
            .map(|n| (n, BudgetSource::Env))
            .map_err(|_| CliError::Usage(format!("{}=`{text}` is not a node count", Budget::ENV_VAR))),
        None => Ok((Budget::DEFAULT_LIMIT, BudgetSource::Default)),
    }
}

/// Runs `ptx` with the process environment.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with_env(args, std::env::var(Budget::ENV_VAR).ok(), out, err)
}

/// Runs `ptx` with an explicit value for the budget environment variable.
pub fn run_with_env<I, T>(
    args: I,
    env_budget: Option<String>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = resolve_budget(cli.budget, env_budget).and_then(|(limit, source)| {
        writeln!(err, "ptx {} budget={limit} budget-source={source}", commands::describe(&cli.command))?;
        commands::execute(&cli.command, limit, out, err)
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
