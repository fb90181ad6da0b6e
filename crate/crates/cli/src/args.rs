use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "nc", version, about = "Free noncommutative functions: evaluation, divisors, pencils and tracial continuation")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Global {
    /// Seed for every random draw; defaults to NC_SEED, then 0.
    #[arg(long, global = true, env = "NC_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate an expression at a point.
    Eval(EvalArgs),
    /// Directional derivative Df(X)[H].
    Dderiv(DderivArgs),
    /// Principal divisor of an expression at a point.
    Divisor(DivisorArgs),
    /// Compare the divisors of two expressions at random points.
    CheckDivEq(CheckDivEqArgs),
    /// Build a pencil realization of a rational expression.
    Linearize(LinearizeArgs),
    /// Evaluate a realization b*·L(X)⁻¹·c.
    RealizationEval(RealizationPointArgs),
    /// det of the bordered pencil over det of the pencil.
    DetRatio(RealizationPointArgs),
    /// Divisors of the two pencils of a realization and their difference.
    DivisorSplit(RealizationPointArgs),
    /// Emit a built-in or custom sampled path.
    GenPath(GenPathArgs),
    /// Concatenate two paths.
    Concat(ConcatArgs),
    /// Continue a tracial germ along a path.
    Continue(ContinueArgs),
    /// Size-normalized increment of a germ around a loop.
    LoopPhi(ContinueArgs),
    /// Check loop increments for quantization in 2πi/n·ℤ.
    Quantize(QuantizeArgs),
    /// Check that a closed 1-form has integral periods on given loops.
    Integrality(IntegralityArgs),
    /// Compare two paths through the increments of a family of germs.
    TraceEquiv(TraceEquivArgs),
    /// Run the acceptance criteria.
    Suite(SuiteArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ExprInput {
    /// Expression text.
    #[arg(long, conflicts_with = "expr_file", required_unless_present = "expr_file")]
    pub expr: Option<String>,
    /// File holding the expression text.
    #[arg(long)]
    pub expr_file: Option<PathBuf>,
    /// Number of variables; inferred from the point (or the expression) when absent.
    #[arg(long)]
    pub vars: Option<usize>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct EvalArgs {
    #[command(flatten)]
    pub input: ExprInput,
    /// Point JSON: {"n", "d", "mats"}.
    #[arg(long)]
    pub point: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DderivArgs {
    #[command(flatten)]
    pub input: ExprInput,
    #[arg(long)]
    pub point: PathBuf,
    /// Direction JSON, same shape as the point.
    #[arg(long)]
    pub direction: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Reverse,
    Forward,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DivisorArgs {
    #[command(flatten)]
    pub input: ExprInput,
    #[arg(long)]
    pub point: PathBuf,
    #[arg(long, value_enum, default_value_t = Method::Reverse)]
    pub method: Method,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CheckDivEqArgs {
    #[arg(long)]
    pub e1: String,
    #[arg(long)]
    pub e2: String,
    /// Variable count; inferred from the expressions when absent.
    #[arg(long)]
    pub vars: Option<usize>,
    #[arg(long, value_delimiter = ',', default_value = "1,2,3,4")]
    pub sizes: Vec<usize>,
    #[arg(long, default_value_t = 25)]
    pub trials: usize,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct LinearizeArgs {
    #[command(flatten)]
    pub input: ExprInput,
    /// Matrix sizes used by the nondegeneracy probe.
    #[arg(long, value_delimiter = ',', default_value = "1,2,3,4")]
    pub sizes: Vec<usize>,
    /// Random points per size in the nondegeneracy probe.
    #[arg(long, default_value_t = 32)]
    pub trials: usize,
    /// Write the realization JSON here instead of only reporting it.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RealizationPointArgs {
    /// Realization JSON as written by `linearize`.
    #[arg(long, conflicts_with = "expr", required_unless_present = "expr")]
    pub realization: Option<PathBuf>,
    /// Build the realization from this expression instead.
    #[arg(long)]
    pub expr: Option<String>,
    #[arg(long)]
    pub vars: Option<usize>,
    #[arg(long)]
    pub point: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PathKind {
    CircleDet,
    DiagRotation,
    #[value(name = "paper-2x2")]
    #[serde(rename = "paper-2x2")]
    Paper2x2,
    Custom,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GenPathArgs {
    #[arg(long, value_enum)]
    pub kind: PathKind,
    /// Matrix size (circle-det).
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    /// Winding number (circle-det).
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub winding: i32,
    /// Circle center as "re,im" (circle-det).
    #[arg(long, default_value = "0,0", allow_hyphen_values = true)]
    pub center: String,
    /// Circle radius (circle-det).
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    /// Per-eigenvalue windings (diag-rotation), e.g. "1,0".
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub windings: Vec<i32>,
    /// Node count for sampled loops.
    #[arg(long, default_value_t = 256)]
    pub samples: usize,
    /// JSON array of points visited at equal time steps (custom).
    #[arg(long)]
    pub nodes: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub pad_start: usize,
    #[arg(long, default_value_t = 1)]
    pub pad_end: usize,
    /// Write the path JSON here and print a summary report instead.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ConcatArgs {
    #[arg(long)]
    pub path1: PathBuf,
    #[arg(long)]
    pub path2: PathBuf,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GermInput {
    /// Germ JSON: {"kind": "logdet", "expr": ...} or {"kind": "closed_form", "g": [...]}.
    #[arg(long, conflicts_with_all = ["logdet", "g"])]
    pub germ: Option<PathBuf>,
    /// Shorthand for a log-det germ.
    #[arg(long, conflicts_with = "g")]
    pub logdet: Option<String>,
    /// Closed 1-form component, repeated once per variable in order.
    #[arg(long)]
    pub g: Vec<String>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DomainInput {
    /// Domain JSON: {"forbidden_dets": [[re, im], ...]}.
    #[arg(long, conflicts_with = "forbid")]
    pub domain: Option<PathBuf>,
    /// Forbidden values of det(x1 - λ) as "re,im;re,im"; "gl" for {0}.
    #[arg(long, allow_hyphen_values = true)]
    pub forbid: Option<String>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ContinueArgs {
    #[command(flatten)]
    pub germ: GermInput,
    #[arg(long)]
    pub path: PathBuf,
    #[command(flatten)]
    pub domain: DomainInput,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct QuantizeArgs {
    /// JSON array of {"c": [re, im], "n": size} records.
    #[arg(long)]
    pub loops: PathBuf,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct IntegralityArgs {
    #[command(flatten)]
    pub germ: GermInput,
    /// JSON array of loop paths.
    #[arg(long)]
    pub loops: PathBuf,
    #[command(flatten)]
    pub domain: DomainInput,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct TraceEquivArgs {
    #[arg(long)]
    pub path1: PathBuf,
    #[arg(long)]
    pub path2: PathBuf,
    /// JSON array of germs.
    #[arg(long, conflicts_with = "logdet", required_unless_present = "logdet")]
    pub germs: Option<PathBuf>,
    /// Log-det germ, repeatable.
    #[arg(long)]
    pub logdet: Vec<String>,
    #[command(flatten)]
    pub domain: DomainInput,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SuiteArgs {
    /// Criterion numbers to run; all when absent.
    #[arg(long, value_delimiter = ',')]
    pub criteria: Vec<usize>,
}
