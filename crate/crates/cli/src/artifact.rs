//! Command-line definition and artifact plumbing.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Map, Value};

use dml_core::bigreal::Precision;
use dml_core::moments::{SixBySix, TableId, Variable};
use dml_core::reconstruct::QuadratureMethod;
use dml_core::sampler::{Measure, Ring};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] dml_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            Self::Core(e) => e.code(),
            Self::Usage(_) => "usage",
            Self::Io { .. } => "io",
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser, Serialize)]
#[command(
    name = "dml",
    version,
    about = "Determinantal moments of random density matrices"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Serialize)]
pub struct Global {
    /// Working precision in decimal digits (minimum 16).
    #[arg(long, global = true, env = "DML_PRECISION_DIGITS")]
    pub precision: Option<u32>,
    /// Worker threads.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// JSON artifact path; stdout when absent.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

impl Global {
    pub fn precision_or(&self, fallback: Precision) -> CliResult<Precision> {
        match self.precision {
            Some(d) => Ok(Precision::digits(d)?),
            None => Ok(fallback),
        }
    }
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Exact moment of |rho|, |rho^PT|, their product or the joint moment.
    Moment(MomentArgs),
    /// Reference rational tables.
    Table(TableArgs),
    /// Numerator polynomial of the adjustment factor.
    Numerator(NumeratorArgs),
    /// Separability estimate from a moment sequence.
    Estimate(EstimateArgs),
    /// Gauss rule from moments and its threshold probability.
    Quadrature(QuadratureArgs),
    /// Monte Carlo moments or separability frequency.
    Mc(McArgs),
    /// Joint histogram of (|rho|, |rho^PT|).
    Hist(HistArgs),
    /// Closed-form determinant densities on a grid.
    Density(DensityArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Moment(_) => "moment",
            Self::Table(_) => "table",
            Self::Numerator(_) => "numerator",
            Self::Estimate(_) => "estimate",
            Self::Quadrature(_) => "quadrature",
            Self::Mc(_) => "mc",
            Self::Hist(_) => "hist",
            Self::Density(_) => "density",
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct MomentArgs {
    #[arg(long, default_value = "1/2")]
    pub alpha: String,
    #[arg(long, default_value_t = 1)]
    pub n: u32,
    #[arg(long, default_value_t = 0)]
    pub k: u32,
    #[arg(long, default_value = "bivariate")]
    pub variable: Variable,
    /// 6x6 adjustment factor instead of the two-qubit family.
    #[arg(long, conflicts_with = "beta")]
    pub sixbysix: Option<SixBySix>,
    /// Non-generic family parameter.
    #[arg(long)]
    pub beta: Option<u32>,
}

#[derive(Debug, Args, Serialize)]
pub struct TableArgs {
    #[arg(long, default_value = "appA")]
    pub table: TableId,
    /// Single row; all rows when absent.
    #[arg(long)]
    pub n: Option<u32>,
}

#[derive(Debug, Args, Serialize)]
pub struct NumeratorArgs {
    /// rebit, qubit, or an alpha value p/q.
    #[arg(long, default_value = "rebit")]
    pub family: String,
    #[arg(long, default_value_t = 1)]
    pub n: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EstimateMethod {
    Legendre,
    Mnatsakanov,
    Quadrature,
}

#[derive(Debug, Args, Serialize)]
pub struct EstimateArgs {
    #[arg(long, default_value = "1/2")]
    pub alpha: String,
    #[arg(long, default_value = "ptdet")]
    pub variable: Variable,
    #[arg(long, default_value_t = 200)]
    pub num_moments: usize,
    #[arg(long, value_enum, default_value_t = EstimateMethod::Legendre)]
    pub method: EstimateMethod,
}

#[derive(Debug, Args, Serialize)]
pub struct QuadratureArgs {
    #[arg(long, default_value = "1/2")]
    pub alpha: String,
    #[arg(long, default_value = "ptdet")]
    pub variable: Variable,
    #[arg(long, default_value_t = 30)]
    pub nodes: usize,
    #[arg(long, default_value = "hankel")]
    pub method: QuadratureMethod,
    /// CSV path for the "node,weight" rule.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct McArgs {
    #[arg(long, default_value = "real")]
    pub ring: Ring,
    #[arg(long, default_value = "hs")]
    pub measure: Measure,
    #[arg(long, default_value_t = 4)]
    pub d: usize,
    #[arg(long, default_value_t = 1)]
    pub n: u32,
    #[arg(long, default_value_t = 0)]
    pub k: u32,
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Estimate Pr(|rho^PT| >= 0) instead of a moment.
    #[arg(long)]
    pub separability: bool,
    /// Non-generic family separability for this beta.
    #[arg(long, conflicts_with = "separability")]
    pub beta: Option<u32>,
}

#[derive(Debug, Args, Serialize)]
pub struct HistArgs {
    #[arg(long, default_value = "real")]
    pub ring: Ring,
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 100)]
    pub bins: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// CSV path for the "x_lo,x_hi,y_lo,y_hi,count" table.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct DensityArgs {
    #[arg(long, default_value_t = 1000)]
    pub points: usize,
    /// CSV path for the "t,f_hs,f_bures" grid.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

/// Artifact header shared by every command.
pub fn header(cli: &Cli, precision: Option<Precision>, seed: Option<u64>) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("tool".into(), json!("dml"));
    m.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    m.insert("command".into(), json!(cli.command.name()));
    let mut config = serde_json::to_value(&cli.command)
        .ok()
        .and_then(|v| v.as_object().and_then(|o| o.values().next().cloned()))
        .unwrap_or(Value::Null);
    if let Value::Object(c) = &mut config {
        c.insert(
            "threads".into(),
            json!(cli.global.threads.unwrap_or_else(rayon::current_num_threads)),
        );
    }
    m.insert("config".into(), config);
    m.insert("seed".into(), json!(seed));
    m.insert(
        "precision_digits".into(),
        json!(precision.map(|p| p.decimal_digits())),
    );
    m
}

pub fn emit(cli: &Cli, mut head: Map<String, Value>, result: Value) -> CliResult<()> {
    if let Value::Object(r) = result {
        head.extend(r);
    }
    let text = serde_json::to_string_pretty(&Value::Object(head)).expect("JSON values serialize") + "\n";
    match &cli.global.output {
        Some(path) => write_file(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn write_file(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn error_record(cli: &Cli, e: &CliError) -> String {
    json!({
        "tool": "dml",
        "version": env!("CARGO_PKG_VERSION"),
        "command": cli.command.name(),
        "error": { "code": e.code(), "message": e.to_string() },
    })
    .to_string()
}
