//! The `shapeforge` command-line tool.

pub mod commands;
pub mod svg;

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, ValueEnum};
use serde::Serialize;
use shapeforge_core::analysis::Metric;
use shapeforge_core::ingest::{Format, DEFAULT_MIN_AREA, DEFAULT_RESAMPLE};
use shapeforge_core::ShapeError;

pub use commands::run;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Pairwise distance matrix.
    Distmat,
    /// Principal geodesic analysis.
    Pca,
    /// Group summaries and pairwise tests of distances to the reference.
    Test,
    /// Individuals control chart of distances to the reference.
    Monitor,
    /// Align outlines onto the first one.
    Align,
}

/// Shape the distances and tangent spaces are measured from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReferenceArg {
    Circle,
    Mean,
    File(PathBuf),
}

impl FromStr for ReferenceArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "circle" => Ok(ReferenceArg::Circle),
            "mean" => Ok(ReferenceArg::Mean),
            _ => match s.strip_prefix("file:") {
                Some(path) if !path.is_empty() => Ok(ReferenceArg::File(PathBuf::from(path))),
                Some(_) => Err("file reference needs a path, as in file:PATH".into()),
                None => Err(format!("expected circle, mean or file:PATH, got '{s}'")),
            },
        }
    }
}

impl std::fmt::Display for ReferenceArg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ReferenceArg::Circle => f.write_str("circle"),
            ReferenceArg::Mean => f.write_str("mean"),
            ReferenceArg::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: ShapeError| e.to_string())
}

fn parse_metric(s: &str) -> Result<Metric, String> {
    s.parse().map_err(|e: ShapeError| e.to_string())
}

/// Settings for one invocation.
#[derive(Debug, Clone, Parser)]
#[command(
    name = "shapeforge",
    version,
    about = "Shape analysis of planar particle outlines"
)]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,

    /// Contour files (CSV, JSON) or binary masks (PGM).
    #[arg(long = "input", required = true, num_args = 1..)]
    pub inputs: Vec<PathBuf>,

    /// Input format; inferred from the first input's extension when omitted.
    #[arg(long, value_parser = parse_format)]
    pub format: Option<Format>,

    /// Samples per resampled outline.
    #[arg(long, default_value_t = DEFAULT_RESAMPLE)]
    pub resample: usize,

    /// Shape metric: procrustes or elastic.
    #[arg(long, value_parser = parse_metric, default_value = "elastic")]
    pub metric: Metric,

    /// Reference shape: circle, mean or file:PATH.
    #[arg(long, default_value = "circle")]
    pub reference: ReferenceArg,

    /// Principal components to keep.
    #[arg(long, default_value_t = 2)]
    pub components: usize,

    /// Seed for the permutation test.
    #[arg(long, default_value_t = 42)]
    pub seed: u64,

    /// Output directory, created if missing.
    #[arg(long)]
    pub out: PathBuf,

    /// Random relabelings in the permutation test.
    #[arg(long, default_value_t = shapeforge_core::analysis::DEFAULT_PERMUTATIONS)]
    pub permutations: usize,

    /// Number of leading outlines forming the control chart's phase I.
    #[arg(long, default_value_t = shapeforge_core::stats::control::MIN_PHASE1, conflicts_with = "phase1_group")]
    pub phase1: usize,

    /// Use every outline of this group as phase I instead.
    #[arg(long)]
    pub phase1_group: Option<String>,

    /// Drop outlines whose solidity (area over convex hull area) is lower.
    #[arg(long)]
    pub min_solidity: Option<f64>,

    /// Smallest mask component traced, in pixels.
    #[arg(long, default_value_t = DEFAULT_MIN_AREA)]
    pub min_area: usize,
}

/// Errors reported by the tool.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Shape(e) => e.kind(),
            CliError::Usage(_) => "usage",
            CliError::Io { .. } => "io",
        }
    }

    /// Single-line JSON form written to standard error.
    pub fn to_json(&self) -> String {
        serde_json::json!({ "error": self.kind(), "message": self.to_string() }).to_string()
    }
}
