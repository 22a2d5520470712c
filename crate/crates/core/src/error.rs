use thiserror::Error;

/// Errors produced by the geometry, statistics and ingestion layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum ShapeError {
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),

    #[error("degenerate shape: centroid size {size:e} is below {threshold:e}")]
    DegenerateShape { size: f64, threshold: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("vector is not tangent at the base point (|<v, base>| = {inner:e})")]
    InvalidTangent { inner: f64 },

    #[error("logarithm undefined: points are {distance} apart, at or beyond the cut locus")]
    UndefinedLog { distance: f64 },

    #[error("degenerate curve: {0}")]
    DegenerateCurve(String),

    #[error("degenerate contour: {0}")]
    DegenerateContour(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    Convergence {
        iterations: usize,
        residual: f64,
        /// Flattened coordinates of the last iterate.
        last: Vec<f64>,
    },

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("validation error at {location}: {message}")]
    Validation { location: String, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl ShapeError {
    /// Short machine-readable kind, used by the CLI error reporter.
    pub fn kind(&self) -> &'static str {
        match self {
            ShapeError::InvalidConfiguration(_) => "invalid-configuration",
            ShapeError::DegenerateShape { .. } => "degenerate-shape",
            ShapeError::DimensionMismatch { .. } => "dimension",
            ShapeError::InvalidTangent { .. } => "invalid-tangent",
            ShapeError::UndefinedLog { .. } => "undefined-log",
            ShapeError::DegenerateCurve(_) => "degenerate-curve",
            ShapeError::DegenerateContour(_) => "degenerate-contour",
            ShapeError::InvalidArgument(_) => "argument",
            ShapeError::Convergence { .. } => "convergence",
            ShapeError::Parse { .. } => "parse",
            ShapeError::Validation { .. } => "validation",
            ShapeError::Io(_) => "io",
        }
    }
}

impl From<std::io::Error> for ShapeError {
    fn from(err: std::io::Error) -> Self {
        ShapeError::Io(err.to_string())
    }
}

pub type Result<T, E = ShapeError> = std::result::Result<T, E>;
