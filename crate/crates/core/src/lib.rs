//! Shape analysis of planar particle outlines.
//!
//! The crate is organised in layers:
//!
//! * [`kendall`]: landmark shape space (pre-shapes, Procrustes alignment,
//!   geodesics, exponential and logarithmic maps).
//! * [`elastic`]: landmark-free comparison of closed outlines through the
//!   square-root velocity representation.
//! * [`stats`]: Fréchet means, principal geodesic analysis, distance
//!   summaries, hypothesis tests and control charts.
//! * [`ingest`]: contour files, binary masks and arc-length resampling.
//! * [`analysis`]: the metric-agnostic glue used by the command line tool.

pub mod analysis;
pub mod elastic;
pub mod error;
pub mod ingest;
pub mod kendall;
pub mod point;
pub mod sphere;
pub mod stats;

pub use elastic::{DiscreteCurve, SrvfCurve};
pub use error::{Result, ShapeError};
pub use ingest::{Dataset, RawContour};
pub use kendall::{Configuration, PreShape, Rotation2, TangentVector};
pub use point::Point;
