//! Loading, cleaning and resampling particle outlines.

pub mod formats;
pub mod mask;
pub mod resample;

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::elastic::DiscreteCurve;
use crate::error::{Result, ShapeError};
use crate::point::{self, Point};

pub use formats::{parse_csv, parse_json, write_csv, write_json};
pub use mask::{trace_mask, BinaryMask};
pub use resample::{resample_arclength, resample_points};

/// Default number of samples per resampled outline.
pub const DEFAULT_RESAMPLE: usize = 100;

/// Default minimum component size, in pixels, when tracing masks.
pub const DEFAULT_MIN_AREA: usize = 20;

/// An outline as read from a file, before cleaning.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RawContour {
    pub id: String,
    pub group: String,
    pub points: Vec<Point>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Pgm,
}

impl FromStr for Format {
    type Err = ShapeError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "pgm" => Ok(Format::Pgm),
            other => Err(ShapeError::InvalidArgument(format!(
                "unknown format '{other}'"
            ))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
            Format::Pgm => "pgm",
        })
    }
}

/// Parses point-list contours from bytes. Masks go through [`load_mask`].
pub fn parse_contours(bytes: &[u8], format: Format) -> Result<Vec<RawContour>> {
    match format {
        Format::Csv => parse_csv(bytes),
        Format::Json => parse_json(bytes),
        Format::Pgm => Err(ShapeError::InvalidArgument(
            "PGM input holds a mask, not contours".into(),
        )),
    }
}

/// Traces a PGM mask. Contours are labelled `<stem>#<i>` and grouped by the
/// file stem.
pub fn load_mask(bytes: &[u8], stem: &str, min_area: usize) -> Result<Vec<RawContour>> {
    let mask = BinaryMask::from_pgm(bytes)?;
    Ok(trace_mask(&mask, min_area)
        .into_iter()
        .enumerate()
        .map(|(i, c)| RawContour {
            id: format!("{stem}#{i}"),
            group: stem.to_string(),
            ..c
        })
        .collect())
}

/// Reads one input file.
pub fn load_file(path: &Path, format: Format, min_area: usize) -> Result<Vec<RawContour>> {
    let bytes =
        std::fs::read(path).map_err(|e| ShapeError::Io(format!("{}: {e}", path.display())))?;
    let tag = |e: ShapeError| match e {
        ShapeError::Parse { location, message } => ShapeError::Parse {
            location: format!("{}: {location}", path.display()),
            message,
        },
        ShapeError::Validation { location, message } => ShapeError::Validation {
            location: format!("{}: {location}", path.display()),
            message,
        },
        other => other,
    };
    match format {
        Format::Pgm => {
            let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("mask");
            load_mask(&bytes, stem, min_area).map_err(tag)
        }
        _ => parse_contours(&bytes, format).map_err(tag),
    }
}

/// Ratio of polygon area to convex hull area.
pub fn solidity(points: &[Point]) -> f64 {
    let hull = convex_hull(points);
    let hull_area = point::signed_area(&hull).abs();
    if hull_area == 0.0 {
        return 0.0;
    }
    point::signed_area(points).abs() / hull_area
}

/// Counterclockwise convex hull (monotone chain).
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let turn = |o: Point, a: Point, b: Point| point::cross(point::sub(a, o), point::sub(b, o));
    let mut hull: Vec<Point> = Vec::with_capacity(2 * pts.len());
    for pass in [pts.clone(), pts.iter().rev().copied().collect()] {
        let floor = hull.len();
        for p in pass {
            while hull.len() >= floor + 2
                && turn(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0
            {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

/// Preprocessing settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IngestOptions {
    /// Samples per resampled outline.
    pub resample: usize,
    /// Reject outlines whose solidity falls below this value (for example
    /// overlapping particles). Off when `None`.
    pub min_solidity: Option<f64>,
    /// Minimum component size when tracing masks.
    pub min_area: usize,
}

impl Default for IngestOptions {
    fn default() -> Self {
        IngestOptions {
            resample: DEFAULT_RESAMPLE,
            min_solidity: None,
            min_area: DEFAULT_MIN_AREA,
        }
    }
}

/// A preprocessed outline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub id: String,
    pub group: String,
    pub curve: DiscreteCurve,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub sources: Vec<String>,
    pub options: IngestOptions,
    /// Ids of outlines dropped by the solidity filter.
    pub rejected: Vec<String>,
}

/// Resampled, counterclockwise outlines sharing one sample count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    pub samples: Vec<Sample>,
    pub provenance: Provenance,
}

impl Dataset {
    /// Cleans and resamples raw contours in parallel, preserving order.
    pub fn from_contours(
        contours: Vec<RawContour>,
        sources: Vec<String>,
        options: IngestOptions,
    ) -> Result<Self> {
        let processed: Vec<std::result::Result<Sample, String>> = contours
            .into_par_iter()
            .map(|c| {
                if let Some(min) = options.min_solidity {
                    if solidity(&resample::dedupe(&c.points)) < min {
                        return Ok(Err(c.id));
                    }
                }
                let curve = resample_arclength(&c, options.resample)?.counterclockwise();
                Ok(Ok(Sample {
                    id: c.id,
                    group: c.group,
                    curve,
                }))
            })
            .collect::<Result<_>>()?;
        let mut samples = Vec::new();
        let mut rejected = Vec::new();
        for p in processed {
            match p {
                Ok(s) => samples.push(s),
                Err(id) => rejected.push(id),
            }
        }
        Ok(Dataset {
            samples,
            provenance: Provenance {
                sources,
                options,
                rejected,
            },
        })
    }

    /// Reads and preprocesses every file in order.
    pub fn load(
        paths: &[impl AsRef<Path>],
        format: Format,
        options: IngestOptions,
    ) -> Result<Self> {
        let mut contours = Vec::new();
        for p in paths {
            contours.extend(load_file(p.as_ref(), format, options.min_area)?);
        }
        let sources = paths
            .iter()
            .map(|p| p.as_ref().display().to_string())
            .collect();
        Self::from_contours(contours, sources, options)
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Group labels in order of first appearance.
    pub fn groups(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for s in &self.samples {
            if !out.contains(&s.group) {
                out.push(s.group.clone());
            }
        }
        out
    }
}
