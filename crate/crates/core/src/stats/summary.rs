//! Per-group summaries of distances to a reference shape.

use serde::{Deserialize, Serialize};

use crate::error::{Result, ShapeError};
use crate::kendall::{shape_geodesic, PreShape};

/// Box-plot statistics of one group of distances.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub label: String,
    pub count: usize,
    pub mean: f64,
    /// Unbiased sample variance; 0 for a singleton.
    pub variance: f64,
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
    pub lower_fence: f64,
    pub upper_fence: f64,
    /// Indices (within the group) of values outside the Tukey fences.
    pub outliers: Vec<usize>,
}

/// Distances of every sample to a reference, grouped by label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceReport {
    pub groups: Vec<String>,
    pub distances: Vec<Vec<f64>>,
    pub summaries: Vec<GroupSummary>,
}

/// Quantile by linear interpolation between order statistics
/// (position `p · (n − 1)` in the sorted sample).
pub fn quantile(sorted: &[f64], p: f64) -> f64 {
    let pos = p * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (pos - lo as f64) * (sorted[hi] - sorted[lo])
}

pub fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Unbiased variance; 0 for fewer than two values.
pub fn variance(values: &[f64]) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let m = mean(values);
    values.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (values.len() - 1) as f64
}

impl GroupSummary {
    pub fn new(label: impl Into<String>, values: &[f64]) -> Result<Self> {
        let label = label.into();
        if values.is_empty() {
            return Err(ShapeError::InvalidArgument(format!(
                "group '{label}' is empty"
            )));
        }
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        let q1 = quantile(&sorted, 0.25);
        let q3 = quantile(&sorted, 0.75);
        let iqr = q3 - q1;
        let lower_fence = q1 - 1.5 * iqr;
        let upper_fence = q3 + 1.5 * iqr;
        Ok(GroupSummary {
            count: values.len(),
            mean: mean(values),
            variance: variance(values),
            min: sorted[0],
            q1,
            median: quantile(&sorted, 0.5),
            q3,
            max: sorted[sorted.len() - 1],
            lower_fence,
            upper_fence,
            outliers: values
                .iter()
                .enumerate()
                .filter(|(_, &v)| v < lower_fence || v > upper_fence)
                .map(|(i, _)| i)
                .collect(),
            label,
        })
    }
}

impl DistanceReport {
    pub fn from_distances(groups: Vec<(String, Vec<f64>)>) -> Result<Self> {
        let summaries = groups
            .iter()
            .map(|(label, d)| GroupSummary::new(label.clone(), d))
            .collect::<Result<Vec<_>>>()?;
        let (groups, distances) = groups.into_iter().unzip();
        Ok(DistanceReport {
            groups,
            distances,
            summaries,
        })
    }
}

/// Shape-space geodesic distance of each pre-shape to `reference`.
pub fn distance_report(
    groups: &[(String, Vec<PreShape>)],
    reference: &PreShape,
) -> Result<DistanceReport> {
    let distances = groups
        .iter()
        .map(|(label, shapes)| {
            let d = shapes
                .iter()
                .map(|s| shape_geodesic(reference, s))
                .collect::<Result<Vec<_>>>()?;
            Ok((label.clone(), d))
        })
        .collect::<Result<Vec<_>>>()?;
    DistanceReport::from_distances(distances)
}
