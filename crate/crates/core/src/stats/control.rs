//! Shewhart individuals chart on distances to a reference shape.

use serde::{Deserialize, Serialize};

use crate::error::{Result, ShapeError};
use crate::stats::summary::mean;

/// Bias-correction constant `d₂` for moving ranges of span 2.
pub const D2: f64 = 1.128;

/// Minimum phase-I sample size.
pub const MIN_PHASE1: usize = 20;

/// An individuals chart with limits at `mean ± 3·MR̄/d₂`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ControlChart {
    pub phase1: Vec<f64>,
    pub center: f64,
    pub average_moving_range: f64,
    /// Estimated process standard deviation, `MR̄ / d₂`.
    pub sigma: f64,
    pub upper: f64,
    pub lower: f64,
    pub phase2: Vec<f64>,
    /// Western Electric rule 1: a phase-II point beyond either limit.
    pub out_of_control: Vec<bool>,
}

impl ControlChart {
    pub fn flagged(&self) -> Vec<usize> {
        self.out_of_control
            .iter()
            .enumerate()
            .filter(|(_, &f)| f)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn is_out_of_control(&self, value: f64) -> bool {
        value > self.upper || value < self.lower
    }
}

pub fn control_chart(phase1: &[f64], phase2: &[f64]) -> Result<ControlChart> {
    if phase1.len() < MIN_PHASE1 {
        return Err(ShapeError::InvalidArgument(format!(
            "phase I needs at least {MIN_PHASE1} points, got {}",
            phase1.len()
        )));
    }
    let center = mean(phase1);
    let average_moving_range =
        phase1.windows(2).map(|w| (w[1] - w[0]).abs()).sum::<f64>() / (phase1.len() - 1) as f64;
    let sigma = average_moving_range / D2;
    let upper = center + 3.0 * sigma;
    let lower = center - 3.0 * sigma;
    Ok(ControlChart {
        phase1: phase1.to_vec(),
        center,
        average_moving_range,
        sigma,
        upper,
        lower,
        phase2: phase2.to_vec(),
        out_of_control: phase2.iter().map(|&x| x > upper || x < lower).collect(),
    })
}
