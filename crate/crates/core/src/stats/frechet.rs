//! Intrinsic (Fréchet) mean of shapes by iterative tangent averaging.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Result, ShapeError};
use crate::kendall::{exp_map, horizontal_log, shape_geodesic, PreShape, TangentVector};
use crate::point;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrechetOptions {
    /// Stop once the mean tangent vector is shorter than this.
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for FrechetOptions {
    fn default() -> Self {
        FrechetOptions {
            tolerance: 1e-10,
            max_iterations: 200,
        }
    }
}

/// Fréchet mean in shape space with default options.
pub fn frechet_mean(shapes: &[PreShape]) -> Result<PreShape> {
    frechet_mean_with(shapes, FrechetOptions::default())
}

/// Iterates: align every shape to the current estimate, average the
/// horizontal logarithms, and step along the exponential map.
///
/// Starts from the first shape; all shapes must lie within an open
/// hemisphere (`ρ̂ < π/2`) of it.
pub fn frechet_mean_with(shapes: &[PreShape], options: FrechetOptions) -> Result<PreShape> {
    let first = shapes
        .first()
        .ok_or_else(|| ShapeError::InvalidArgument("Fréchet mean of an empty sample".into()))?;
    for (i, s) in shapes.iter().enumerate() {
        if shape_geodesic(first, s)? >= FRAC_PI_2 {
            return Err(ShapeError::InvalidArgument(format!(
                "shape {i} is not within an open hemisphere of the initial estimate"
            )));
        }
    }

    let n = shapes.len() as f64;
    let mut mean = first.clone();
    let mut residual = f64::INFINITY;
    for _ in 0..=options.max_iterations {
        let mut sum = vec![[0.0, 0.0]; mean.k()];
        for s in shapes {
            let v = horizontal_log(&mean, s)?;
            for (acc, c) in sum.iter_mut().zip(&v.components) {
                *acc = point::add(*acc, *c);
            }
        }
        let step = TangentVector {
            base: mean.clone(),
            components: sum.into_iter().map(|p| point::scale(p, 1.0 / n)).collect(),
        };
        residual = step.norm();
        if residual < options.tolerance {
            return Ok(mean);
        }
        mean = exp_map(&mean, &step)?;
    }
    Err(ShapeError::Convergence {
        iterations: options.max_iterations,
        residual,
        last: mean.flat().to_vec(),
    })
}
