//! Principal geodesic analysis: PCA of tangent-space projections.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Result, ShapeError};
use crate::kendall::{procrustes_tangent_project, PreShape};
use crate::sphere;

/// Eigenvalues below this fraction of the largest are treated as zero.
const RANK_TOLERANCE: f64 = 1e-12;

/// Principal geodesics of a sample at a fixed base point.
///
/// Tangent vectors are taken about the base point itself, so the second
/// moment (divisor `N`) is eigendecomposed and the base maps to the origin of
/// the score space. When the base is the sample's Fréchet mean this is the
/// ordinary covariance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PgaModel {
    /// Flattened coordinates of the base point.
    pub base: Vec<f64>,
    /// Orthonormal principal directions, tangent at `base`.
    pub components: Vec<Vec<f64>>,
    /// Variance along each component, non-increasing.
    pub variances: Vec<f64>,
    /// Per-sample coordinates along each component.
    pub scores: Vec<Vec<f64>>,
    /// Trace of the tangent second-moment matrix.
    pub total_variance: f64,
    /// Notes about requests that could not be met exactly.
    pub warnings: Vec<String>,
}

impl PgaModel {
    /// Fits the model to tangent vectors at `base`.
    pub fn fit(base: &[f64], tangents: &[Vec<f64>], n_components: usize) -> Result<Self> {
        if tangents.len() < 2 {
            return Err(ShapeError::InvalidArgument(format!(
                "principal geodesic analysis needs at least 2 samples, got {}",
                tangents.len()
            )));
        }
        let dim = base.len();
        if let Some(bad) = tangents.iter().find(|t| t.len() != dim) {
            return Err(ShapeError::DimensionMismatch {
                expected: dim,
                found: bad.len(),
            });
        }
        let n = tangents.len();
        let data = DMatrix::from_fn(n, dim, |i, j| tangents[i][j]);
        let second_moment = data.transpose() * &data / n as f64;
        let total_variance = second_moment.trace();

        let eigen = SymmetricEigen::new(second_moment);
        let mut order: Vec<usize> = (0..dim).collect();
        order.sort_by(|&a, &b| eigen.eigenvalues[b].total_cmp(&eigen.eigenvalues[a]));
        let largest = eigen.eigenvalues[order[0]].max(0.0);
        let rank = order
            .iter()
            .take_while(|&&i| {
                eigen.eigenvalues[i] > RANK_TOLERANCE * largest.max(f64::MIN_POSITIVE)
            })
            .count();

        let mut warnings = Vec::new();
        let kept = if n_components > rank {
            warnings.push(format!(
                "requested {n_components} components but the tangent data has rank {rank}; truncated"
            ));
            rank
        } else {
            n_components
        };

        let mut components = Vec::with_capacity(kept);
        let mut variances = Vec::with_capacity(kept);
        for &i in order.iter().take(kept) {
            let mut c: Vec<f64> = eigen.eigenvectors.column(i).iter().copied().collect();
            let pivot = c
                .iter()
                .copied()
                .max_by(|a, b| a.abs().total_cmp(&b.abs()))
                .unwrap_or(0.0);
            if pivot < 0.0 {
                c.iter_mut().for_each(|x| *x = -*x);
            }
            components.push(c);
            variances.push(eigen.eigenvalues[i].max(0.0));
        }

        let scores = tangents
            .iter()
            .map(|t| components.iter().map(|c| sphere::inner(t, c)).collect())
            .collect();

        Ok(PgaModel {
            base: base.to_vec(),
            components,
            variances,
            scores,
            total_variance,
            warnings,
        })
    }

    /// Fraction of the total tangent variance carried by each component.
    pub fn explained_fraction(&self) -> Vec<f64> {
        if self.total_variance <= 0.0 {
            return vec![0.0; self.variances.len()];
        }
        self.variances
            .iter()
            .map(|v| v / self.total_variance)
            .collect()
    }

    /// Tangent vector rebuilt from the scores of `sample`.
    pub fn reconstruct(&self, sample: usize) -> Vec<f64> {
        let mut out = vec![0.0; self.base.len()];
        for (s, c) in self.scores[sample].iter().zip(&self.components) {
            out.iter_mut().zip(c).for_each(|(o, x)| *o += s * x);
        }
        out
    }

    /// Variance not captured by the retained components.
    pub fn residual_variance(&self) -> f64 {
        (self.total_variance - self.variances.iter().sum::<f64>()).max(0.0)
    }
}

/// PGA of pre-shapes in the Procrustes tangent space at `base`.
pub fn pga(shapes: &[PreShape], base: &PreShape, n_components: usize) -> Result<PgaModel> {
    let tangents = shapes
        .iter()
        .map(|s| procrustes_tangent_project(base, s).map(|v| v.flat().to_vec()))
        .collect::<Result<Vec<_>>>()?;
    PgaModel::fit(base.flat(), &tangents, n_components)
}
