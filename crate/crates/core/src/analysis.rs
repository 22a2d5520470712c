//! Metric-agnostic analyses over resampled outlines.
//!
//! Outlines are compared either as landmark configurations in Kendall shape
//! space ([`Metric::Procrustes`], sample `i` of one outline corresponds to
//! sample `i` of another) or as elastic curves ([`Metric::Elastic`]).

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::elastic::{
    align_curves, elastic_distance_with, srvf_tangent, DiscreteCurve, ElasticOptions,
};
use crate::error::{Result, ShapeError};
use crate::kendall::{self, circle_points, shape_geodesic, Configuration, PreShape};
use crate::point::Point;
use crate::stats::{
    control_chart, frechet_mean, permutation_test, two_sample_ttest, ControlChart, GroupSummary,
    PgaModel,
};

/// Significance level for the pairwise group tests.
pub const ALPHA: f64 = 0.05;

/// Random relabelings drawn by the permutation test.
pub const DEFAULT_PERMUTATIONS: usize = 9_999;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    /// Shape-space geodesic distance between landmark pre-shapes.
    Procrustes,
    /// Elastic distance between square-root velocity functions.
    #[default]
    Elastic,
}

impl FromStr for Metric {
    type Err = ShapeError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "procrustes" => Ok(Metric::Procrustes),
            "elastic" => Ok(Metric::Elastic),
            other => Err(ShapeError::InvalidArgument(format!(
                "unknown metric '{other}'"
            ))),
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Metric::Procrustes => "procrustes",
            Metric::Elastic => "elastic",
        })
    }
}

/// The shape distances and tangent spaces are measured from.
#[derive(Debug, Clone, PartialEq)]
pub enum Reference {
    /// Equally spaced points on the unit circle, one per sample.
    Circle,
    /// Fréchet mean of the landmark pre-shapes of the input outlines.
    Mean,
    /// A given outline with the same sample count as the inputs.
    Curve(DiscreteCurve),
}

/// Metric plus elastic search settings.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Analyzer {
    pub metric: Metric,
    pub elastic: ElasticOptions,
}

/// Pre-shape of an outline's samples taken as landmarks.
pub fn preshape(curve: &DiscreteCurve) -> Result<PreShape> {
    kendall::to_preshape(&Configuration::new(curve.samples().to_vec())?)
}

fn check_counts(curves: &[DiscreteCurve]) -> Result<usize> {
    let n = curves
        .first()
        .map(DiscreteCurve::len)
        .ok_or_else(|| ShapeError::InvalidArgument("no outlines to analyse".into()))?;
    if let Some(bad) = curves.iter().find(|c| c.len() != n) {
        return Err(ShapeError::DimensionMismatch {
            expected: n,
            found: bad.len(),
        });
    }
    Ok(n)
}

impl Analyzer {
    pub fn new(metric: Metric) -> Self {
        Analyzer {
            metric,
            elastic: ElasticOptions::default(),
        }
    }

    /// Distance between two outlines under the configured metric.
    pub fn distance(&self, a: &DiscreteCurve, b: &DiscreteCurve) -> Result<f64> {
        match self.metric {
            Metric::Procrustes => shape_geodesic(&preshape(a)?, &preshape(b)?),
            Metric::Elastic => elastic_distance_with(a, b, &self.elastic),
        }
    }

    /// Symmetric matrix of pairwise distances with a zero diagonal.
    pub fn distance_matrix(&self, curves: &[DiscreteCurve]) -> Result<Vec<Vec<f64>>> {
        check_counts(curves)?;
        let n = curves.len();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        let values = pairs
            .par_iter()
            .map(|&(i, j)| self.distance(&curves[i], &curves[j]))
            .collect::<Result<Vec<_>>>()?;
        let mut matrix = vec![vec![0.0; n]; n];
        for (&(i, j), d) in pairs.iter().zip(values) {
            matrix[i][j] = d;
            matrix[j][i] = d;
        }
        Ok(matrix)
    }

    /// Resolves `reference` into an outline with the inputs' sample count.
    pub fn reference_curve(
        &self,
        reference: &Reference,
        curves: &[DiscreteCurve],
    ) -> Result<DiscreteCurve> {
        let n = check_counts(curves)?;
        match reference {
            Reference::Circle => DiscreteCurve::closed(circle_points(n)),
            Reference::Mean => {
                let shapes = curves.iter().map(preshape).collect::<Result<Vec<_>>>()?;
                DiscreteCurve::closed(frechet_mean(&shapes)?.points().to_vec())
            }
            Reference::Curve(c) => {
                if c.len() != n {
                    return Err(ShapeError::DimensionMismatch {
                        expected: n,
                        found: c.len(),
                    });
                }
                Ok(c.counterclockwise())
            }
        }
    }

    /// Distance of every outline to the reference outline.
    pub fn distances_to(
        &self,
        reference: &DiscreteCurve,
        curves: &[DiscreteCurve],
    ) -> Result<Vec<f64>> {
        curves
            .par_iter()
            .map(|c| self.distance(reference, c))
            .collect()
    }

    /// Principal geodesic analysis in the tangent space at `base`: Procrustes
    /// tangent projections of landmark pre-shapes, or logarithms of aligned
    /// SRVFs on the SRVF sphere.
    pub fn pga(
        &self,
        base: &DiscreteCurve,
        curves: &[DiscreteCurve],
        n_components: usize,
    ) -> Result<PgaModel> {
        match self.metric {
            Metric::Procrustes => {
                let shapes = curves.iter().map(preshape).collect::<Result<Vec<_>>>()?;
                crate::stats::pga(&shapes, &preshape(base)?, n_components)
            }
            Metric::Elastic => {
                let pairs = curves
                    .par_iter()
                    .map(|c| srvf_tangent(base, c, &self.elastic))
                    .collect::<Result<Vec<_>>>()?;
                let base_coords = pairs
                    .first()
                    .map(|p| p.0.clone())
                    .ok_or_else(|| ShapeError::InvalidArgument("no outlines to analyse".into()))?;
                let tangents: Vec<Vec<f64>> = pairs.into_iter().map(|p| p.1).collect();
                PgaModel::fit(&base_coords, &tangents, n_components)
            }
        }
    }

    /// Brings `moving` into alignment with `reference`.
    pub fn align(
        &self,
        reference: &DiscreteCurve,
        moving: &DiscreteCurve,
    ) -> Result<PairAlignment> {
        match self.metric {
            Metric::Procrustes => {
                let base = preshape(reference)?;
                let target = preshape(moving)?;
                let rotation = kendall::optimal_rotation(&base, &target)?;
                Ok(PairAlignment {
                    distance: shape_geodesic(&base, &target)?,
                    reference: base.points().to_vec(),
                    aligned: target.rotated(rotation).points().to_vec(),
                    rotation: rotation.angle,
                    shift: 0,
                    reversed: false,
                    warped_first: false,
                })
            }
            Metric::Elastic => {
                let pair = align_curves(reference, moving, &self.elastic)?;
                Ok(PairAlignment {
                    distance: pair.alignment.distance,
                    reference: pair.reference.into_samples(),
                    aligned: pair.aligned.into_samples(),
                    rotation: pair.alignment.rotation.angle,
                    shift: pair.alignment.shift,
                    reversed: pair.alignment.reversed,
                    warped_first: pair.alignment.warped_first,
                })
            }
        }
    }

    /// Re-scores an emitted alignment without optimising anything.
    pub fn score(&self, reference: &[Point], aligned: &[Point]) -> Result<f64> {
        match self.metric {
            Metric::Procrustes => {
                let a = kendall::to_preshape(&Configuration::new(reference.to_vec())?)?;
                let b = kendall::to_preshape(&Configuration::new(aligned.to_vec())?)?;
                kendall::preshape_geodesic(&a, &b)
            }
            Metric::Elastic => crate::elastic::score_alignment(
                &DiscreteCurve::closed(reference.to_vec())?,
                &DiscreteCurve::closed(aligned.to_vec())?,
            ),
        }
    }
}

/// Result of aligning one outline onto another.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairAlignment {
    pub distance: f64,
    /// The reference in the normalised frame the distance refers to.
    pub reference: Vec<Point>,
    /// The moved outline in the same frame.
    pub aligned: Vec<Point>,
    /// Rotation applied to the moved outline, in radians.
    pub rotation: f64,
    pub shift: usize,
    pub reversed: bool,
    /// The reference, not the moved outline, was reparameterised.
    pub warped_first: bool,
}

/// Welch and permutation tests between two groups.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairwiseTest {
    pub a: String,
    pub b: String,
    pub t: f64,
    pub df: f64,
    pub p_t: f64,
    pub p_perm: f64,
    pub significant_t: bool,
    pub significant_perm: bool,
}

/// Group summaries of distances to a reference and the pairwise tests.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupReport {
    pub groups: Vec<String>,
    pub summaries: Vec<GroupSummary>,
    pub pairwise: Vec<PairwiseTest>,
    pub alpha: f64,
    pub permutations: usize,
    pub seed: u64,
}

/// Splits `values` by label, groups in order of first appearance.
pub fn group_values(labels: &[String], values: &[f64]) -> Vec<(String, Vec<f64>)> {
    let mut out: Vec<(String, Vec<f64>)> = Vec::new();
    for (label, &v) in labels.iter().zip(values) {
        match out.iter_mut().find(|(l, _)| l == label) {
            Some((_, vs)) => vs.push(v),
            None => out.push((label.clone(), vec![v])),
        }
    }
    out
}

/// Summaries per group and, for every pair of groups with at least two
/// values each, Welch and permutation tests. Every pair uses the same seed.
pub fn group_report(
    groups: &[(String, Vec<f64>)],
    n_perm: usize,
    seed: u64,
) -> Result<GroupReport> {
    let summaries = groups
        .iter()
        .map(|(label, values)| GroupSummary::new(label.clone(), values))
        .collect::<Result<Vec<_>>>()?;
    let mut pairwise = Vec::new();
    for (i, (la, a)) in groups.iter().enumerate() {
        for (lb, b) in &groups[i + 1..] {
            if a.len() < 2 || b.len() < 2 {
                continue;
            }
            let t = two_sample_ttest(a, b)?;
            let p_perm = permutation_test(a, b, n_perm, seed)?;
            pairwise.push(PairwiseTest {
                a: la.clone(),
                b: lb.clone(),
                t: t.t,
                df: t.df,
                p_t: t.p_value,
                p_perm,
                significant_t: t.p_value < ALPHA,
                significant_perm: p_perm < ALPHA,
            });
        }
    }
    Ok(GroupReport {
        groups: groups.iter().map(|(l, _)| l.clone()).collect(),
        summaries,
        pairwise,
        alpha: ALPHA,
        permutations: n_perm,
        seed,
    })
}

/// Individuals chart of the distances, the first `phase1` of them forming
/// the reference period.
pub fn monitor(distances: &[f64], phase1: usize) -> Result<ControlChart> {
    if phase1 > distances.len() {
        return Err(ShapeError::InvalidArgument(format!(
            "phase I of {phase1} points requested but only {} outlines were given",
            distances.len()
        )));
    }
    control_chart(&distances[..phase1], &distances[phase1..])
}
