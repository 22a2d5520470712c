//! Elastic comparison of closed outlines via square-root velocity functions.
//!
//! A [`DiscreteCurve`] is a polyline sampled on a uniform parameter grid over
//! `[0, 1]`. Its SRVF holds one value per segment,
//! `q_i = ḟ_i / √‖ḟ_i‖`, with `ḟ_i` the finite-difference velocity. Closed
//! curves include the segment joining the last sample back to the first.
//! After scaling to unit L² norm the SRVFs of all curves lie on a unit sphere,
//! on which [`align`] measures geodesic distance modulo rotation, seed point
//! and reparameterisation.

pub mod align;
pub mod matching;

use serde::{Deserialize, Serialize};

use crate::error::{Result, ShapeError};
use crate::point::{self, Point};

pub use align::{
    align_curves, align_onto, elastic_distance, elastic_distance_with, score_alignment,
    srvf_tangent, AlignedPair, Alignment, ElasticOptions,
};

/// Minimum number of samples in a curve.
pub const MIN_SAMPLES: usize = 8;

/// A sampled planar curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscreteCurve {
    samples: Vec<Point>,
    closed: bool,
}

impl DiscreteCurve {
    pub fn new(samples: Vec<Point>, closed: bool) -> Result<Self> {
        if samples.len() < MIN_SAMPLES {
            return Err(ShapeError::DegenerateCurve(format!(
                "need at least {MIN_SAMPLES} samples, got {}",
                samples.len()
            )));
        }
        if let Some(i) = samples.iter().position(|&p| !point::is_finite(p)) {
            return Err(ShapeError::DegenerateCurve(format!(
                "sample {i} has a non-finite coordinate"
            )));
        }
        let curve = DiscreteCurve { samples, closed };
        if let Some(i) = (0..curve.segment_count()).find(|&i| curve.segment(i) == [0.0, 0.0]) {
            return Err(ShapeError::DegenerateCurve(format!(
                "segment {i} has zero length"
            )));
        }
        Ok(curve)
    }

    pub fn closed(samples: Vec<Point>) -> Result<Self> {
        Self::new(samples, true)
    }

    pub fn open(samples: Vec<Point>) -> Result<Self> {
        Self::new(samples, false)
    }

    pub(crate) fn from_parts(samples: Vec<Point>, closed: bool) -> Self {
        DiscreteCurve { samples, closed }
    }

    pub fn samples(&self) -> &[Point] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<Point> {
        self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// Number of segments: `n` for closed curves, `n − 1` for open ones.
    pub fn segment_count(&self) -> usize {
        if self.closed {
            self.samples.len()
        } else {
            self.samples.len() - 1
        }
    }

    fn segment(&self, i: usize) -> Point {
        let n = self.samples.len();
        point::sub(self.samples[(i + 1) % n], self.samples[i])
    }

    pub fn length(&self) -> f64 {
        (0..self.segment_count())
            .map(|i| point::norm(self.segment(i)))
            .sum()
    }

    /// Signed enclosed area; positive for counterclockwise traversal.
    pub fn signed_area(&self) -> f64 {
        point::signed_area(&self.samples)
    }

    /// Point at curve parameter `u ∈ [0, segment_count]`, linear within
    /// segments.
    pub fn point_at(&self, u: f64) -> Point {
        let n = self.samples.len();
        let m = self.segment_count();
        let u = u.clamp(0.0, m as f64);
        let i = (u.floor() as usize).min(m - 1);
        let t = u - i as f64;
        point::lerp(self.samples[i], self.samples[(i + 1) % n], t)
    }

    /// Same curve traversed counterclockwise, keeping the first sample.
    pub fn counterclockwise(&self) -> DiscreteCurve {
        if !self.closed || self.signed_area() >= 0.0 {
            return self.clone();
        }
        let mut samples = Vec::with_capacity(self.samples.len());
        samples.push(self.samples[0]);
        samples.extend(self.samples[1..].iter().rev());
        DiscreteCurve::from_parts(samples, true)
    }

    /// Closed curve with sample `shift` moved to the front.
    pub fn shifted(&self, shift: usize) -> DiscreteCurve {
        let mut samples = self.samples.clone();
        samples.rotate_left(shift % self.samples.len());
        DiscreteCurve::from_parts(samples, self.closed)
    }

    /// Translated to zero sample centroid and scaled to unit length.
    pub fn normalized(&self) -> DiscreteCurve {
        let c = point::centroid(&self.samples);
        let s = 1.0 / self.length();
        DiscreteCurve::from_parts(
            self.samples
                .iter()
                .map(|&p| point::scale(point::sub(p, c), s))
                .collect(),
            self.closed,
        )
    }

    pub fn rotated(&self, angle: f64) -> DiscreteCurve {
        DiscreteCurve::from_parts(
            crate::kendall::procrustes::rotate_points(&self.samples, angle),
            self.closed,
        )
    }

    pub fn map_points(&self, f: impl Fn(Point) -> Point) -> DiscreteCurve {
        DiscreteCurve::from_parts(self.samples.iter().map(|&p| f(p)).collect(), self.closed)
    }
}

/// Square-root velocity representation of a [`DiscreteCurve`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SrvfCurve {
    values: Vec<Point>,
    closed: bool,
    normalized: bool,
}

impl SrvfCurve {
    pub fn values(&self) -> &[Point] {
        &self.values
    }

    pub fn flat(&self) -> &[f64] {
        self.values.as_flattened()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// Uniform parameter spacing `1 / segments`.
    pub fn dt(&self) -> f64 {
        1.0 / self.values.len() as f64
    }

    /// Discrete L² norm, `(Σ‖q_i‖² Δt)^{1/2}`.
    pub fn l2_norm(&self) -> f64 {
        (self.values.iter().map(|&q| point::dot(q, q)).sum::<f64>() * self.dt()).sqrt()
    }

    /// Discrete L² inner product.
    pub fn inner(&self, other: &SrvfCurve) -> Result<f64> {
        if self.len() != other.len() {
            return Err(ShapeError::DimensionMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| point::dot(a, b))
            .sum::<f64>()
            * self.dt())
    }

    /// Coordinates scaled by `√Δt`, so that Euclidean geometry on the result
    /// is the discrete L² geometry of the SRVF.
    pub fn sphere_coordinates(&self) -> Vec<f64> {
        let s = self.dt().sqrt();
        self.flat().iter().map(|x| x * s).collect()
    }

    /// Inverse of [`SrvfCurve::sphere_coordinates`].
    pub fn from_sphere_coordinates(coords: &[f64], closed: bool) -> SrvfCurve {
        let m = coords.len() / 2;
        let s = (m as f64).sqrt();
        SrvfCurve {
            values: point::unflatten(&coords.iter().map(|x| x * s).collect::<Vec<_>>()),
            closed,
            normalized: false,
        }
    }
}

/// SRVF of `curve`; with `normalize` the result has unit L² norm.
pub fn srvf_transform(curve: &DiscreteCurve, normalize: bool) -> Result<SrvfCurve> {
    let m = curve.segment_count();
    let per_dt = m as f64;
    let mut values = Vec::with_capacity(m);
    for i in 0..m {
        let velocity = point::scale(curve.segment(i), per_dt);
        let speed = point::norm(velocity);
        if speed == 0.0 {
            return Err(ShapeError::DegenerateCurve(format!(
                "segment {i} has zero length"
            )));
        }
        values.push(point::scale(velocity, 1.0 / speed.sqrt()));
    }
    let mut q = SrvfCurve {
        values,
        closed: curve.closed,
        normalized: false,
    };
    if normalize {
        let norm = q.l2_norm();
        q.values
            .iter_mut()
            .for_each(|v| *v = point::scale(*v, 1.0 / norm));
        q.normalized = true;
    }
    Ok(q)
}

/// Rebuilds the curve from its SRVF by summing `q_i ‖q_i‖ Δt` from `start`.
///
/// For closed SRVFs the final (closing) sample is dropped, so a round trip
/// returns the same number of samples.
pub fn srvf_inverse(q: &SrvfCurve, start: Point) -> DiscreteCurve {
    let dt = q.dt();
    let mut samples = Vec::with_capacity(q.len() + 1);
    let mut cur = start;
    samples.push(cur);
    for &v in &q.values {
        cur = point::add(cur, point::scale(v, point::norm(v) * dt));
        samples.push(cur);
    }
    if q.closed {
        samples.pop();
    }
    DiscreteCurve::from_parts(samples, q.closed)
}
