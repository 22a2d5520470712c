//! Kendall shape space for planar landmark configurations.
//!
//! A [`Configuration`] of `k` planar landmarks is centered and scaled to a
//! [`PreShape`], a point on the unit hypersphere of centered `k × 2` matrices.
//! Shapes are pre-shapes modulo rotation: distances between shapes minimise
//! over SO(2) using the closed-form Procrustes solution in [`procrustes`].

pub mod procrustes;

use serde::{Deserialize, Serialize};

use crate::error::{Result, ShapeError};
use crate::point::{self, Point};
use crate::sphere;
use procrustes::{best_rotation, rotate_points, rotation_matrix, wrap_angle, Mat2, Svd2};

/// Centroid sizes at or below this are treated as degenerate.
pub const SIZE_EPSILON: f64 = 1e-9;

/// Minimum landmark count.
pub const MIN_LANDMARKS: usize = 3;

/// An ordered set of `k ≥ 3` planar landmarks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Configuration {
    points: Vec<Point>,
}

impl Configuration {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        if points.len() < MIN_LANDMARKS {
            return Err(ShapeError::InvalidConfiguration(format!(
                "need at least {MIN_LANDMARKS} landmarks, got {}",
                points.len()
            )));
        }
        if let Some(i) = points.iter().position(|&p| !point::is_finite(p)) {
            return Err(ShapeError::InvalidConfiguration(format!(
                "landmark {i} has a non-finite coordinate"
            )));
        }
        Ok(Configuration { points })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Applies `p ↦ scale · R(angle) p + translation` to every landmark.
    pub fn similarity(&self, scale: f64, angle: f64, translation: Point) -> Configuration {
        let (s, c) = angle.sin_cos();
        Configuration {
            points: self
                .points
                .iter()
                .map(|&p| point::add(point::scale(point::rotate_cs(p, c, s), scale), translation))
                .collect(),
        }
    }
}

/// A centered, unit-Frobenius-norm configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PreShape {
    points: Vec<Point>,
}

impl PreShape {
    /// Wraps points that already satisfy the pre-shape invariants up to
    /// rounding, renormalising to remove the rounding.
    pub(crate) fn from_normalized(mut points: Vec<Point>) -> Self {
        let c = point::centroid(&points);
        points.iter_mut().for_each(|p| *p = point::sub(*p, c));
        let n = frobenius_norm(&points);
        points
            .iter_mut()
            .for_each(|p| *p = point::scale(*p, 1.0 / n));
        PreShape { points }
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// Landmark count `k`.
    pub fn k(&self) -> usize {
        self.points.len()
    }

    pub fn flat(&self) -> &[f64] {
        self.points.as_flattened()
    }

    pub fn to_configuration(&self) -> Configuration {
        Configuration {
            points: self.points.clone(),
        }
    }

    pub fn rotated(&self, rotation: Rotation2) -> PreShape {
        PreShape {
            points: rotate_points(&self.points, rotation.angle),
        }
    }
}

/// A proper planar rotation, acting counterclockwise on points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rotation2 {
    pub angle: f64,
}

impl Rotation2 {
    pub const IDENTITY: Rotation2 = Rotation2 { angle: 0.0 };

    pub fn new(angle: f64) -> Self {
        Rotation2 {
            angle: wrap_angle(angle),
        }
    }

    /// Matrix acting on column vectors; `ΓᵀΓ = I`, `det Γ = 1`.
    pub fn matrix(&self) -> Mat2 {
        rotation_matrix(self.angle)
    }

    pub fn apply(&self, p: Point) -> Point {
        let (s, c) = self.angle.sin_cos();
        point::rotate_cs(p, c, s)
    }

    pub fn inverse(&self) -> Rotation2 {
        Rotation2::new(-self.angle)
    }

    pub fn then(&self, other: Rotation2) -> Rotation2 {
        Rotation2::new(self.angle + other.angle)
    }
}

/// An element of the tangent space of the pre-shape sphere at `base`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TangentVector {
    pub base: PreShape,
    pub components: Vec<Point>,
}

impl TangentVector {
    pub fn zero(base: &PreShape) -> Self {
        TangentVector {
            base: base.clone(),
            components: vec![[0.0, 0.0]; base.k()],
        }
    }

    pub fn flat(&self) -> &[f64] {
        self.components.as_flattened()
    }

    pub fn norm(&self) -> f64 {
        frobenius_norm(&self.components)
    }

    /// `<v, base>`; zero for a valid tangent vector.
    pub fn base_inner(&self) -> f64 {
        sphere::inner(self.flat(), self.base.flat())
    }
}

fn frobenius_norm(points: &[Point]) -> f64 {
    sphere::norm(points.as_flattened())
}

fn check_same_k(a: &PreShape, b: &PreShape) -> Result<()> {
    if a.k() != b.k() {
        return Err(ShapeError::DimensionMismatch {
            expected: a.k(),
            found: b.k(),
        });
    }
    Ok(())
}

/// Subtracts the centroid, i.e. applies `C = I − J/k`.
pub fn center(config: &Configuration) -> Configuration {
    let c = point::centroid(&config.points);
    Configuration {
        points: config.points.iter().map(|&p| point::sub(p, c)).collect(),
    }
}

/// Frobenius norm of the centered configuration.
pub fn centroid_size(config: &Configuration) -> f64 {
    frobenius_norm(&center(config).points)
}

pub fn to_preshape(config: &Configuration) -> Result<PreShape> {
    let centered = center(config);
    let size = frobenius_norm(&centered.points);
    if size <= SIZE_EPSILON {
        return Err(ShapeError::DegenerateShape {
            size,
            threshold: SIZE_EPSILON,
        });
    }
    Ok(PreShape {
        points: centered
            .points
            .into_iter()
            .map(|p| point::scale(p, 1.0 / size))
            .collect(),
    })
}

/// `tr(AᵀB)`, clamped to `[-1, 1]`.
pub fn frobenius_inner(a: &PreShape, b: &PreShape) -> Result<f64> {
    check_same_k(a, b)?;
    Ok(sphere::inner(a.flat(), b.flat()).clamp(-1.0, 1.0))
}

/// Great-circle distance on the pre-shape sphere (no rotation removed).
pub fn preshape_geodesic(a: &PreShape, b: &PreShape) -> Result<f64> {
    check_same_k(a, b)?;
    sphere::geodesic(a.flat(), b.flat())
}

/// The proper rotation that, applied to `b`, minimises `‖a − bΓ‖`.
pub fn optimal_rotation(a: &PreShape, b: &PreShape) -> Result<Rotation2> {
    check_same_k(a, b)?;
    Ok(Rotation2::new(best_rotation(&a.points, &b.points).0))
}

/// SVD of `Z_bᵀ Z_a`, exposing the singular values used by the closed-form
/// Procrustes distance.
pub fn procrustes_svd(a: &PreShape, b: &PreShape) -> Result<Svd2> {
    check_same_k(a, b)?;
    Ok(best_rotation(&a.points, &b.points).1)
}

/// `√2 (1 − Σλᵢ)^{1/2}` with `λᵢ` the determinant-corrected singular values of
/// `Z_bᵀ Z_a`.
///
/// Equal to [`partial_procrustes_distance`] but loses precision for nearly
/// identical shapes through the cancellation in `1 − Σλᵢ`.
pub fn partial_procrustes_closed_form(a: &PreShape, b: &PreShape) -> Result<f64> {
    let svd = procrustes_svd(a, b)?;
    Ok(std::f64::consts::SQRT_2 * (1.0 - svd.proper_trace()).max(0.0).sqrt())
}

/// `min over SO(2) of ‖Z_a − Z_b Γ‖`, evaluated as the residual norm at the
/// optimal rotation. Lies in `[0, √2]` for planar shapes.
pub fn partial_procrustes_distance(a: &PreShape, b: &PreShape) -> Result<f64> {
    let rotation = optimal_rotation(a, b)?;
    let aligned = b.rotated(rotation);
    let residual: Vec<Point> = a
        .points
        .iter()
        .zip(&aligned.points)
        .map(|(&p, &q)| point::sub(p, q))
        .collect();
    Ok(frobenius_norm(&residual))
}

/// Geodesic distance in shape space, `2 arcsin(d_p / 2)`.
pub fn shape_geodesic(a: &PreShape, b: &PreShape) -> Result<f64> {
    let dp = partial_procrustes_distance(a, b)?;
    Ok(2.0 * (0.5 * dp).clamp(0.0, 1.0).asin())
}

/// Rotates `target` into optimal alignment with `base`.
pub fn align(base: &PreShape, target: &PreShape) -> Result<PreShape> {
    Ok(target.rotated(optimal_rotation(base, target)?))
}

/// Spherical exponential map on the pre-shape sphere.
pub fn exp_map(base: &PreShape, v: &TangentVector) -> Result<PreShape> {
    if v.components.len() != base.k() {
        return Err(ShapeError::DimensionMismatch {
            expected: base.k(),
            found: v.components.len(),
        });
    }
    let drift = point::norm(point::centroid(&v.components));
    if drift > sphere::TANGENT_TOLERANCE * (1.0 + v.norm()) {
        return Err(ShapeError::InvalidTangent { inner: drift });
    }
    if v.norm() == 0.0 {
        return Ok(base.clone());
    }
    let out = sphere::exp(base.flat(), v.flat())?;
    Ok(PreShape::from_normalized(point::unflatten(&out)))
}

/// Spherical logarithm on the pre-shape sphere; `‖log‖` equals
/// [`preshape_geodesic`].
pub fn log_map(base: &PreShape, target: &PreShape) -> Result<TangentVector> {
    check_same_k(base, target)?;
    let v = sphere::log(base.flat(), target.flat())?;
    Ok(TangentVector {
        base: base.clone(),
        components: point::unflatten(&v),
    })
}

/// Projection to the Procrustes tangent space at `base`:
/// `v̂ = Z_target Γ̂ − cos(ρ̂) Z_base`, with `‖v̂‖ = sin ρ̂`.
pub fn procrustes_tangent_project(base: &PreShape, target: &PreShape) -> Result<TangentVector> {
    let aligned = align(base, target)?;
    let c = sphere::inner(base.flat(), aligned.flat());
    let mut components: Vec<Point> = aligned
        .points
        .iter()
        .zip(&base.points)
        .map(|(&t, &b)| point::sub(t, point::scale(b, c)))
        .collect();
    let drift = sphere::inner(components.as_flattened(), base.flat());
    components
        .iter_mut()
        .zip(&base.points)
        .for_each(|(v, &b)| *v = point::sub(*v, point::scale(b, drift)));
    Ok(TangentVector {
        base: base.clone(),
        components,
    })
}

/// Horizontal logarithm: the spherical log of the optimally rotated target.
/// Its norm is the shape-space geodesic distance.
pub fn horizontal_log(base: &PreShape, target: &PreShape) -> Result<TangentVector> {
    log_map(base, &align(base, target)?)
}

/// `k` points equally spaced on the unit circle, counterclockwise from `(1, 0)`.
pub fn circle_points(k: usize) -> Vec<Point> {
    (0..k)
        .map(|i| {
            let t = std::f64::consts::TAU * i as f64 / k as f64;
            [t.cos(), t.sin()]
        })
        .collect()
}

/// The perfect-circle reference pre-shape with `k` landmarks.
pub fn perfect_circle(k: usize) -> Result<PreShape> {
    to_preshape(&Configuration::new(circle_points(k))?)
}
