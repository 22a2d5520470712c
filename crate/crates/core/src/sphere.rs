//! Geometry of the unit hypersphere in a flat coordinate vector space.
//!
//! Both the Kendall pre-shape space and the space of scale-normalized SRVFs
//! are unit spheres, so the exponential and logarithmic maps live here and
//! operate on plain coordinate slices.

use crate::error::{Result, ShapeError};

/// Pairs closer than this to antipodal are rejected by [`log`].
pub const CUT_LOCUS_TOLERANCE: f64 = 1e-6;

/// Tolerance on `|<v, base>|` accepted by [`exp`].
pub const TANGENT_TOLERANCE: f64 = 1e-8;

pub fn inner(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    inner(a, a).sqrt()
}

fn check_dims(a: &[f64], b: &[f64]) -> Result<()> {
    if a.len() != b.len() {
        return Err(ShapeError::DimensionMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    Ok(())
}

/// Great-circle distance between two unit vectors.
///
/// Equal to `arccos(<a, b>)` with the argument clamped to `[-1, 1]`; evaluated
/// through `atan2` so that nearly identical points keep full precision.
pub fn geodesic(a: &[f64], b: &[f64]) -> Result<f64> {
    check_dims(a, b)?;
    let c = inner(a, b).clamp(-1.0, 1.0);
    let s = a
        .iter()
        .zip(b)
        .map(|(x, y)| {
            let r = y - c * x;
            r * r
        })
        .sum::<f64>()
        .sqrt();
    Ok(s.atan2(c))
}

/// Spherical exponential map at `base`.
pub fn exp(base: &[f64], v: &[f64]) -> Result<Vec<f64>> {
    check_dims(base, v)?;
    let along = inner(base, v);
    if along.abs() > TANGENT_TOLERANCE * (1.0 + norm(v)) {
        return Err(ShapeError::InvalidTangent { inner: along });
    }
    let theta = norm(v);
    if theta == 0.0 {
        return Ok(base.to_vec());
    }
    let (s, c) = theta.sin_cos();
    let k = s / theta;
    let mut out: Vec<f64> = base.iter().zip(v).map(|(b, x)| c * b + k * x).collect();
    let n = norm(&out);
    out.iter_mut().for_each(|x| *x /= n);
    Ok(out)
}

/// Spherical logarithm at `base`; the returned vector has length equal to the
/// geodesic distance and is orthogonal to `base`.
pub fn log(base: &[f64], target: &[f64]) -> Result<Vec<f64>> {
    check_dims(base, target)?;
    let c = inner(base, target).clamp(-1.0, 1.0);
    let mut residual: Vec<f64> = base.iter().zip(target).map(|(b, t)| t - c * b).collect();
    // Remove the rounding-level component along base left by the subtraction.
    let drift = inner(base, &residual);
    residual
        .iter_mut()
        .zip(base)
        .for_each(|(r, b)| *r -= drift * b);
    let s = norm(&residual);
    let theta = s.atan2(c);
    if theta > std::f64::consts::PI - CUT_LOCUS_TOLERANCE {
        return Err(ShapeError::UndefinedLog { distance: theta });
    }
    if s == 0.0 {
        return Ok(vec![0.0; base.len()]);
    }
    let k = theta / s;
    residual.iter_mut().for_each(|r| *r *= k);
    Ok(residual)
}
