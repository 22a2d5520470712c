//! Joint optimisation over rotation, seed point and reparameterisation.

use serde::{Deserialize, Serialize};

use crate::elastic::matching::{apply_warp, optimal_warp_table, ChordTable, Warp};
use crate::elastic::{srvf_transform, DiscreteCurve, SrvfCurve};
use crate::error::{Result, ShapeError};
use crate::kendall::procrustes::{best_rotation, rotate_points, Svd2};
use crate::kendall::Rotation2;
use crate::point::Point;
use crate::sphere;

/// Search settings for elastic matching.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ElasticOptions {
    /// Seed shifts, ranked by their rigid (rotation-only) score, that are
    /// refined with reparameterisation.
    pub candidate_shifts: usize,
    /// Cap on the alternation between rotation and reparameterisation.
    pub max_iterations: usize,
}

impl Default for ElasticOptions {
    fn default() -> Self {
        ElasticOptions {
            candidate_shifts: 8,
            max_iterations: 12,
        }
    }
}

/// How the moving curve was brought onto the reference.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Alignment {
    /// Geodesic distance between the reference and aligned SRVFs.
    pub distance: f64,
    /// The moving curve was traversed clockwise and has been reversed.
    pub reversed: bool,
    /// Index of the (oriented) moving sample used as the new seed point.
    pub shift: usize,
    /// Reparameterisation applied to the shifted moving curve.
    pub warp: Warp,
    /// Rotation applied after reparameterisation.
    pub rotation: Rotation2,
    /// The first argument was the one reparameterised, see [`align_curves`].
    pub warped_first: bool,
}

/// A pair of normalised curves whose SRVFs are at the reported distance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlignedPair {
    pub reference: DiscreteCurve,
    pub aligned: DiscreteCurve,
    pub alignment: Alignment,
}

fn check_compatible(a: &DiscreteCurve, b: &DiscreteCurve) -> Result<()> {
    if a.len() != b.len() || a.is_closed() != b.is_closed() {
        return Err(ShapeError::DimensionMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    Ok(())
}

fn rigid(fixed: &[Point], moving: &[Point], dt: f64) -> (f64, f64) {
    let (angle, svd): (f64, Svd2) = best_rotation(fixed, moving);
    (svd.proper_trace() * dt, angle)
}

struct Candidate {
    cos: f64,
    angle: f64,
    shift: usize,
    warp: Warp,
}

fn refine(
    fixed: &SrvfCurve,
    moving: &DiscreteCurve,
    table: &ChordTable,
    shift: usize,
    start: (f64, f64),
    options: &ElasticOptions,
) -> Result<Candidate> {
    let m = fixed.len();
    let dt = fixed.dt();
    let mut best = Candidate {
        cos: start.0,
        angle: start.1,
        shift,
        warp: Warp::identity(m),
    };
    for _ in 0..options.max_iterations {
        // <f, R v> = <Rᵀ f, v>: rotate the fixed SRVF instead of the moving curve
        let counter = rotate_points(fixed.values(), -best.angle);
        let warp = optimal_warp_table(&counter, table, shift);
        if warp == best.warp {
            break;
        }
        let warped = srvf_transform(&apply_warp(moving, &warp), true)?;
        let (cos, angle) = rigid(fixed.values(), warped.values(), dt);
        if cos <= best.cos {
            break;
        }
        best = Candidate {
            cos,
            angle,
            shift,
            warp,
        };
    }
    Ok(best)
}

/// Aligns `moving` onto a fixed `reference`: only `moving` is rotated,
/// re-seeded and reparameterised.
///
/// Both curves are first oriented counterclockwise and normalised to zero
/// centroid and unit length; the returned pair holds those normalised forms.
pub fn align_onto(
    reference: &DiscreteCurve,
    moving: &DiscreteCurve,
    options: &ElasticOptions,
) -> Result<AlignedPair> {
    check_compatible(reference, moving)?;
    let fixed_curve = reference.counterclockwise().normalized();
    let oriented = moving.counterclockwise();
    let reversed = oriented.samples() != moving.samples();
    let moving_curve = oriented.normalized();

    let fixed = srvf_transform(&fixed_curve, true)?;
    let q_moving = srvf_transform(&moving_curve, true)?;
    let m = fixed.len();
    let dt = fixed.dt();

    // Rigid score for every seed shift.
    let shifts = if moving_curve.is_closed() {
        moving_curve.len()
    } else {
        1
    };
    let mut rotated_values = q_moving.values().to_vec();
    let mut ranked: Vec<(usize, f64, f64)> = Vec::with_capacity(shifts);
    for s in 0..shifts {
        let (cos, angle) = rigid(fixed.values(), &rotated_values, dt);
        ranked.push((s, cos, angle));
        rotated_values.rotate_left(1);
    }
    ranked.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));

    let table = ChordTable::new(&moving_curve);
    let mut best: Option<Candidate> = None;
    for &(s, cos, angle) in ranked.iter().take(options.candidate_shifts.max(1)) {
        let candidate = refine(
            &fixed,
            &moving_curve.shifted(s),
            &table,
            s,
            (cos, angle),
            options,
        )?;
        if best.as_ref().is_none_or(|b| candidate.cos > b.cos) {
            best = Some(candidate);
        }
    }
    let best = best.expect("at least one shift is scored");
    debug_assert_eq!(best.warp.segments(), m);

    let aligned = apply_warp(&moving_curve.shifted(best.shift), &best.warp)
        .normalized()
        .rotated(best.angle);
    Ok(AlignedPair {
        reference: fixed_curve,
        aligned,
        alignment: Alignment {
            distance: best.cos.clamp(-1.0, 1.0).acos(),
            reversed,
            shift: best.shift,
            warp: best.warp,
            rotation: Rotation2::new(best.angle),
            warped_first: false,
        },
    })
}

/// Symmetric elastic alignment: both directions are searched and the better
/// one is kept.
///
/// When warping `a` onto `b` wins, the returned `reference` is the
/// reparameterised `a` and `aligned` is `b` rotated into its frame.
pub fn align_curves(
    a: &DiscreteCurve,
    b: &DiscreteCurve,
    options: &ElasticOptions,
) -> Result<AlignedPair> {
    let forward = align_onto(a, b, options)?;
    let backward = align_onto(b, a, options)?;
    if forward.alignment.distance <= backward.alignment.distance {
        return Ok(forward);
    }
    let undo = -backward.alignment.rotation.angle;
    Ok(AlignedPair {
        reference: backward.aligned.rotated(undo),
        aligned: backward.reference.rotated(undo),
        alignment: Alignment {
            warped_first: true,
            ..backward.alignment
        },
    })
}

/// Elastic shape distance with default search settings.
pub fn elastic_distance(a: &DiscreteCurve, b: &DiscreteCurve) -> Result<f64> {
    elastic_distance_with(a, b, &ElasticOptions::default())
}

/// `min(d(a → b), d(b → a))`, the geodesic distance between normalised SRVFs
/// minimised over rotation, seed point and reparameterisation.
pub fn elastic_distance_with(
    a: &DiscreteCurve,
    b: &DiscreteCurve,
    options: &ElasticOptions,
) -> Result<f64> {
    Ok(align_curves(a, b, options)?.alignment.distance)
}

/// Distance between two curves as they stand, without any optimisation.
pub fn score_alignment(reference: &DiscreteCurve, aligned: &DiscreteCurve) -> Result<f64> {
    check_compatible(reference, aligned)?;
    let qa = srvf_transform(reference, true)?;
    let qb = srvf_transform(aligned, true)?;
    Ok(qa.inner(&qb)?.clamp(-1.0, 1.0).acos())
}

/// Tangent vector at the SRVF of `base` pointing to the elastically aligned
/// `curve`, in sphere coordinates (see [`SrvfCurve::sphere_coordinates`]).
///
/// Returns `(base coordinates, tangent)`.
pub fn srvf_tangent(
    base: &DiscreteCurve,
    curve: &DiscreteCurve,
    options: &ElasticOptions,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let pair = align_onto(base, curve, options)?;
    let qb = srvf_transform(&pair.reference, true)?.sphere_coordinates();
    let qc = srvf_transform(&pair.aligned, true)?.sphere_coordinates();
    let v = sphere::log(&qb, &qc)?;
    Ok((qb, v))
}
