//! Arc-length resampling of closed outlines.

use crate::elastic::{DiscreteCurve, MIN_SAMPLES};
use crate::error::{Result, ShapeError};
use crate::ingest::RawContour;
use crate::point::{self, Point};

/// Removes consecutive duplicates, including a repeated closing vertex.
pub fn dedupe(points: &[Point]) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::with_capacity(points.len());
    for &p in points {
        if out.last() != Some(&p) {
            out.push(p);
        }
    }
    while out.len() > 1 && out.first() == out.last() {
        out.pop();
    }
    out
}

/// Cumulative arc length at each vertex of the closed polygon, with the
/// perimeter as the final entry.
pub fn cumulative_lengths(points: &[Point]) -> Vec<f64> {
    let n = points.len();
    let mut cum = Vec::with_capacity(n + 1);
    let mut total = 0.0;
    cum.push(0.0);
    for i in 0..n {
        total += point::norm(point::sub(points[(i + 1) % n], points[i]));
        cum.push(total);
    }
    cum
}

/// `n` points at equal arc-length spacing along the closed polygon, the first
/// being the polygon's first vertex.
pub fn resample_points(points: &[Point], n: usize) -> Result<Vec<Point>> {
    if n < MIN_SAMPLES {
        return Err(ShapeError::InvalidArgument(format!(
            "resample count must be at least {MIN_SAMPLES}, got {n}"
        )));
    }
    if let Some(i) = points.iter().position(|&p| !point::is_finite(p)) {
        return Err(ShapeError::DegenerateContour(format!(
            "point {i} has a non-finite coordinate"
        )));
    }
    let distinct = dedupe(points);
    if distinct.len() < 3 {
        return Err(ShapeError::DegenerateContour(format!(
            "{} distinct points, at least 3 are required",
            distinct.len()
        )));
    }
    let m = distinct.len();
    let cum = cumulative_lengths(&distinct);
    let perimeter = cum[m];

    let mut out = Vec::with_capacity(n);
    let mut edge = 0;
    for i in 0..n {
        let s = perimeter * i as f64 / n as f64;
        while edge + 1 < m && cum[edge + 1] <= s {
            edge += 1;
        }
        let a = distinct[edge];
        let b = distinct[(edge + 1) % m];
        let len = cum[edge + 1] - cum[edge];
        out.push(point::lerp(a, b, (s - cum[edge]) / len));
    }
    Ok(out)
}

/// Resamples a contour by arc length into a closed curve of `n` samples.
pub fn resample_arclength(contour: &RawContour, n: usize) -> Result<DiscreteCurve> {
    let samples = resample_points(&contour.points, n).map_err(|e| match e {
        ShapeError::DegenerateContour(msg) => {
            ShapeError::DegenerateContour(format!("contour '{}': {msg}", contour.id))
        }
        other => other,
    })?;
    DiscreteCurve::closed(samples)
}
