//! Small helpers for planar points stored as `[x, y]`.

/// A planar point or vector.
pub type Point = [f64; 2];

#[inline]
pub fn add(a: Point, b: Point) -> Point {
    [a[0] + b[0], a[1] + b[1]]
}

#[inline]
pub fn sub(a: Point, b: Point) -> Point {
    [a[0] - b[0], a[1] - b[1]]
}

#[inline]
pub fn scale(a: Point, s: f64) -> Point {
    [a[0] * s, a[1] * s]
}

#[inline]
pub fn dot(a: Point, b: Point) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

/// z-component of `a × b`.
#[inline]
pub fn cross(a: Point, b: Point) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

#[inline]
pub fn norm(a: Point) -> f64 {
    a[0].hypot(a[1])
}

#[inline]
pub fn lerp(a: Point, b: Point, t: f64) -> Point {
    [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]
}

/// Rotates `p` counterclockwise by the angle whose cosine and sine are given.
#[inline]
pub fn rotate_cs(p: Point, c: f64, s: f64) -> Point {
    [c * p[0] - s * p[1], s * p[0] + c * p[1]]
}

/// Arithmetic mean of the points.
pub fn centroid(points: &[Point]) -> Point {
    let n = points.len() as f64;
    let sum = points.iter().fold([0.0, 0.0], |acc, &p| add(acc, p));
    [sum[0] / n, sum[1] / n]
}

/// Signed area of the closed polygon (positive when counterclockwise).
pub fn signed_area(points: &[Point]) -> f64 {
    let n = points.len();
    let mut twice = 0.0;
    for i in 0..n {
        twice += cross(points[i], points[(i + 1) % n]);
    }
    0.5 * twice
}

/// Perimeter of the closed polygon through the points.
pub fn closed_length(points: &[Point]) -> f64 {
    let n = points.len();
    (0..n)
        .map(|i| norm(sub(points[(i + 1) % n], points[i])))
        .sum()
}

pub fn flatten(points: &[Point]) -> Vec<f64> {
    points.as_flattened().to_vec()
}

/// Inverse of [`flatten`]. The slice length must be even.
pub fn unflatten(values: &[f64]) -> Vec<Point> {
    debug_assert!(values.len() % 2 == 0);
    values.chunks_exact(2).map(|c| [c[0], c[1]]).collect()
}

pub fn is_finite(p: Point) -> bool {
    p[0].is_finite() && p[1].is_finite()
}
