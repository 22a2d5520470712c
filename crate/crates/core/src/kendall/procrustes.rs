//! Closed-form 2 × 2 singular value decomposition and planar Procrustes
//! rotation.

use crate::point::{rotate_cs, Point};

/// A 2 × 2 matrix in row-major order.
pub type Mat2 = [[f64; 2]; 2];

/// Rotation matrix for a counterclockwise turn by `angle`.
pub fn rotation_matrix(angle: f64) -> Mat2 {
    let (s, c) = angle.sin_cos();
    [[c, -s], [s, c]]
}

/// Decomposition `M = R(left) · diag(s1, s2) · R(right)` with `R(·)` proper
/// rotations.
///
/// `s1 ≥ |s2|`; `s2` carries the sign of `det(M)`, so `|s1|, |s2|` are the
/// singular values and `s1 + s2` is their sum with the smallest one sign-flipped
/// whenever a reflection would otherwise be needed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Svd2 {
    pub left: f64,
    pub right: f64,
    pub s1: f64,
    pub s2: f64,
}

impl Svd2 {
    pub fn new(m: Mat2) -> Self {
        let e = 0.5 * (m[0][0] + m[1][1]);
        let f = 0.5 * (m[0][0] - m[1][1]);
        let g = 0.5 * (m[1][0] + m[0][1]);
        let h = 0.5 * (m[1][0] - m[0][1]);
        let q = e.hypot(h);
        let r = f.hypot(g);
        let a1 = g.atan2(f);
        let a2 = h.atan2(e);
        Svd2 {
            left: 0.5 * (a2 + a1),
            right: 0.5 * (a2 - a1),
            s1: q + r,
            s2: q - r,
        }
    }

    /// Unsigned singular values, largest first.
    pub fn singular_values(&self) -> [f64; 2] {
        [self.s1, self.s2.abs()]
    }

    /// `Σλ` over SO(2): the singular-value sum with the determinant correction.
    pub fn proper_trace(&self) -> f64 {
        self.s1 + self.s2
    }

    /// Recomposes the matrix.
    pub fn matrix(&self) -> Mat2 {
        let l = rotation_matrix(self.left);
        let r = rotation_matrix(self.right);
        let mut out = [[0.0; 2]; 2];
        let d = [self.s1, self.s2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = (0..2).map(|k| l[i][k] * d[k] * r[k][j]).sum();
            }
        }
        out
    }
}

/// `Bᵀ A` for two k × 2 point matrices.
pub fn cross_covariance(a: &[Point], b: &[Point]) -> Mat2 {
    let mut m = [[0.0; 2]; 2];
    for (pa, pb) in a.iter().zip(b) {
        for r in 0..2 {
            for c in 0..2 {
                m[r][c] += pb[r] * pa[c];
            }
        }
    }
    m
}

/// Counterclockwise angle that best rotates the points of `b` onto `a` in the
/// least-squares sense, together with the corrected singular-value sum.
///
/// For row-vector configurations the right-multiplying rotation is
/// `Γ̂ = R(left) R(right)`, the rotation factors of the SVD of `Bᵀ A`; acting
/// on points as column vectors this is a turn by `-(left + right)`.
pub fn best_rotation(a: &[Point], b: &[Point]) -> (f64, Svd2) {
    let svd = Svd2::new(cross_covariance(a, b));
    let angle = -(svd.left + svd.right);
    (wrap_angle(angle), svd)
}

/// Maps an angle to `(-π, π]`.
pub fn wrap_angle(angle: f64) -> f64 {
    use std::f64::consts::{PI, TAU};
    let mut a = angle % TAU;
    if a <= -PI {
        a += TAU;
    } else if a > PI {
        a -= TAU;
    }
    a
}

pub fn rotate_points(points: &[Point], angle: f64) -> Vec<Point> {
    let (s, c) = angle.sin_cos();
    points.iter().map(|&p| rotate_cs(p, c, s)).collect()
}
