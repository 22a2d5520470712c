//! Random inputs shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::TAU;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use shapeforge_core::kendall::{to_preshape, Configuration, PreShape};
use shapeforge_core::Point;

/// Star-shaped simple polygon with `m` vertices in counterclockwise order.
pub fn star_polygon(rng: &mut ChaCha8Rng, m: usize, jitter: f64) -> Vec<Point> {
    let mut angles: Vec<f64> = (0..m)
        .map(|i| (i as f64 + rng.random_range(-0.35..0.35)) * TAU / m as f64)
        .collect();
    angles.sort_by(f64::total_cmp);
    angles
        .into_iter()
        .map(|t| {
            let r = 1.0 + rng.random_range(-jitter..jitter);
            [r * t.cos(), r * t.sin()]
        })
        .collect()
}

pub fn random_points(rng: &mut ChaCha8Rng, k: usize) -> Vec<Point> {
    (0..k)
        .map(|_| [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)])
        .collect()
}

pub fn random_preshape(rng: &mut ChaCha8Rng, k: usize) -> PreShape {
    loop {
        let config = Configuration::new(random_points(rng, k)).unwrap();
        if let Ok(z) = to_preshape(&config) {
            return z;
        }
    }
}

/// Random scale in `[0.1, 10]`, angle and translation applied to `points`.
pub fn random_similarity(rng: &mut ChaCha8Rng, points: &[Point]) -> Vec<Point> {
    let scale = 10f64.powf(rng.random_range(-1.0..1.0));
    let (s, c) = rng.random_range(0.0..TAU).sin_cos();
    let t = [
        rng.random_range(-100.0..100.0),
        rng.random_range(-100.0..100.0),
    ];
    points
        .iter()
        .map(|p| {
            [
                scale * (c * p[0] - s * p[1]) + t[0],
                scale * (s * p[0] + c * p[1]) + t[1],
            ]
        })
        .collect()
}

/// Frobenius inner product of two flattened point lists.
pub fn flat_inner(a: &[Point], b: &[Point]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(p, q)| p[0] * q[0] + p[1] * q[1])
        .sum()
}

/// Minimises `f` on `[lo, hi]` by golden-section search.
pub fn golden_min(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > tol {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        }
    }
    let x = 0.5 * (lo + hi);
    (x, f(x))
}
