//! Deterministic inputs for the benchmarks.

use std::f64::consts::TAU;

use shapeforge_core::kendall::{to_preshape, Configuration, PreShape};
use shapeforge_core::{DiscreteCurve, Point};

/// Closed outline with `n` samples and a few lobes set by `seed`.
pub fn blob(n: usize, seed: u64) -> DiscreteCurve {
    let s = seed as f64;
    DiscreteCurve::closed(
        (0..n)
            .map(|i| {
                let t = TAU * i as f64 / n as f64;
                let r = 1.0 + 0.15 * (3.0 * t + s).cos() + 0.05 * (5.0 * t + 2.0 * s).sin();
                [r * t.cos(), (0.7 + 0.05 * s.sin()) * r * t.sin()]
            })
            .collect(),
    )
    .expect("blob has distinct samples")
}

pub fn landmarks(n: usize, seed: u64) -> PreShape {
    let points: Vec<Point> = blob(n, seed).into_samples();
    to_preshape(&Configuration::new(points).expect("finite points")).expect("non-degenerate")
}
