//! Dynamic-programming search for the reparameterisation of one curve that
//! best matches the SRVF of another.
//!
//! The search runs over the full `(m + 1) × (m + 1)` lattice of grid indices
//! with slope-limited steps. A step from `(k, l)` to `(k + di, l + dj)` maps
//! the parameter interval `[k, k + di]` of the fixed curve linearly onto
//! `[l, l + dj]` of the moving curve; the moving curve is resampled at the
//! warped grid and its chord SRVFs scored against the fixed SRVF.

use serde::{Deserialize, Serialize};

use crate::elastic::DiscreteCurve;
use crate::point::{self, Point};

/// Allowed lattice steps `(di, dj)`.
pub const STEPS: [(usize, usize); 5] = [(1, 1), (1, 2), (2, 1), (1, 3), (3, 1)];

/// A monotone piecewise-linear reparameterisation, stored as lattice
/// vertices from `(0, 0)` to `(m, m)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Warp {
    vertices: Vec<(usize, usize)>,
}

impl Warp {
    pub fn identity(segments: usize) -> Self {
        Warp {
            vertices: (0..=segments).map(|i| (i, i)).collect(),
        }
    }

    /// Builds a warp from lattice vertices, checking that it starts at the
    /// origin and that every step is one of [`STEPS`].
    pub fn from_vertices(vertices: Vec<(usize, usize)>) -> Option<Self> {
        if vertices.first() != Some(&(0, 0)) {
            return None;
        }
        let ok = vertices.windows(2).all(|w| {
            let (a, b) = (w[0], w[1]);
            b.0 > a.0 && b.1 > a.1 && STEPS.contains(&(b.0 - a.0, b.1 - a.1))
        });
        let last = *vertices.last()?;
        (ok && last.0 == last.1).then_some(Warp { vertices })
    }

    pub fn vertices(&self) -> &[(usize, usize)] {
        &self.vertices
    }

    pub fn segments(&self) -> usize {
        self.vertices.last().map_or(0, |v| v.0)
    }

    pub fn is_identity(&self) -> bool {
        self.vertices.iter().all(|&(i, j)| i == j)
    }

    /// `γ(t_i)` in segment units for every grid index `i = 0..=m`.
    pub fn grid_values(&self) -> Vec<f64> {
        let m = self.segments();
        let mut out = vec![0.0; m + 1];
        for w in self.vertices.windows(2) {
            let ((k, l), (i, j)) = (w[0], w[1]);
            let slope = (j - l) as f64 / (i - k) as f64;
            for s in 0..(i - k) {
                out[k + s] = l as f64 + s as f64 * slope;
            }
        }
        out[m] = m as f64;
        out
    }
}

/// Resamples `curve` at the warped grid. Closed curves keep `m` samples,
/// open curves `m + 1`.
pub fn apply_warp(curve: &DiscreteCurve, warp: &Warp) -> DiscreteCurve {
    let gamma = warp.grid_values();
    let count = if curve.is_closed() {
        gamma.len() - 1
    } else {
        gamma.len()
    };
    DiscreteCurve::from_parts(
        gamma[..count].iter().map(|&u| curve.point_at(u)).collect(),
        curve.is_closed(),
    )
}

// Chords per lattice start index: one for (1,1), (1,2) and (1,3), two for
// (2,1) and three for (3,1).
const CHORDS: usize = 8;
const CHORD_OFFSET: [usize; 5] = [0, 1, 2, 4, 5];

/// Square-root-velocity chords of a curve for every lattice step, indexed by
/// the start index of the step on the moving curve.
///
/// For closed curves the table is shared by all cyclic shifts: shift `s`
/// reads entry `(l + s) mod m` for start index `l`.
#[derive(Debug, Clone)]
pub struct ChordTable {
    chords: Vec<[Point; CHORDS]>,
    closed: bool,
}

impl ChordTable {
    pub fn new(curve: &DiscreteCurve) -> Self {
        let samples = curve.samples();
        let n = samples.len();
        let m = curve.segment_count();
        let per_dt = m as f64;
        // sample at whole index `i` (wrapping for closed curves)
        let at = |i: usize| {
            samples[if curve.is_closed() {
                i % n
            } else {
                i.min(n - 1)
            }]
        };
        // point at index `b + num / den`
        let pos = |b: usize, num: usize, den: usize| -> Point {
            let (whole, rest) = (num / den, num % den);
            if rest == 0 {
                at(b + whole)
            } else {
                point::lerp(at(b + whole), at(b + whole + 1), rest as f64 / den as f64)
            }
        };
        let chord = |p0: Point, p1: Point| -> Point {
            let v = point::scale(point::sub(p1, p0), per_dt);
            let speed = point::norm(v);
            if speed > 0.0 {
                point::scale(v, 1.0 / speed.sqrt())
            } else {
                [0.0, 0.0]
            }
        };
        let chords = (0..m)
            .map(|b| {
                let mut c = [[0.0; 2]; CHORDS];
                for (s, &(di, dj)) in STEPS.iter().enumerate() {
                    for r in 0..di {
                        c[CHORD_OFFSET[s] + r] =
                            chord(pos(b, r * dj, di), pos(b, (r + 1) * dj, di));
                    }
                }
                c
            })
            .collect();
        ChordTable {
            chords,
            closed: curve.is_closed(),
        }
    }

    pub fn segments(&self) -> usize {
        self.chords.len()
    }
}

/// Finds the lattice path maximising `Σ_i <fixed_i, q̃_i> Δt`, where `q̃` is the
/// SRVF of `moving` resampled along the path.
///
/// `fixed` holds one SRVF value per segment; `moving` must have the same
/// segment count.
pub fn optimal_warp(fixed: &[Point], moving: &DiscreteCurve) -> Warp {
    optimal_warp_table(fixed, &ChordTable::new(moving), 0)
}

/// [`optimal_warp`] against the moving curve cyclically shifted by `shift`
/// (closed curves only; open curves require `shift == 0`).
pub fn optimal_warp_table(fixed: &[Point], table: &ChordTable, shift: usize) -> Warp {
    let m = fixed.len();
    assert_eq!(m, table.segments(), "segment counts differ");
    assert!(table.closed || shift == 0, "open curves cannot be shifted");
    let dt = 1.0 / m as f64;
    let chords: Vec<&[Point; CHORDS]> = (0..m).map(|l| &table.chords[(l + shift) % m]).collect();

    let width = m + 1;
    let mut score = vec![f64::NEG_INFINITY; width * width];
    let mut back = vec![u8::MAX; width * width];
    score[0] = 0.0;

    for i in 1..=m {
        for j in 1..=m {
            let mut best = f64::NEG_INFINITY;
            let mut best_step = u8::MAX;
            for (s, &(di, dj)) in STEPS.iter().enumerate() {
                if di > i || dj > j {
                    continue;
                }
                let (k, l) = (i - di, j - dj);
                let prev = score[k * width + l];
                if prev == f64::NEG_INFINITY {
                    continue;
                }
                let c = &chords[l][CHORD_OFFSET[s]..CHORD_OFFSET[s] + di];
                let gain: f64 = c
                    .iter()
                    .zip(&fixed[k..k + di])
                    .map(|(&v, &f)| point::dot(f, v))
                    .sum();
                let total = prev + gain * dt;
                if total > best {
                    best = total;
                    best_step = s as u8;
                }
            }
            score[i * width + j] = best;
            back[i * width + j] = best_step;
        }
    }

    let mut vertices = vec![(m, m)];
    let (mut i, mut j) = (m, m);
    while (i, j) != (0, 0) {
        let (di, dj) = STEPS[back[i * width + j] as usize];
        i -= di;
        j -= dj;
        vertices.push((i, j));
    }
    vertices.reverse();
    Warp { vertices }
}

/// Score of a warp: the unnormalised inner product the DP maximises.
pub fn warp_score(fixed: &[Point], moving: &DiscreteCurve, warp: &Warp) -> f64 {
    let warped = apply_warp(moving, warp);
    let m = fixed.len();
    let per_dt = m as f64;
    (0..m)
        .map(|i| {
            let p0 = warped.samples()[i];
            let p1 = if i + 1 < warped.len() {
                warped.samples()[i + 1]
            } else {
                warped.samples()[0]
            };
            let v = point::scale(point::sub(p1, p0), per_dt);
            let speed = point::norm(v);
            if speed > 0.0 {
                point::dot(fixed[i], v) / speed.sqrt()
            } else {
                0.0
            }
        })
        .sum::<f64>()
        / per_dt
}
