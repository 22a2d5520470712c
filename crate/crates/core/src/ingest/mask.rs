//! Binary masks and outer-boundary tracing.

use std::collections::VecDeque;

use crate::error::{Result, ShapeError};
use crate::ingest::RawContour;
use crate::point::{self, Point};

/// Gray levels at or above this value are foreground.
pub const THRESHOLD: u8 = 128;

/// Moore neighbourhood in clockwise screen order (y grows downwards),
/// starting from the west neighbour.
const NEIGHBOURS: [(i64, i64); 8] = [
    (-1, 0),
    (-1, -1),
    (0, -1),
    (1, -1),
    (1, 0),
    (1, 1),
    (0, 1),
    (-1, 1),
];

/// A binary raster stored row by row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryMask {
    width: usize,
    height: usize,
    pixels: Vec<bool>,
}

impl BinaryMask {
    pub fn new(width: usize, height: usize, pixels: Vec<bool>) -> Result<Self> {
        if pixels.len() != width * height {
            return Err(ShapeError::DimensionMismatch {
                expected: width * height,
                found: pixels.len(),
            });
        }
        Ok(BinaryMask {
            width,
            height,
            pixels,
        })
    }

    /// Builds a mask from a predicate on `(x, y)`.
    pub fn from_fn(width: usize, height: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let pixels = (0..height)
            .flat_map(|y| (0..width).map(move |x| (x, y)))
            .map(|(x, y)| f(x, y))
            .collect();
        BinaryMask {
            width,
            height,
            pixels,
        }
    }

    /// Decodes a PGM image and thresholds it.
    pub fn from_pgm(bytes: &[u8]) -> Result<Self> {
        let image = image::load_from_memory_with_format(bytes, image::ImageFormat::Pnm)
            .map_err(|e| ShapeError::Parse {
                location: "PGM header".into(),
                message: e.to_string(),
            })?
            .into_luma8();
        let (width, height) = image.dimensions();
        Ok(BinaryMask {
            width: width as usize,
            height: height as usize,
            pixels: image.pixels().map(|p| p.0[0] >= THRESHOLD).collect(),
        })
    }

    /// Encodes the mask as a binary PGM with foreground 255.
    pub fn to_pgm(&self) -> Vec<u8> {
        let mut out = format!("P5\n{} {}\n255\n", self.width, self.height).into_bytes();
        out.extend(self.pixels.iter().map(|&p| if p { 255u8 } else { 0 }));
        out
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn get(&self, x: i64, y: i64) -> bool {
        x >= 0
            && y >= 0
            && (x as usize) < self.width
            && (y as usize) < self.height
            && self.pixels[y as usize * self.width + x as usize]
    }

    /// 8-connected component labels (0 = background, components numbered
    /// from 1 in raster order of their first pixel) and component sizes.
    pub fn components(&self) -> (Vec<u32>, Vec<usize>) {
        let mut labels = vec![0u32; self.pixels.len()];
        let mut sizes = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..self.pixels.len() {
            if !self.pixels[start] || labels[start] != 0 {
                continue;
            }
            let label = sizes.len() as u32 + 1;
            let mut size = 0;
            labels[start] = label;
            queue.push_back(start);
            while let Some(i) = queue.pop_front() {
                size += 1;
                let (x, y) = ((i % self.width) as i64, (i / self.width) as i64);
                for (dx, dy) in NEIGHBOURS {
                    let (nx, ny) = (x + dx, y + dy);
                    if self.get(nx, ny) {
                        let j = ny as usize * self.width + nx as usize;
                        if labels[j] == 0 {
                            labels[j] = label;
                            queue.push_back(j);
                        }
                    }
                }
            }
            sizes.push(size);
        }
        (labels, sizes)
    }
}

fn direction_of(dx: i64, dy: i64) -> usize {
    NEIGHBOURS
        .iter()
        .position(|&d| d == (dx, dy))
        .expect("backtrack pixel is adjacent")
}

/// Moore-neighbour trace of the component containing `start`, which must be
/// its first pixel in raster order. Stops when `start` is re-entered from
/// the initial backtrack direction (Jacob's criterion).
fn moore_trace(
    inside: impl Fn(i64, i64) -> bool,
    start: (i64, i64),
    limit: usize,
) -> Vec<(i64, i64)> {
    let mut boundary = vec![start];
    let mut current = start;
    let mut back = 0usize;
    let initial_back = (start.0 - 1, start.1);
    loop {
        let mut next = None;
        for step in 1..=8 {
            let d = (back + step) % 8;
            let candidate = (current.0 + NEIGHBOURS[d].0, current.1 + NEIGHBOURS[d].1);
            if inside(candidate.0, candidate.1) {
                let b = NEIGHBOURS[(back + step - 1) % 8];
                let b = (current.0 + b.0, current.1 + b.1);
                next = Some((candidate, b));
                break;
            }
        }
        let Some((pixel, back_pixel)) = next else {
            return boundary;
        };
        if pixel == start && back_pixel == initial_back {
            return boundary;
        }
        back = direction_of(back_pixel.0 - pixel.0, back_pixel.1 - pixel.1);
        current = pixel;
        boundary.push(pixel);
        if boundary.len() > limit {
            return boundary;
        }
    }
}

/// Outer boundaries of the 8-connected foreground components with at least
/// `min_area` pixels, in raster order of their first pixel.
///
/// Points are pixel coordinates `(column, row)`; each boundary is
/// counterclockwise in those coordinates (positive shoelace area) and starts
/// at the component's first pixel. Holes are ignored. Components whose
/// boundary has fewer than three pixels are skipped.
pub fn trace_mask(mask: &BinaryMask, min_area: usize) -> Vec<RawContour> {
    let (labels, sizes) = mask.components();
    let mut firsts = vec![usize::MAX; sizes.len()];
    for (i, &l) in labels.iter().enumerate() {
        if l != 0 && firsts[l as usize - 1] == usize::MAX {
            firsts[l as usize - 1] = i;
        }
    }
    let mut out = Vec::new();
    for (index, (&first, &size)) in firsts.iter().zip(&sizes).enumerate() {
        if size < min_area.max(1) {
            continue;
        }
        let label = index as u32 + 1;
        let inside = |x: i64, y: i64| {
            mask.get(x, y) && labels[y as usize * mask.width + x as usize] == label
        };
        let start = ((first % mask.width) as i64, (first / mask.width) as i64);
        let pixels = moore_trace(inside, start, 4 * size + 8);
        let mut points: Vec<Point> = pixels.iter().map(|&(x, y)| [x as f64, y as f64]).collect();
        if points.len() < 3 {
            continue;
        }
        if point::signed_area(&points) < 0.0 {
            points[1..].reverse();
        }
        out.push(RawContour {
            id: format!("component-{}", out.len()),
            group: String::new(),
            points,
        });
    }
    out
}
