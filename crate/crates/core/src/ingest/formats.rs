//! CSV and JSON contour files.
//!
//! CSV: header `contour_id,group,point_index,x,y`, one row per point, the
//! points of a contour contiguous and in increasing `point_index` order.
//!
//! JSON: an array of `{ "id": string, "group": string, "points": [[x, y], …] }`.

use std::collections::HashSet;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Result, ShapeError};
use crate::ingest::RawContour;
use crate::point;

pub const CSV_HEADER: [&str; 5] = ["contour_id", "group", "point_index", "x", "y"];

#[derive(Debug, Deserialize, Serialize)]
struct CsvRow {
    contour_id: String,
    group: String,
    point_index: u64,
    x: f64,
    y: f64,
}

#[derive(Debug, Deserialize, Serialize)]
struct JsonContour {
    id: String,
    group: String,
    points: Vec<[f64; 2]>,
}

fn validate(contour: &RawContour, location: impl FnOnce() -> String) -> Result<()> {
    if contour.points.len() < 3 {
        return Err(ShapeError::Validation {
            location: location(),
            message: format!(
                "contour '{}' has {} points, at least 3 are required",
                contour.id,
                contour.points.len()
            ),
        });
    }
    Ok(())
}

fn csv_error(err: csv::Error) -> ShapeError {
    let location = err
        .position()
        .map_or_else(|| "input".to_string(), |p| format!("line {}", p.line()));
    let message = match err.kind() {
        csv::ErrorKind::Deserialize { err, .. } => err.to_string(),
        _ => err.to_string(),
    };
    ShapeError::Parse { location, message }
}

/// Parses the CSV contour format.
pub fn parse_csv<R: Read>(input: R) -> Result<Vec<RawContour>> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(input);
    let headers = reader.headers().map_err(csv_error)?.clone();
    if headers.is_empty() {
        return Ok(Vec::new());
    }
    if headers.iter().collect::<Vec<_>>() != CSV_HEADER {
        return Err(ShapeError::Parse {
            location: "line 1".into(),
            message: format!("expected header '{}'", CSV_HEADER.join(",")),
        });
    }

    let mut contours: Vec<RawContour> = Vec::new();
    let mut seen: HashSet<String> = HashSet::new();
    let mut last_index = 0u64;
    for record in reader.deserialize::<CsvRow>() {
        let row = record.map_err(csv_error)?;
        let line = contours.iter().map(|c| c.points.len()).sum::<usize>() + 2;
        let location = || format!("line {line}");
        if !row.x.is_finite() || !row.y.is_finite() {
            return Err(ShapeError::Validation {
                location: location(),
                message: format!("non-finite coordinate in contour '{}'", row.contour_id),
            });
        }
        match contours.last_mut() {
            Some(current) if current.id == row.contour_id => {
                if row.point_index <= last_index {
                    return Err(ShapeError::Parse {
                        location: location(),
                        message: format!(
                            "point_index {} of contour '{}' is not increasing",
                            row.point_index, row.contour_id
                        ),
                    });
                }
                if current.group != row.group {
                    return Err(ShapeError::Parse {
                        location: location(),
                        message: format!("contour '{}' changes group", row.contour_id),
                    });
                }
                current.points.push([row.x, row.y]);
            }
            previous => {
                if let Some(done) = previous {
                    let first_line = line - done.points.len();
                    validate(done, || format!("line {first_line}"))?;
                }
                if !seen.insert(row.contour_id.clone()) {
                    return Err(ShapeError::Parse {
                        location: location(),
                        message: format!(
                            "points of contour '{}' are not contiguous",
                            row.contour_id
                        ),
                    });
                }
                contours.push(RawContour {
                    id: row.contour_id,
                    group: row.group,
                    points: vec![[row.x, row.y]],
                });
            }
        }
        last_index = row.point_index;
    }
    if let Some(done) = contours.last() {
        let line = contours.iter().map(|c| c.points.len()).sum::<usize>() + 2 - done.points.len();
        validate(done, || format!("line {line}"))?;
    }
    Ok(contours)
}

/// Parses the JSON contour format.
pub fn parse_json<R: Read>(mut input: R) -> Result<Vec<RawContour>> {
    let mut text = String::new();
    input.read_to_string(&mut text)?;
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let records: Vec<JsonContour> = serde_json::from_str(&text).map_err(|e| ShapeError::Parse {
        location: format!("line {} column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    records
        .into_iter()
        .enumerate()
        .map(|(i, r)| {
            let contour = RawContour {
                id: r.id,
                group: r.group,
                points: r.points,
            };
            if let Some(j) = contour.points.iter().position(|&p| !point::is_finite(p)) {
                return Err(ShapeError::Validation {
                    location: format!("record {i}"),
                    message: format!("point {j} has a non-finite coordinate"),
                });
            }
            validate(&contour, || format!("record {i}"))?;
            Ok(contour)
        })
        .collect()
}

pub fn write_csv<W: Write>(contours: &[RawContour], output: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(output);
    let io = |e: csv::Error| ShapeError::Io(e.to_string());
    writer.write_record(CSV_HEADER).map_err(io)?;
    for c in contours {
        for (i, p) in c.points.iter().enumerate() {
            writer
                .write_record([
                    c.id.clone(),
                    c.group.clone(),
                    i.to_string(),
                    p[0].to_string(),
                    p[1].to_string(),
                ])
                .map_err(io)?;
        }
    }
    writer.flush()?;
    Ok(())
}

pub fn write_json<W: Write>(contours: &[RawContour], output: W) -> Result<()> {
    let records: Vec<JsonContour> = contours
        .iter()
        .map(|c| JsonContour {
            id: c.id.clone(),
            group: c.group.clone(),
            points: c.points.clone(),
        })
        .collect();
    serde_json::to_writer_pretty(output, &records).map_err(|e| ShapeError::Io(e.to_string()))
}
