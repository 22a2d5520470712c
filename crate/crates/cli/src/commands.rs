//! The five analyses and their report files.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use shapeforge_core::analysis::{
    group_report, group_values, Analyzer, GroupReport, Metric, Reference,
};
use shapeforge_core::ingest::{
    self, resample_arclength, Dataset, Format, IngestOptions, RawContour,
};
use shapeforge_core::stats::{control_chart, ControlChart, GroupSummary, PgaModel};
use shapeforge_core::{DiscreteCurve, Point};

use crate::svg::{Document, Frame, PALETTE};
use crate::{CliError, Command, ReferenceArg, RunConfig};

/// Files written by a run.
#[derive(Debug, Clone, Serialize)]
pub struct Outcome {
    pub command: Command,
    pub samples: usize,
    pub outputs: Vec<PathBuf>,
}

fn infer_format(path: &Path) -> Result<Format, CliError> {
    let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
    ext.parse().map_err(|_| {
        CliError::Usage(format!(
            "cannot infer the format of '{}'; pass --format",
            path.display()
        ))
    })
}

fn write(path: PathBuf, contents: impl AsRef<[u8]>) -> Result<PathBuf, CliError> {
    fs::write(&path, contents).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    Ok(path)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialise");
    s.push('\n');
    s
}

fn csv_string(rows: Vec<Vec<String>>) -> Result<String, CliError> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer
            .write_record(row)
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

fn require_samples(dataset: &Dataset, min: usize, command: &str) -> Result<(), CliError> {
    if dataset.len() < min {
        return Err(CliError::Usage(format!(
            "{command} needs at least {min} outlines, got {}",
            dataset.len()
        )));
    }
    Ok(())
}

/// Loads the inputs, runs the requested analysis and writes its reports.
pub fn run(config: &RunConfig) -> Result<Outcome, CliError> {
    if config.components == 0 {
        return Err(CliError::Usage("--components must be at least 1".into()));
    }
    let format = match config.format {
        Some(f) => f,
        None => infer_format(&config.inputs[0])?,
    };
    let options = IngestOptions {
        resample: config.resample,
        min_solidity: config.min_solidity,
        min_area: config.min_area,
    };
    let dataset = Dataset::load(&config.inputs, format, options)?;
    fs::create_dir_all(&config.out).map_err(|e| CliError::Io {
        path: config.out.display().to_string(),
        message: e.to_string(),
    })?;

    let analyzer = Analyzer::new(config.metric);
    let outputs = match config.command {
        Command::Distmat => distmat(config, &analyzer, &dataset)?,
        Command::Pca => pca(config, &analyzer, &dataset, format)?,
        Command::Test => test(config, &analyzer, &dataset, format)?,
        Command::Monitor => monitor(config, &analyzer, &dataset, format)?,
        Command::Align => align(config, &analyzer, &dataset)?,
    };
    Ok(Outcome {
        command: config.command,
        samples: dataset.len(),
        outputs,
    })
}

fn curves(dataset: &Dataset) -> Vec<DiscreteCurve> {
    dataset.samples.iter().map(|s| s.curve.clone()).collect()
}

fn ids(dataset: &Dataset) -> Vec<String> {
    dataset.samples.iter().map(|s| s.id.clone()).collect()
}

fn labels(dataset: &Dataset) -> Vec<String> {
    dataset.samples.iter().map(|s| s.group.clone()).collect()
}

/// Resolves the reference flag against the loaded outlines.
pub fn reference_curve(
    config: &RunConfig,
    analyzer: &Analyzer,
    curves: &[DiscreteCurve],
    input_format: Format,
) -> Result<DiscreteCurve, CliError> {
    let reference = match &config.reference {
        ReferenceArg::Circle => Reference::Circle,
        ReferenceArg::Mean => Reference::Mean,
        ReferenceArg::File(path) => {
            let format = infer_format(path).unwrap_or(input_format);
            let contours = ingest::load_file(path, format, config.min_area)?;
            let first: &RawContour = contours.first().ok_or_else(|| {
                CliError::Usage(format!(
                    "reference file '{}' holds no outline",
                    path.display()
                ))
            })?;
            Reference::Curve(resample_arclength(first, config.resample)?)
        }
    };
    Ok(analyzer.reference_curve(&reference, curves)?)
}

fn distmat(
    config: &RunConfig,
    analyzer: &Analyzer,
    dataset: &Dataset,
) -> Result<Vec<PathBuf>, CliError> {
    require_samples(dataset, 2, "distmat")?;
    let matrix = analyzer.distance_matrix(&curves(dataset))?;
    let ids = ids(dataset);
    let mut rows = vec![std::iter::once("contour_id".to_string())
        .chain(ids.iter().cloned())
        .collect()];
    for (id, row) in ids.iter().zip(&matrix) {
        rows.push(
            std::iter::once(id.clone())
                .chain(row.iter().map(f64::to_string))
                .collect(),
        );
    }
    Ok(vec![write(
        config.out.join("distances.csv"),
        csv_string(rows)?,
    )?])
}

#[derive(Serialize)]
struct VarianceReport<'a> {
    metric: Metric,
    reference: String,
    samples: usize,
    variances: &'a [f64],
    explained_fraction: Vec<f64>,
    total_variance: f64,
    residual_variance: f64,
    warnings: &'a [String],
}

fn pca(
    config: &RunConfig,
    analyzer: &Analyzer,
    dataset: &Dataset,
    format: Format,
) -> Result<Vec<PathBuf>, CliError> {
    require_samples(dataset, 2, "pca")?;
    let curves = curves(dataset);
    let base = reference_curve(config, analyzer, &curves, format)?;
    let model = analyzer.pga(&base, &curves, config.components)?;

    let k = model.components.len();
    let mut header = vec!["contour_id".to_string(), "group".to_string()];
    header.extend((1..=k).map(|i| format!("pc{i}")));
    let mut rows = vec![header];
    for (sample, scores) in dataset.samples.iter().zip(&model.scores) {
        let mut row = vec![sample.id.clone(), sample.group.clone()];
        row.extend(scores.iter().map(f64::to_string));
        rows.push(row);
    }
    let report = VarianceReport {
        metric: config.metric,
        reference: config.reference.to_string(),
        samples: dataset.len(),
        variances: &model.variances,
        explained_fraction: model.explained_fraction(),
        total_variance: model.total_variance,
        residual_variance: model.residual_variance(),
        warnings: &model.warnings,
    };
    Ok(vec![
        write(config.out.join("scores.csv"), csv_string(rows)?)?,
        write(config.out.join("variance.json"), to_json(&report))?,
        write(config.out.join("pca.svg"), pca_svg(dataset, &model))?,
    ])
}

fn pca_svg(dataset: &Dataset, model: &PgaModel) -> String {
    let coord = |s: &Vec<f64>| {
        (
            s.first().copied().unwrap_or(0.0),
            s.get(1).copied().unwrap_or(0.0),
        )
    };
    let points: Vec<(f64, f64)> = model.scores.iter().map(coord).collect();
    let frame = Frame::fit(640.0, 520.0, points.iter().copied().chain([(0.0, 0.0)]));
    let mut doc = Document::new(frame.width, frame.height);
    doc.axes(&frame, "PG 1", "PG 2");
    let groups = dataset.groups();
    for (sample, &(x, y)) in dataset.samples.iter().zip(&points) {
        let g = groups.iter().position(|g| *g == sample.group).unwrap_or(0);
        doc.circle(frame.map(x, y), 3.5, PALETTE[g % PALETTE.len()]);
    }
    let origin = frame.map(0.0, 0.0);
    doc.line(
        (origin.0 - 7.0, origin.1),
        (origin.0 + 7.0, origin.1),
        "black",
        false,
    );
    doc.line(
        (origin.0, origin.1 - 7.0),
        (origin.0, origin.1 + 7.0),
        "black",
        false,
    );
    for (i, g) in groups.iter().enumerate() {
        let y = frame.margin + 16.0 + 16.0 * i as f64;
        doc.circle(
            (frame.width - frame.margin - 110.0, y - 4.0),
            4.0,
            PALETTE[i % PALETTE.len()],
        );
        doc.text((frame.width - frame.margin - 100.0, y), 12.0, "start", g);
    }
    doc.finish()
}

#[derive(Serialize)]
struct SampleDistance {
    id: String,
    group: String,
    distance: f64,
}

#[derive(Serialize)]
struct TestReport {
    metric: Metric,
    reference: String,
    #[serde(flatten)]
    report: GroupReport,
    distances: Vec<SampleDistance>,
}

fn test(
    config: &RunConfig,
    analyzer: &Analyzer,
    dataset: &Dataset,
    format: Format,
) -> Result<Vec<PathBuf>, CliError> {
    require_samples(dataset, 1, "test")?;
    let curves = curves(dataset);
    let reference = reference_curve(config, analyzer, &curves, format)?;
    let distances = analyzer.distances_to(&reference, &curves)?;
    let grouped = group_values(&labels(dataset), &distances);
    let report = group_report(&grouped, config.permutations, config.seed)?;
    let svg = boxplot_svg(&report.summaries);
    let out = TestReport {
        metric: config.metric,
        reference: config.reference.to_string(),
        report,
        distances: dataset
            .samples
            .iter()
            .zip(&distances)
            .map(|(s, &d)| SampleDistance {
                id: s.id.clone(),
                group: s.group.clone(),
                distance: d,
            })
            .collect(),
    };
    Ok(vec![
        write(config.out.join("report.json"), to_json(&out))?,
        write(config.out.join("distances.svg"), svg)?,
    ])
}

fn boxplot_svg(summaries: &[GroupSummary]) -> String {
    let width = 160.0 + 120.0 * summaries.len() as f64;
    let extent = summaries.iter().flat_map(|s| [(0.0, s.min), (1.0, s.max)]);
    let frame = Frame::fit(width, 480.0, extent);
    let mut doc = Document::new(width, frame.height);
    doc.axes(&frame, "group", "distance to reference");
    let slot = (width - 2.0 * frame.margin) / summaries.len().max(1) as f64;
    for (i, s) in summaries.iter().enumerate() {
        let colour = PALETTE[i % PALETTE.len()];
        let cx = frame.margin + slot * (i as f64 + 0.5);
        let y = |v: f64| frame.map(0.0, v).1;
        let half = 0.25 * slot;
        let whisker_lo = s.lower_fence.max(s.min);
        let whisker_hi = s.upper_fence.min(s.max);
        doc.rect(
            (cx - half, y(s.q3)),
            (2.0 * half, y(s.q1) - y(s.q3)),
            colour,
        );
        doc.line(
            (cx - half, y(s.median)),
            (cx + half, y(s.median)),
            colour,
            false,
        );
        doc.line((cx, y(s.q3)), (cx, y(whisker_hi)), colour, false);
        doc.line((cx, y(s.q1)), (cx, y(whisker_lo)), colour, false);
        doc.line(
            (cx - 0.5 * half, y(s.mean)),
            (cx + 0.5 * half, y(s.mean)),
            colour,
            true,
        );
        doc.text(
            (cx, frame.height - frame.margin + 30.0),
            12.0,
            "middle",
            &s.label,
        );
    }
    doc.finish()
}

#[derive(Serialize)]
struct ChartPoint {
    id: String,
    group: String,
    distance: f64,
    out_of_control: bool,
}

#[derive(Serialize)]
struct ChartReport {
    metric: Metric,
    reference: String,
    center: f64,
    upper: f64,
    lower: f64,
    sigma: f64,
    average_moving_range: f64,
    phase1: Vec<ChartPoint>,
    phase2: Vec<ChartPoint>,
    flagged: Vec<String>,
}

/// Splits sample indices into phase I and phase II.
pub fn phases(config: &RunConfig, dataset: &Dataset) -> Result<(Vec<usize>, Vec<usize>), CliError> {
    let all = 0..dataset.len();
    match &config.phase1_group {
        Some(group) => {
            let (p1, p2): (Vec<usize>, Vec<usize>) =
                all.partition(|&i| dataset.samples[i].group == *group);
            if p1.is_empty() {
                return Err(CliError::Usage(format!(
                    "no outlines in phase I group '{group}'"
                )));
            }
            Ok((p1, p2))
        }
        None => {
            if config.phase1 > dataset.len() {
                return Err(CliError::Usage(format!(
                    "phase I of {} outlines requested but only {} were loaded",
                    config.phase1,
                    dataset.len()
                )));
            }
            Ok((
                (0..config.phase1).collect(),
                (config.phase1..dataset.len()).collect(),
            ))
        }
    }
}

fn monitor(
    config: &RunConfig,
    analyzer: &Analyzer,
    dataset: &Dataset,
    format: Format,
) -> Result<Vec<PathBuf>, CliError> {
    require_samples(dataset, 1, "monitor")?;
    let curves = curves(dataset);
    let reference = reference_curve(config, analyzer, &curves, format)?;
    let distances = analyzer.distances_to(&reference, &curves)?;
    let (p1, p2) = phases(config, dataset)?;
    let pick = |idx: &[usize]| idx.iter().map(|&i| distances[i]).collect::<Vec<_>>();
    let chart = control_chart(&pick(&p1), &pick(&p2))?;
    let point = |i: usize, flag: bool| ChartPoint {
        id: dataset.samples[i].id.clone(),
        group: dataset.samples[i].group.clone(),
        distance: distances[i],
        out_of_control: flag,
    };
    let report = ChartReport {
        metric: config.metric,
        reference: config.reference.to_string(),
        center: chart.center,
        upper: chart.upper,
        lower: chart.lower,
        sigma: chart.sigma,
        average_moving_range: chart.average_moving_range,
        phase1: p1
            .iter()
            .map(|&i| point(i, chart.is_out_of_control(distances[i])))
            .collect(),
        phase2: p2
            .iter()
            .zip(&chart.out_of_control)
            .map(|(&i, &f)| point(i, f))
            .collect(),
        flagged: chart
            .flagged()
            .into_iter()
            .map(|k| dataset.samples[p2[k]].id.clone())
            .collect(),
    };
    Ok(vec![
        write(config.out.join("chart.json"), to_json(&report))?,
        write(config.out.join("chart.svg"), chart_svg(&chart))?,
    ])
}

fn chart_svg(chart: &ControlChart) -> String {
    let values: Vec<f64> = chart.phase1.iter().chain(&chart.phase2).copied().collect();
    let n = values.len();
    let extent = values
        .iter()
        .enumerate()
        .map(|(i, &v)| (i as f64, v))
        .chain([(0.0, chart.upper), (0.0, chart.lower)]);
    let frame = Frame::fit(760.0, 420.0, extent);
    let mut doc = Document::new(frame.width, frame.height);
    doc.axes(&frame, "outline", "distance to reference");
    let last = (n.max(2) - 1) as f64;
    for (level, dashed) in [
        (chart.center, false),
        (chart.upper, true),
        (chart.lower, true),
    ] {
        doc.line(
            frame.map(0.0, level),
            frame.map(last, level),
            "#888888",
            dashed,
        );
    }
    let split = chart.phase1.len() as f64 - 0.5;
    doc.line(
        frame.map(split, frame.y.0),
        frame.map(split, frame.y.1),
        "#bbbbbb",
        true,
    );
    let points: Vec<(f64, f64)> = values
        .iter()
        .enumerate()
        .map(|(i, &v)| frame.map(i as f64, v))
        .collect();
    doc.polyline(&points, PALETTE[0], false);
    for (i, &p) in points.iter().enumerate() {
        let flagged = i >= chart.phase1.len() && chart.out_of_control[i - chart.phase1.len()];
        doc.circle(
            p,
            if flagged { 5.0 } else { 2.5 },
            if flagged { PALETTE[1] } else { PALETTE[0] },
        );
    }
    doc.finish()
}

#[derive(Serialize)]
struct AlignmentRecord {
    id: String,
    reference_id: String,
    distance: f64,
    rotation: f64,
    shift: usize,
    reversed: bool,
    warped_first: bool,
}

fn align(
    config: &RunConfig,
    analyzer: &Analyzer,
    dataset: &Dataset,
) -> Result<Vec<PathBuf>, CliError> {
    require_samples(dataset, 2, "align")?;
    let first = &dataset.samples[0];
    let mut contours = Vec::new();
    let mut records = Vec::new();
    let mut overlays: Vec<(Vec<Point>, Vec<Point>)> = Vec::new();
    for sample in &dataset.samples[1..] {
        let a = analyzer.align(&first.curve, &sample.curve)?;
        contours.push(RawContour {
            id: format!("{}:reference", sample.id),
            group: "reference".into(),
            points: a.reference.clone(),
        });
        contours.push(RawContour {
            id: sample.id.clone(),
            group: "aligned".into(),
            points: a.aligned.clone(),
        });
        records.push(AlignmentRecord {
            id: sample.id.clone(),
            reference_id: first.id.clone(),
            distance: a.distance,
            rotation: a.rotation,
            shift: a.shift,
            reversed: a.reversed,
            warped_first: a.warped_first,
        });
        overlays.push((a.reference, a.aligned));
    }
    let mut csv = Vec::new();
    ingest::write_csv(&contours, &mut csv)?;
    Ok(vec![
        write(config.out.join("aligned.csv"), csv)?,
        write(config.out.join("alignment.json"), to_json(&records))?,
        write(config.out.join("overlay.svg"), overlay_svg(&overlays))?,
    ])
}

fn overlay_svg(pairs: &[(Vec<Point>, Vec<Point>)]) -> String {
    let all = pairs
        .iter()
        .flat_map(|(r, a)| r.iter().chain(a))
        .map(|p| (p[0], p[1]));
    let frame = Frame::fit(560.0, 560.0, all).equal_aspect();
    let mut doc = Document::new(frame.width, frame.height);
    let map = |pts: &[Point]| {
        pts.iter()
            .map(|p| frame.map(p[0], p[1]))
            .collect::<Vec<_>>()
    };
    for (i, (reference, aligned)) in pairs.iter().enumerate() {
        doc.polyline(&map(reference), "black", true);
        doc.polyline(&map(aligned), PALETTE[(i + 1) % PALETTE.len()], true);
        if let (Some(r), Some(a)) = (reference.first(), aligned.first()) {
            doc.circle(frame.map(r[0], r[1]), 3.0, "black");
            doc.circle(frame.map(a[0], a[1]), 3.0, PALETTE[(i + 1) % PALETTE.len()]);
        }
    }
    doc.finish()
}
