//! Minimal SVG emission for plots.

use std::fmt::Write;

pub const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

pub fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

/// Maps data coordinates into a plot area with margins; y grows upwards.
#[derive(Debug, Clone, Copy)]
pub struct Frame {
    pub width: f64,
    pub height: f64,
    pub margin: f64,
    pub x: (f64, f64),
    pub y: (f64, f64),
}

impl Frame {
    /// Frame covering the points, padded by 5%. Degenerate ranges are widened.
    pub fn fit(width: f64, height: f64, points: impl IntoIterator<Item = (f64, f64)>) -> Self {
        let mut x = (f64::INFINITY, f64::NEG_INFINITY);
        let mut y = (f64::INFINITY, f64::NEG_INFINITY);
        for (px, py) in points {
            if px.is_finite() && py.is_finite() {
                x = (x.0.min(px), x.1.max(px));
                y = (y.0.min(py), y.1.max(py));
            }
        }
        let pad = |r: (f64, f64)| {
            if !r.0.is_finite() {
                return (-1.0, 1.0);
            }
            let span = (r.1 - r.0).max(1e-9 * (1.0 + r.0.abs().max(r.1.abs())));
            (r.0 - 0.05 * span, r.1 + 0.05 * span)
        };
        Frame {
            width,
            height,
            margin: 50.0,
            x: pad(x),
            y: pad(y),
        }
    }

    /// Same frame with equal scale on both axes.
    pub fn equal_aspect(mut self) -> Self {
        let sx = (self.x.1 - self.x.0) / (self.width - 2.0 * self.margin);
        let sy = (self.y.1 - self.y.0) / (self.height - 2.0 * self.margin);
        let s = sx.max(sy);
        let grow = |r: (f64, f64), extent: f64| {
            let mid = 0.5 * (r.0 + r.1);
            (mid - 0.5 * s * extent, mid + 0.5 * s * extent)
        };
        self.x = grow(self.x, self.width - 2.0 * self.margin);
        self.y = grow(self.y, self.height - 2.0 * self.margin);
        self
    }

    pub fn map(&self, x: f64, y: f64) -> (f64, f64) {
        let w = self.width - 2.0 * self.margin;
        let h = self.height - 2.0 * self.margin;
        (
            self.margin + (x - self.x.0) / (self.x.1 - self.x.0) * w,
            self.height - self.margin - (y - self.y.0) / (self.y.1 - self.y.0) * h,
        )
    }
}

/// An SVG document under construction.
pub struct Document {
    width: f64,
    height: f64,
    body: String,
}

impl Document {
    pub fn new(width: f64, height: f64) -> Self {
        Document {
            width,
            height,
            body: String::new(),
        }
    }

    pub fn line(&mut self, a: (f64, f64), b: (f64, f64), stroke: &str, dashed: bool) {
        let dash = if dashed {
            r#" stroke-dasharray="6 4""#
        } else {
            ""
        };
        let _ = writeln!(
            self.body,
            r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{stroke}"{dash}/>"#,
            a.0, a.1, b.0, b.1
        );
    }

    pub fn polyline(&mut self, points: &[(f64, f64)], stroke: &str, closed: bool) {
        let coords: Vec<String> = points
            .iter()
            .map(|p| format!("{:.2},{:.2}", p.0, p.1))
            .collect();
        let tag = if closed { "polygon" } else { "polyline" };
        let _ = writeln!(
            self.body,
            r#"<{tag} points="{}" fill="none" stroke="{stroke}" stroke-width="1.5"/>"#,
            coords.join(" ")
        );
    }

    pub fn circle(&mut self, c: (f64, f64), r: f64, fill: &str) {
        let _ = writeln!(
            self.body,
            r#"<circle cx="{:.2}" cy="{:.2}" r="{r}" fill="{fill}"/>"#,
            c.0, c.1
        );
    }

    pub fn rect(&mut self, corner: (f64, f64), size: (f64, f64), stroke: &str) {
        let _ = writeln!(
            self.body,
            r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="{stroke}"/>"#,
            corner.0, corner.1, size.0, size.1
        );
    }

    pub fn text(&mut self, at: (f64, f64), size: f64, anchor: &str, content: &str) {
        let _ = writeln!(
            self.body,
            r#"<text x="{:.2}" y="{:.2}" font-size="{size}" text-anchor="{anchor}">{}</text>"#,
            at.0,
            at.1,
            escape(content)
        );
    }

    /// Axis box with the frame's ranges as tick labels.
    pub fn axes(&mut self, frame: &Frame, x_label: &str, y_label: &str) {
        let m = frame.margin;
        self.rect(
            (m, m),
            (frame.width - 2.0 * m, frame.height - 2.0 * m),
            "#444444",
        );
        let bottom = frame.height - m;
        self.text(
            (m, bottom + 16.0),
            11.0,
            "start",
            &format!("{:.3e}", frame.x.0),
        );
        self.text(
            (frame.width - m, bottom + 16.0),
            11.0,
            "end",
            &format!("{:.3e}", frame.x.1),
        );
        self.text(
            (m - 4.0, bottom),
            11.0,
            "end",
            &format!("{:.2e}", frame.y.0),
        );
        self.text(
            (m - 4.0, m + 10.0),
            11.0,
            "end",
            &format!("{:.2e}", frame.y.1),
        );
        self.text(
            (frame.width / 2.0, frame.height - 12.0),
            13.0,
            "middle",
            x_label,
        );
        self.text((14.0, frame.height / 2.0), 13.0, "middle", y_label);
    }

    pub fn finish(self) -> String {
        format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
             <svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n\
             <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n{}</svg>\n",
            self.body,
            w = self.width,
            h = self.height
        )
    }
}
