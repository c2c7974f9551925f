//! Emission plumbing: text, RFC-4180 CSV with a mandatory header row, JSON
//! with a `meta`/`rows` envelope, and a minimal hand-rolled SVG plotter.

use std::fs::File;
use std::io::Write;
use std::path::PathBuf;

use serde_json::{json, Value};

use crate::CliError;

/// Where the bytes go.
pub struct Sink {
    out: Option<PathBuf>,
}

impl Sink {
    pub fn new(out: Option<PathBuf>) -> Self {
        Sink { out }
    }

    pub fn write_str(&self, payload: &str) -> Result<(), CliError> {
        match &self.out {
            Some(path) => {
                let mut f = File::create(path)?;
                f.write_all(payload.as_bytes())?;
                Ok(())
            }
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(payload.as_bytes())?;
                Ok(())
            }
        }
    }
}

/// One tabular payload, rendered to any of the formats.
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)
            .map_err(|e| CliError::Io(std::io::Error::other(e)))?;
        for row in &self.rows {
            w.write_record(row)
                .map_err(|e| CliError::Io(std::io::Error::other(e)))?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| CliError::Io(std::io::Error::other(e)))?;
        String::from_utf8(bytes).map_err(|e| CliError::Io(std::io::Error::other(e)))
    }

    pub fn to_text(&self) -> String {
        // fixed-width columns sized to content
        let mut widths: Vec<usize> = self.header.iter().map(|h| h.len()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let mut out = String::new();
        let fmt_row = |cells: &[String], widths: &[usize]| -> String {
            cells
                .iter()
                .zip(widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        };
        out.push_str(&fmt_row(&self.header, &widths));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&fmt_row(row, &widths));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self, meta: Value) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = serde_json::Map::new();
                for (k, v) in self.header.iter().zip(row) {
                    obj.insert(k.clone(), Value::String(v.clone()));
                }
                Value::Object(obj)
            })
            .collect();
        let doc = json!({ "meta": meta, "rows": rows });
        let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
        s.push('\n');
        s
    }
}

/// Command echo placed in every JSON `meta` object.
pub fn meta_for(command: &str, detail: Value) -> Value {
    json!({
        "tool": "qgue",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "config": detail,
    })
}

/// Variant that also echoes the global options.
pub fn meta_with_globals(command: &str, detail: Value, global: &crate::GlobalOpts) -> Value {
    json!({
        "tool": "qgue",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "config": detail,
        "global": global.echo(),
    })
}

// ---------------------------------------------------------------------------
// SVG
// ---------------------------------------------------------------------------

pub enum SeriesKind {
    Line,
    Dots,
}

pub struct Series {
    pub label: String,
    pub kind: SeriesKind,
    pub points: Vec<(f64, f64)>,
    pub color: &'static str,
}

pub const SERIES_COLORS: [&str; 6] = ["#c22", "#26c", "#2a2", "#a2a", "#a60", "#088"];

/// Minimal polyline/dot plot with axes; diagnostics, not publication art.
pub fn svg_plot(
    series: &[Series],
    vertical_markers: &[f64],
    title: &str,
) -> String {
    const W: f64 = 640.0;
    const H: f64 = 420.0;
    const M: f64 = 50.0;
    let all: Vec<(f64, f64)> = series.iter().flat_map(|s| s.points.iter().copied()).collect();
    let (mut x0, mut x1) = all
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| (a.min(p.0), b.max(p.0)));
    let (mut y0, mut y1) = all
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| (a.min(p.1), b.max(p.1)));
    for &m in vertical_markers {
        x0 = x0.min(m);
        x1 = x1.max(m);
    }
    if !x0.is_finite() || x0 == x1 {
        x0 -= 1.0;
        x1 += 1.0;
    }
    if !y0.is_finite() || y0 == y1 {
        y0 -= 1.0;
        y1 += 1.0;
    }
    let pad_y = 0.05 * (y1 - y0);
    let (y0, y1) = (y0 - pad_y, y1 + pad_y);
    let sx = |x: f64| M + (x - x0) / (x1 - x0) * (W - 2.0 * M);
    let sy = |y: f64| H - M - (y - y0) / (y1 - y0) * (H - 2.0 * M);

    let mut s = String::new();
    s.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">\n"
    ));
    s.push_str(&format!(
        "<rect x=\"0\" y=\"0\" width=\"{W}\" height=\"{H}\" fill=\"white\"/>\n"
    ));
    s.push_str(&format!(
        "<text x=\"{}\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n",
        W / 2.0,
        title
    ));
    // axes
    s.push_str(&format!(
        "<line x1=\"{M}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
        H - M,
        W - M,
        H - M
    ));
    s.push_str(&format!(
        "<line x1=\"{M}\" y1=\"{M}\" x2=\"{M}\" y2=\"{}\" stroke=\"black\"/>\n",
        H - M
    ));
    for (v, anchor, x, y) in [
        (x0, "start", M, H - M + 16.0),
        (x1, "end", W - M, H - M + 16.0),
    ] {
        s.push_str(&format!(
            "<text x=\"{x}\" y=\"{y}\" text-anchor=\"{anchor}\" font-size=\"11\">{v:.4}</text>\n"
        ));
    }
    for (v, y) in [(y0 + pad_y, H - M), (y1 - pad_y, M)] {
        s.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" text-anchor=\"end\" font-size=\"11\">{v:.4}</text>\n",
            M - 4.0,
            y + 4.0
        ));
    }
    for &m in vertical_markers {
        s.push_str(&format!(
            "<line x1=\"{0}\" y1=\"{M}\" x2=\"{0}\" y2=\"{1}\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n",
            sx(m),
            H - M
        ));
    }
    for (i, ser) in series.iter().enumerate() {
        match ser.kind {
            SeriesKind::Line => {
                let pts: Vec<String> = ser
                    .points
                    .iter()
                    .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
                    .collect();
                s.push_str(&format!(
                    "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
                    ser.color,
                    pts.join(" ")
                ));
            }
            SeriesKind::Dots => {
                for &(x, y) in &ser.points {
                    s.push_str(&format!(
                        "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"2.5\" fill=\"{}\"/>\n",
                        sx(x),
                        sy(y),
                        ser.color
                    ));
                }
            }
        }
        s.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" font-size=\"12\" fill=\"{}\">{}</text>\n",
            W - M + 4.0 - 120.0,
            M + 16.0 * i as f64,
            ser.color,
            ser.label
        ));
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_is_rfc4180_with_header() {
        let mut t = Table::new(&["a", "b"]);
        t.push(vec!["1".into(), "x,y".into()]);
        let csv = t.to_csv().unwrap();
        assert_eq!(csv, "a,b\n1,\"x,y\"\n");
    }

    #[test]
    fn json_envelope() {
        let mut t = Table::new(&["k"]);
        t.push(vec!["v".into()]);
        let s = t.to_json(meta_for("demo", serde_json::json!({})));
        let doc: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert!(doc.get("meta").is_some());
        assert_eq!(doc["rows"][0]["k"], "v");
        assert_eq!(doc["meta"]["command"], "demo");
    }

    #[test]
    fn svg_contains_polyline_and_marker() {
        let svg = svg_plot(
            &[Series {
                label: "demo".into(),
                kind: SeriesKind::Line,
                points: vec![(0.0, 0.0), (1.0, 1.0)],
                color: "#c22",
            }],
            &[0.5],
            "t",
        );
        assert!(svg.contains("<polyline"));
        assert!(svg.contains("stroke-dasharray"));
        assert!(svg.starts_with("<svg"));
    }
}
