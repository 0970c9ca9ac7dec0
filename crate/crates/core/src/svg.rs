//! SVG barcode plots: one horizontal band per dimension, one bar per interval.

use std::fmt::Write as _;
use std::io;
use std::path::Path;

use crate::report::{BarcodeDocument, PairRecord};
use crate::zigzag::{Axis, Barcode, Position};

const WIDTH: f64 = 720.0;
const LEFT: f64 = 56.0;
const RIGHT: f64 = 24.0;
const TOP: f64 = 16.0;
const BAR_GAP: f64 = 12.0;
const BAND_PAD: f64 = 14.0;
const AXIS_HEIGHT: f64 = 40.0;

/// Tick positions at the snapshots of the filtration a barcode came from.
pub fn snapshot_ticks(b: &Barcode) -> Vec<f64> {
    (0..b.snapshot_count()).map(|i| b.coordinate(Position::snapshot(i))).collect()
}

/// Ticks for a barcode read back from JSON, where snapshot times are unknown.
pub fn inferred_ticks(doc: &BarcodeDocument) -> Vec<f64> {
    let values: Vec<f64> = doc
        .dims
        .values()
        .flatten()
        .flat_map(|r| [r.birth.value(), r.death.value()])
        .collect();
    let (lo, hi) = bounds(&values);
    match doc.axis {
        Axis::Index => (lo.floor() as i64..=hi.floor() as i64).map(|i| i as f64).collect(),
        Axis::Time => nice_ticks(lo, hi),
    }
}

fn bounds(values: &[f64]) -> (f64, f64) {
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if lo.is_finite() && hi.is_finite() {
        (lo, hi)
    } else {
        (0.0, 1.0)
    }
}

fn nice_ticks(lo: f64, hi: f64) -> Vec<f64> {
    if hi <= lo {
        return vec![lo];
    }
    let raw = (hi - lo) / 6.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0].iter().map(|m| m * mag).find(|s| *s >= raw).unwrap_or(10.0 * mag);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    (first..=last).map(|k| k as f64 * step).collect()
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn label(v: f64) -> String {
    let rounded = (v * 1000.0).round() / 1000.0;
    format!("{rounded}")
}

/// Renders a barcode document as a standalone SVG 1.1 file.
pub fn render_svg(doc: &BarcodeDocument, ticks: &[f64]) -> String {
    let dims = doc.dimensions();
    let mut values: Vec<f64> = ticks.to_vec();
    values.extend(dims.iter().flat_map(|(_, v)| v.iter()).flat_map(|r| [r.birth.value(), r.death.value()]));
    let (lo, hi) = bounds(&values);
    let span = if hi > lo { hi - lo } else { 1.0 };
    let x = |v: f64| LEFT + (v - lo) / span * (WIDTH - LEFT - RIGHT);

    let band_heights: Vec<f64> = dims
        .iter()
        .map(|(_, v)| (v.len().max(1) as f64) * BAR_GAP + 2.0 * BAND_PAD)
        .collect();
    let height = TOP + band_heights.iter().sum::<f64>() + AXIS_HEIGHT;

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}">"#
    );
    let _ = writeln!(
        out,
        r#"<title>{} barcode ({} axis)</title>"#,
        escape(&doc.mode.to_string()),
        if doc.axis == Axis::Time { "time" } else { "index" }
    );
    let _ = writeln!(out, r#"<rect x="0" y="0" width="{WIDTH}" height="{height}" fill="white"/>"#);

    let mut y0 = TOP;
    for ((p, records), band) in dims.iter().zip(&band_heights) {
        let _ = writeln!(out, r#"<g class="band" id="D{p}">"#);
        let _ = writeln!(
            out,
            r##"<rect x="{LEFT}" y="{y0:.2}" width="{:.2}" height="{band:.2}" fill="#f4f4f4" stroke="#cccccc"/>"##,
            WIDTH - LEFT - RIGHT
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="12">D{p}</text>"#,
            8.0,
            y0 + band / 2.0 + 4.0
        );
        for (i, r) in records.iter().enumerate() {
            let y = y0 + BAND_PAD + (i as f64 + 0.5) * BAR_GAP;
            write_bar(&mut out, r, x(r.birth.value()), x(r.death.value()), y);
        }
        let _ = writeln!(out, "</g>");
        y0 += band;
    }

    let axis_y = y0 + 6.0;
    let _ = writeln!(out, r#"<g class="axis">"#);
    let _ = writeln!(
        out,
        r#"<line x1="{LEFT}" y1="{axis_y:.2}" x2="{:.2}" y2="{axis_y:.2}" stroke="black"/>"#,
        WIDTH - RIGHT
    );
    for &t in ticks {
        let tx = x(t);
        let _ = writeln!(
            out,
            r#"<line class="tick" x1="{tx:.2}" y1="{axis_y:.2}" x2="{tx:.2}" y2="{:.2}" stroke="black"/>"#,
            axis_y + 5.0
        );
        let _ = writeln!(
            out,
            r#"<text x="{tx:.2}" y="{:.2}" font-family="sans-serif" font-size="10" text-anchor="middle">{}</text>"#,
            axis_y + 18.0,
            escape(&label(t))
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, "</svg>");
    out
}

fn write_bar(out: &mut String, r: &PairRecord, x0: f64, x1: f64, y: f64) {
    let color = if r.open_end { "#c0392b" } else { "#2c3e50" };
    let dash = if r.open_end { r#" stroke-dasharray="6 3""# } else { "" };
    let _ = writeln!(
        out,
        r#"<line class="bar" x1="{x0:.2}" y1="{y:.2}" x2="{x1:.2}" y2="{y:.2}" stroke="{color}" stroke-width="4"{dash}/>"#
    );
    if r.open_end {
        let _ = writeln!(
            out,
            r#"<polygon class="open-end" points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}" fill="{color}"/>"#,
            x1,
            y - 5.0,
            x1 + 8.0,
            y,
            x1,
            y + 5.0
        );
    }
}

/// Writes the SVG plot of `b`, with ticks at its snapshots.
pub fn render_barcode(b: &Barcode, out: &Path) -> io::Result<()> {
    let doc = BarcodeDocument::from_barcode(b);
    std::fs::write(out, render_svg(&doc, &snapshot_ticks(b)))
}
