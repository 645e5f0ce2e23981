//! SVG line plots of `beta_h` against `h`: one row per domain size, with a
//! full-range panel on the left and a zoomed panel on the right.

use crate::error::{ReportError, Result};
use infsup_core::InfSupResult;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

const WIDTH: f64 = 980.0;
const ROW_HEIGHT: f64 = 380.0;
const PANEL_TOP: f64 = 80.0;
const PANEL_HEIGHT: f64 = 250.0;
const PANEL_WIDTH: f64 = 370.0;
const PANEL_LEFT: [f64; 2] = [90.0, 590.0];
const FULL_RANGE: (f64, f64) = (0.0, 1.1);
const COLORS: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlotPoint {
    pub length: f64,
    pub degree: usize,
    pub elements: usize,
    pub beta: f64,
}

impl PlotPoint {
    fn log2_h(&self) -> f64 {
        -(self.elements as f64).log2()
    }
}

impl From<&InfSupResult> for PlotPoint {
    fn from(r: &InfSupResult) -> Self {
        Self {
            length: r.case.length,
            degree: r.case.degree,
            elements: r.case.elements,
            beta: r.beta_h,
        }
    }
}

/// Y range of the zoom panel: `[min - 5 d, max(max, 1) + d]` with `d` the largest
/// deviation from 1 (floored so the range never collapses).
pub fn zoom_range(betas: &[f64]) -> (f64, f64) {
    let lo = betas.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = betas.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let d = (1.0 - lo).max(hi - 1.0).max(1e-15);
    (lo.min(1.0) - 5.0 * d, hi.max(1.0) + d)
}

fn tick_decimals(span: f64) -> usize {
    let step = span / 4.0;
    ((-step.log10()).ceil() as i64 + 1).clamp(1, 17) as usize
}

struct Panel {
    left: f64,
    top: f64,
    x_range: (f64, f64),
    y_range: (f64, f64),
}

impl Panel {
    fn x(&self, v: f64) -> f64 {
        self.left + (v - self.x_range.0) / (self.x_range.1 - self.x_range.0) * PANEL_WIDTH
    }

    fn y(&self, v: f64) -> f64 {
        self.top + PANEL_HEIGHT
            - (v - self.y_range.0) / (self.y_range.1 - self.y_range.0) * PANEL_HEIGHT
    }
}

/// Renders the plot as an SVG document.
pub fn render_svg(points: &[PlotPoint]) -> Result<String> {
    if points.is_empty() {
        return Err(ReportError::Validation("nothing to plot: no results".into()));
    }
    // Group by domain size, then degree; BTreeMap keys keep the output order fixed.
    let mut rows: BTreeMap<u64, BTreeMap<usize, Vec<PlotPoint>>> = BTreeMap::new();
    for p in points {
        rows.entry(p.length.to_bits())
            .or_default()
            .entry(p.degree)
            .or_default()
            .push(*p);
    }
    let mut lengths: Vec<f64> = rows.keys().map(|&b| f64::from_bits(b)).collect();
    lengths.sort_by(f64::total_cmp);
    let degrees: Vec<usize> = {
        let mut d: Vec<usize> = points.iter().map(|p| p.degree).collect();
        d.sort_unstable();
        d.dedup();
        d
    };
    let color = |n: usize| {
        let i = degrees.iter().position(|&d| d == n).unwrap_or(0);
        COLORS[i % COLORS.len()]
    };

    let height = ROW_HEIGHT * lengths.len() as f64;
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH:.0}" height="{height:.0}" viewBox="0 0 {WIDTH:.0} {height:.0}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);

    for (row, &length) in lengths.iter().enumerate() {
        let series = &rows[&length.to_bits()];
        let y0 = row as f64 * ROW_HEIGHT;
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle" font-size="16">β_h on Ω = [0, {length}]²</text>"#,
            WIDTH / 2.0,
            y0 + 28.0
        );
        // legend
        for (i, &n) in series.keys().enumerate() {
            let lx = WIDTH / 2.0 - 120.0 + 90.0 * i as f64;
            let ly = y0 + 52.0;
            let _ = writeln!(
                s,
                r#"<line class="legend" x1="{:.1}" y1="{ly:.1}" x2="{:.1}" y2="{ly:.1}" stroke="{}" stroke-width="2"/>"#,
                lx,
                lx + 24.0,
                color(n)
            );
            let _ = writeln!(
                s,
                r#"<text x="{:.1}" y="{:.1}">N = {n}</text>"#,
                lx + 30.0,
                ly + 4.0
            );
        }

        let all: Vec<&PlotPoint> = series.values().flatten().collect();
        let lx: Vec<f64> = all.iter().map(|p| p.log2_h()).collect();
        let (mut xmin, mut xmax) = (
            lx.iter().copied().fold(f64::INFINITY, f64::min),
            lx.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        );
        if xmin == xmax {
            xmin -= 1.0;
            xmax += 1.0;
        }
        let betas: Vec<f64> = all.iter().map(|p| p.beta).collect();
        let mut ks: Vec<usize> = all.iter().map(|p| p.elements).collect();
        ks.sort_unstable();
        ks.dedup();

        for (panel_idx, &left) in PANEL_LEFT.iter().enumerate() {
            let y_range = if panel_idx == 0 {
                FULL_RANGE
            } else {
                zoom_range(&betas)
            };
            let panel = Panel {
                left,
                top: y0 + PANEL_TOP,
                x_range: (xmin - 0.25, xmax + 0.25),
                y_range,
            };
            let kind = if panel_idx == 0 { "full" } else { "zoom" };
            let _ = writeln!(s, r#"<g class="panel {kind}">"#);
            let _ = writeln!(
                s,
                r#"<rect x="{left:.1}" y="{:.1}" width="{PANEL_WIDTH:.1}" height="{PANEL_HEIGHT:.1}" fill="none" stroke="black"/>"#,
                panel.top
            );
            // y ticks
            let (ticks, decimals): (Vec<f64>, usize) = if panel_idx == 0 {
                ((0..=5).map(|i| 0.2 * i as f64).collect(), 1)
            } else {
                let span = y_range.1 - y_range.0;
                (
                    (0..=4).map(|i| y_range.0 + span * i as f64 / 4.0).collect(),
                    tick_decimals(span),
                )
            };
            for t in ticks {
                let py = panel.y(t);
                let _ = writeln!(
                    s,
                    r##"<line x1="{left:.1}" y1="{py:.3}" x2="{:.1}" y2="{py:.3}" stroke="#dddddd"/>"##,
                    left + PANEL_WIDTH
                );
                let _ = writeln!(
                    s,
                    r#"<text x="{:.1}" y="{:.3}" text-anchor="end">{t:.decimals$}</text>"#,
                    left - 6.0,
                    py + 4.0
                );
            }
            // x ticks at every h = 1/K
            for &k in &ks {
                let px = panel.x(-(k as f64).log2());
                let by = panel.top + PANEL_HEIGHT;
                let _ = writeln!(
                    s,
                    r#"<line x1="{px:.3}" y1="{by:.1}" x2="{px:.3}" y2="{:.1}" stroke="black"/>"#,
                    by + 5.0
                );
                let _ = writeln!(
                    s,
                    r#"<text x="{px:.3}" y="{:.1}" text-anchor="middle">1/{k}</text>"#,
                    by + 18.0
                );
            }
            let _ = writeln!(
                s,
                r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">h ({kind})</text>"#,
                left + PANEL_WIDTH / 2.0,
                panel.top + PANEL_HEIGHT + 36.0
            );
            for (&n, pts) in series {
                let mut pts = pts.clone();
                pts.sort_by_key(|p| std::cmp::Reverse(p.elements));
                let coords: Vec<(f64, f64)> = pts
                    .iter()
                    .map(|p| (panel.x(p.log2_h()), panel.y(p.beta)))
                    .collect();
                if coords.len() >= 2 {
                    let path = coords
                        .iter()
                        .map(|(x, y)| format!("{x:.3},{y:.3}"))
                        .collect::<Vec<_>>()
                        .join(" ");
                    let _ = writeln!(
                        s,
                        r#"<polyline points="{path}" fill="none" stroke="{}" stroke-width="1.5"/>"#,
                        color(n)
                    );
                }
                for (x, y) in coords {
                    let _ = writeln!(
                        s,
                        r#"<circle cx="{x:.3}" cy="{y:.3}" r="3.5" fill="{}"/>"#,
                        color(n)
                    );
                }
            }
            let _ = writeln!(s, "</g>");
        }
    }
    let _ = writeln!(s, "</svg>");
    Ok(s)
}

/// Writes the SVG plot of `points` to `path`.
pub fn render_plot(points: &[PlotPoint], path: &Path) -> Result<()> {
    let svg = render_svg(points)?;
    std::fs::write(path, svg).map_err(|e| ReportError::io(path, e))
}
