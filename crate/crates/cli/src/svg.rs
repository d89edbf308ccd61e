//! Self-contained SVG line charts.

use std::fmt::Write as _;

use oligosim_core::RunResult;

use crate::report::fmt_num;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 440.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 150.0;
const TOP: f64 = 50.0;
const BOTTOM: f64 = 60.0;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

pub struct Series {
    pub name: String,
    pub points: Vec<(f64, f64)>,
}

pub struct LineChart {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
}

/// Tick positions covering `[lo, hi]` with a 1-2-5 step.
fn nice_ticks(lo: f64, hi: f64, target: usize) -> Vec<f64> {
    let span = hi - lo;
    let raw = span / target as f64;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .into_iter()
        .map(|m| m * mag)
        .find(|s| *s >= raw)
        .unwrap_or(10.0 * mag);
    let first = (lo / step).floor() as i64;
    let last = (hi / step).ceil() as i64;
    (first..=last).map(|k| k as f64 * step).collect()
}

fn coord(x: f64) -> String {
    format!("{x:.2}")
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

impl LineChart {
    pub fn render(&self) -> String {
        let all = || self.series.iter().flat_map(|s| s.points.iter());
        let (mut x_lo, mut x_hi) = (f64::INFINITY, f64::NEG_INFINITY);
        let (mut y_lo, mut y_hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for &(x, y) in all() {
            x_lo = x_lo.min(x);
            x_hi = x_hi.max(x);
            y_lo = y_lo.min(y);
            y_hi = y_hi.max(y);
        }
        if !x_lo.is_finite() {
            (x_lo, x_hi, y_lo, y_hi) = (0.0, 1.0, 0.0, 1.0);
        }
        if x_hi <= x_lo {
            x_hi = x_lo + 1.0;
        }
        if y_hi - y_lo <= 1e-12 * y_hi.abs().max(1.0) {
            let pad = 0.5 * y_hi.abs().max(1.0);
            y_lo -= pad;
            y_hi += pad;
        }
        let y_ticks = nice_ticks(y_lo, y_hi, 6);
        let (y_lo, y_hi) = (y_ticks[0], *y_ticks.last().unwrap());
        let x_ticks: Vec<f64> = nice_ticks(x_lo, x_hi, 10)
            .into_iter()
            .filter(|x| *x >= x_lo && *x <= x_hi)
            .collect();

        let plot_w = WIDTH - LEFT - RIGHT;
        let plot_h = HEIGHT - TOP - BOTTOM;
        let sx = |x: f64| LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w;
        let sy = |y: f64| TOP + (y_hi - y) / (y_hi - y_lo) * plot_h;

        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="12">"#,
            w = WIDTH,
            h = HEIGHT
        );
        let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
        let _ = writeln!(
            out,
            r#"<text x="{}" y="28" text-anchor="middle" font-size="16">{}</text>"#,
            coord(LEFT + plot_w / 2.0),
            escape(&self.title)
        );

        for &y in &y_ticks {
            let py = coord(sy(y));
            let _ = writeln!(
                out,
                r##"<line x1="{}" y1="{py}" x2="{}" y2="{py}" stroke="#e0e0e0"/>"##,
                coord(LEFT),
                coord(LEFT + plot_w)
            );
            let _ = writeln!(
                out,
                r#"<text x="{}" y="{py}" text-anchor="end" dominant-baseline="middle">{}</text>"#,
                coord(LEFT - 6.0),
                fmt_num((y * 1e9).round() / 1e9)
            );
        }
        for &x in &x_ticks {
            let px = coord(sx(x));
            let _ = writeln!(
                out,
                r##"<line x1="{px}" y1="{}" x2="{px}" y2="{}" stroke="#000"/>"##,
                coord(TOP + plot_h),
                coord(TOP + plot_h + 5.0)
            );
            let _ = writeln!(
                out,
                r#"<text x="{px}" y="{}" text-anchor="middle">{}</text>"#,
                coord(TOP + plot_h + 18.0),
                fmt_num(x)
            );
        }
        let _ = writeln!(
            out,
            r##"<line x1="{l}" y1="{t}" x2="{l}" y2="{b}" stroke="#000"/><line x1="{l}" y1="{b}" x2="{r}" y2="{b}" stroke="#000"/>"##,
            l = coord(LEFT),
            t = coord(TOP),
            b = coord(TOP + plot_h),
            r = coord(LEFT + plot_w)
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
            coord(LEFT + plot_w / 2.0),
            coord(HEIGHT - 15.0),
            escape(&self.x_label)
        );
        let _ = writeln!(
            out,
            r#"<text x="18" y="{y}" text-anchor="middle" transform="rotate(-90 18 {y})">{}</text>"#,
            escape(&self.y_label),
            y = coord(TOP + plot_h / 2.0)
        );

        for (i, s) in self.series.iter().enumerate() {
            let color = PALETTE[i % PALETTE.len()];
            let pts: Vec<String> = s
                .points
                .iter()
                .map(|&(x, y)| format!("{},{}", coord(sx(x)), coord(sy(y))))
                .collect();
            let _ = writeln!(
                out,
                r#"<polyline fill="none" stroke="{color}" stroke-width="2" points="{}"/>"#,
                pts.join(" ")
            );
            let ly = TOP + 10.0 + 20.0 * i as f64;
            let lx = LEFT + plot_w + 15.0;
            let _ = writeln!(
                out,
                r#"<rect x="{}" y="{}" width="14" height="4" fill="{color}"/><text x="{}" y="{}" dominant-baseline="middle">{}</text>"#,
                coord(lx),
                coord(ly - 2.0),
                coord(lx + 20.0),
                coord(ly),
                escape(&s.name)
            );
        }
        out.push_str("</svg>\n");
        out
    }
}

fn series(name: impl Into<String>, result: &RunResult, f: impl Fn(usize) -> f64) -> Series {
    Series {
        name: name.into(),
        points: (0..result.records.len())
            .map(|i| (result.records[i].t as f64, f(i)))
            .collect(),
    }
}

/// The four charts of a run, as `(file name, svg)`.
pub fn run_charts(result: &RunResult) -> Vec<(&'static str, String)> {
    let firms = result.final_buffers.len();
    let rec = &result.records;
    let per_firm = |pick: fn(&oligosim_core::FirmInterval) -> f64| -> Vec<Series> {
        (0..firms)
            .map(|j| {
                series(format!("Firm {}", j + 1), result, |i| {
                    pick(&rec[i].firms[j])
                })
            })
            .collect()
    };
    let chart = |title: &str, y_label: &str, series: Vec<Series>| {
        LineChart {
            title: title.into(),
            x_label: "Time interval".into(),
            y_label: y_label.into(),
            series,
        }
        .render()
    };
    vec![
        (
            "graph1_prices.svg",
            chart(
                "Commodity prices",
                "Price",
                vec![
                    series("Capital (p1)", result, |i| rec[i].prices.p1()),
                    series("Labor (p2)", result, |i| rec[i].prices.p2()),
                ],
            ),
        ),
        (
            "graph2_costs.svg",
            chart("Production costs", "Unit cost", per_firm(|f| f.cost)),
        ),
        (
            "graph3_production.svg",
            chart("Production amounts", "Output", per_firm(|f| f.production)),
        ),
        (
            "graph4_excess.svg",
            chart(
                "Excess of supply",
                "Excess supply",
                vec![series("Total excess", result, |i| rec[i].total_excess)],
            ),
        ),
    ]
}
