//! Log-log scatter plots written as plain SVG.

use std::fmt::Write as _;

const WIDTH: f64 = 560.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 60.0;
const LEGEND: f64 = 150.0;
const COLORS: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2"];
const MARKS: [&str; 2] = ["circle", "square"];

pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Axes are logarithmic in `value + 1`, so zero disruption stays on the plot.
pub fn scatter_svg(series: &[Series], x_label: &str, y_label: &str) -> String {
    let max = series.iter().flat_map(|s| &s.points).map(|&(x, y)| x.max(y)).fold(1.0_f64, f64::max);
    let top = (max + 1.0).log10().ceil().max(1.0);
    let plot = HEIGHT - 2.0 * MARGIN;
    let sx = |v: f64| MARGIN + (v + 1.0).log10() / top * plot;
    let sy = |v: f64| HEIGHT - MARGIN - (v + 1.0).log10() / top * plot;

    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{HEIGHT}" viewBox="0 0 {w} {HEIGHT}" font-family="sans-serif" font-size="12">"#,
        w = WIDTH + LEGEND - MARGIN
    )
    .unwrap();
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    let (x0, x1, y0, y1) = (sx(0.0), sx(10f64.powf(top) - 1.0), sy(0.0), sy(10f64.powf(top) - 1.0));
    writeln!(s, r##"<rect x="{x0}" y="{y1}" width="{}" height="{}" fill="none" stroke="#333"/>"##, x1 - x0, y0 - y1).unwrap();

    let mut ticks = Vec::new();
    let mut decade = 1.0_f64;
    while decade <= 10f64.powf(top) {
        for m in [1.0, 2.0, 5.0] {
            let v = m * decade;
            if v <= 10f64.powf(top) {
                ticks.push(v);
            }
        }
        decade *= 10.0;
    }
    for t in ticks {
        let v = t - 1.0;
        let (px, py) = (sx(v), sy(v));
        writeln!(s, r##"<line x1="{px:.1}" y1="{y0}" x2="{px:.1}" y2="{y1}" stroke="#ddd"/>"##).unwrap();
        writeln!(s, r##"<line x1="{x0}" y1="{py:.1}" x2="{x1}" y2="{py:.1}" stroke="#ddd"/>"##).unwrap();
        writeln!(s, r#"<text x="{px:.1}" y="{}" text-anchor="middle">{v}</text>"#, y0 + 16.0).unwrap();
        writeln!(s, r#"<text x="{}" y="{:.1}" text-anchor="end">{v}</text>"#, x0 - 6.0, py + 4.0).unwrap();
    }
    writeln!(s, r##"<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y1}" stroke="#888" stroke-dasharray="4 3"/>"##).unwrap();
    writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#, (x0 + x1) / 2.0, HEIGHT - 18.0, escape(x_label)).unwrap();
    writeln!(
        s,
        r#"<text x="18" y="{y}" text-anchor="middle" transform="rotate(-90 18 {y})">{}</text>"#,
        escape(y_label),
        y = (y0 + y1) / 2.0
    )
    .unwrap();

    for (i, ser) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let mark = MARKS[(i / COLORS.len()) % MARKS.len()];
        writeln!(s, r#"<g fill="{color}" fill-opacity="0.7"><title>{}</title>"#, escape(&ser.label)).unwrap();
        for &(x, y) in &ser.points {
            let (px, py) = (sx(x), sy(y));
            if mark == "circle" {
                writeln!(s, r#"<circle cx="{px:.1}" cy="{py:.1}" r="4"/>"#).unwrap();
            } else {
                writeln!(s, r#"<rect x="{:.1}" y="{:.1}" width="8" height="8"/>"#, px - 4.0, py - 4.0).unwrap();
            }
        }
        writeln!(s, "</g>").unwrap();
        let ly = y1 + 14.0 + 18.0 * i as f64;
        writeln!(s, r#"<circle cx="{}" cy="{}" r="4" fill="{color}"/>"#, x1 + 16.0, ly - 4.0).unwrap();
        writeln!(s, r#"<text x="{}" y="{ly}">{}</text>"#, x1 + 26.0, escape(&ser.label)).unwrap();
    }
    s.push_str("</svg>\n");
    s
}
