//! CSV, JSON and SVG writers. Every header names its unit in brackets.

use crate::envelope::{Payload, ResultEnvelope, SpectrumPayload};
use std::fmt::Write as _;

/// `name [unit]`.
fn head(name: &str, unit: &str) -> String {
    format!("{name} [{unit}]")
}

/// Shortest round-trip representation.
fn num(x: f64) -> String {
    format!("{x:e}")
}

/// CSV of the payload alone (no timestamp), so identical runs give identical bytes.
pub fn to_csv(payload: &Payload) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    match payload {
        Payload::Spectrum(s) => {
            w.write_record([
                head(&s.axis_name, &s.axis_unit),
                head("k_x", "1/m"),
                head("k_w", "s/m"),
                head("index", "1"),
                head("energy", &s.energy_unit),
            ])?;
            for (a, per_k) in s.spectra.iter().enumerate() {
                for (k, values) in per_k.iter().enumerate() {
                    for (i, e) in values.iter().enumerate() {
                        let kk = s.k_grid[k];
                        w.write_record([num(s.axis[a]), num(kk[0]), num(kk[1]), i.to_string(), num(*e)])?;
                    }
                }
            }
        }
        Payload::Response(r) => {
            let mut header = vec![head("w", "rad/s")];
            for s in &r.series {
                header.push(head(&format!("{}.re", s.name), &s.unit));
                header.push(head(&format!("{}.im", s.name), &s.unit));
            }
            w.write_record(&header)?;
            for (i, x) in r.w.iter().enumerate() {
                let mut row = vec![num(*x)];
                for s in &r.series {
                    row.push(num(s.re[i]));
                    row.push(num(s.im[i]));
                }
                w.write_record(&row)?;
            }
        }
        Payload::Table(t) => {
            w.write_record(t.columns.iter().map(|c| head(&c.name, &c.unit)))?;
            for row in &t.rows {
                w.write_record(row.iter().map(|x| num(*x)))?;
            }
        }
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("CSV output is UTF-8"))
}

pub fn to_json(envelope: &ResultEnvelope) -> serde_json::Result<String> {
    let mut s = serde_json::to_string_pretty(envelope)?;
    s.push('\n');
    Ok(s)
}

pub fn from_json(text: &str) -> serde_json::Result<ResultEnvelope> {
    serde_json::from_str(text)
}

pub const SVG_WIDTH: u32 = 1200;
pub const SVG_HEIGHT: u32 = 900;
/// Plot area inside the canvas: left, top, right, bottom.
pub const PLOT_BOX: (u32, u32, u32, u32) = (110, 40, 1170, 820);

struct Cloud {
    name: String,
    colour: &'static str,
    points: Vec<(f64, f64)>,
}

const COLOURS: [&str; 4] = ["#1f3b73", "#b3402a", "#2a7a3b", "#7a4a9e"];

fn clouds(payload: &Payload) -> (String, String, Vec<Cloud>) {
    match payload {
        Payload::Spectrum(s) => {
            let window = s.window;
            let points = spectrum_points(s, window);
            (
                head(&s.axis_name, &s.axis_unit),
                head("energy", &s.energy_unit),
                vec![Cloud { name: "spectrum".into(), colour: COLOURS[0], points }],
            )
        }
        Payload::Response(r) => {
            let mut out = Vec::new();
            for (i, s) in r.series.iter().enumerate() {
                let c = 2 * i % COLOURS.len();
                out.push(Cloud {
                    name: format!("{}.re", s.name),
                    colour: COLOURS[c],
                    points: r.w.iter().copied().zip(s.re.iter().copied()).collect(),
                });
                out.push(Cloud {
                    name: format!("{}.im", s.name),
                    colour: COLOURS[c + 1],
                    points: r.w.iter().copied().zip(s.im.iter().copied()).collect(),
                });
            }
            let unit = r.series.first().map(|s| s.unit.as_str()).unwrap_or("1");
            (head("w", "rad/s"), head("value", unit), out)
        }
        Payload::Table(t) => {
            let x = t.columns.first().map(|c| head(&c.name, &c.unit)).unwrap_or_default();
            let y = match t.columns.len() {
                2 => head(&t.columns[1].name, &t.columns[1].unit),
                _ => "columns [see legend]".to_string(),
            };
            let out = (1..t.columns.len())
                .map(|j| Cloud {
                    name: head(&t.columns[j].name, &t.columns[j].unit),
                    colour: COLOURS[(j - 1) % COLOURS.len()],
                    points: t.rows.iter().map(|r| (r[0], r[j])).collect(),
                })
                .collect();
            (x, y, out)
        }
    }
}

fn spectrum_points(s: &SpectrumPayload, window: Option<[f64; 2]>) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for (a, per_k) in s.spectra.iter().enumerate() {
        for values in per_k {
            for &e in values {
                if window.is_none_or(|[lo, hi]| e >= lo && e <= hi) {
                    out.push((s.axis[a], e));
                }
            }
        }
    }
    out
}

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for v in values.filter(|v| v.is_finite()) {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    if hi - lo <= f64::EPSILON * lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE) {
        let pad = if lo == 0.0 { 1.0 } else { 0.5 * lo.abs() };
        return (lo - pad, hi + pad);
    }
    (lo, hi)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Scatter plot on a fixed 1200x900 canvas. Points are snapped to whole pixels and
/// deduplicated per series, so dense butterflies stay small.
pub fn to_svg(envelope: &ResultEnvelope) -> String {
    let (x_label, y_label, clouds) = clouds(&envelope.payload);
    let (l, t, r, b) = PLOT_BOX;
    let (x0, x1) = bounds(clouds.iter().flat_map(|c| c.points.iter().map(|p| p.0)));
    let (y0, y1) = bounds(clouds.iter().flat_map(|c| c.points.iter().map(|p| p.1)));
    let px = |x: f64| l as f64 + (x - x0) / (x1 - x0) * (r - l) as f64;
    let py = |y: f64| b as f64 - (y - y0) / (y1 - y0) * (b - t) as f64;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_WIDTH}" height="{SVG_HEIGHT}" viewBox="0 0 {SVG_WIDTH} {SVG_HEIGHT}">"#
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{SVG_WIDTH}" height="{SVG_HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<rect x="{l}" y="{t}" width="{}" height="{}" fill="none" stroke="black" stroke-width="1"/>"#,
        r - l,
        b - t
    );
    let mut total = 0usize;
    for (ci, c) in clouds.iter().enumerate() {
        let mut pixels: Vec<(i64, i64)> = c
            .points
            .iter()
            .filter(|p| p.0.is_finite() && p.1.is_finite())
            .map(|&(x, y)| (px(x).round() as i64, py(y).round() as i64))
            .collect();
        pixels.sort_unstable();
        pixels.dedup();
        total += pixels.len();
        let _ = writeln!(s, r#"<g class="series" fill="{}" data-name="{}">"#, c.colour, escape(&c.name));
        for (x, y) in pixels {
            let _ = writeln!(s, r#"<rect class="pt" x="{x}" y="{y}" width="1" height="1"/>"#);
        }
        let _ = writeln!(s, "</g>");
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-size="13" fill="{}">{}</text>"#,
            r - 220,
            t + 18 + 16 * ci as u32,
            c.colour,
            escape(&c.name)
        );
    }
    let font = r#"font-family="sans-serif" font-size="15""#;
    let _ = writeln!(s, r#"<text x="{}" y="{}" {font} text-anchor="middle">{}</text>"#, (l + r) / 2, b + 50, escape(&x_label));
    let _ = writeln!(
        s,
        r#"<text x="30" y="{}" {font} text-anchor="middle" transform="rotate(-90 30 {})">{}</text>"#,
        (t + b) / 2,
        (t + b) / 2,
        escape(&y_label)
    );
    for (v, x, anchor) in [(x0, l, "start"), (x1, r, "end")] {
        let _ = writeln!(s, r#"<text x="{x}" y="{}" font-size="12" text-anchor="{anchor}">{v:.4e}</text>"#, b + 20);
    }
    for (v, y) in [(y0, b), (y1, t + 12)] {
        let _ = writeln!(s, r#"<text x="{}" y="{y}" font-size="12" text-anchor="end">{v:.4e}</text>"#, l - 6);
    }
    let _ = writeln!(
        s,
        r#"<text x="{l}" y="{}" font-size="12">{} | {} points | schema {}</text>"#,
        t - 12,
        envelope.command.name(),
        total,
        envelope.schema_version
    );
    s.push_str("</svg>\n");
    s
}
