//! Schematic SVG of a diagram.
//!
//! The central surface is drawn as the usual `4g`-gon with word
//! `p₁q₁p₁⁻¹q₁⁻¹⋯`. A curve is drawn as one chord per unit of each nonzero
//! coordinate, between the two edges that the coordinate's dual curve crosses.
//! This realizes the homology class and nothing more.

use std::f64::consts::PI;
use std::fmt::Write;

use crate::builder::TrisectionDiagram;

pub const WATERMARK: &str = "homology-schematic";
pub const FAMILY_COLORS: [&str; 3] = ["red", "blue", "green"];

const SIZE: f64 = 800.0;
const RADIUS: f64 = 300.0;

fn vertex(n: usize, k: usize) -> (f64, f64) {
    let theta = PI / 2.0 + 2.0 * PI * (k % n) as f64 / n as f64 - PI / n as f64;
    (SIZE / 2.0 + RADIUS * theta.cos(), SIZE / 2.0 - RADIUS * theta.sin())
}

fn lerp(a: (f64, f64), b: (f64, f64), t: f64) -> (f64, f64) {
    (a.0 + (b.0 - a.0) * t, a.1 + (b.1 - a.1) * t)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// The two polygon edges glued to form basis element `m`'s edge class.
fn edges_of(m: usize) -> (usize, usize) {
    let i = m / 2;
    if m.is_multiple_of(2) {
        (4 * i, 4 * i + 2)
    } else {
        (4 * i + 1, 4 * i + 3)
    }
}

pub fn render_svg(d: &TrisectionDiagram) -> Vec<u8> {
    let g = d.surface.genus();
    let labels = d.surface.labels();
    let n = 4 * g.max(1);
    let mut out = String::new();
    writeln!(
        out,
        r#"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{s}" height="{s}" viewBox="0 0 {s} {s}">"#,
        s = SIZE
    )
    .unwrap();
    writeln!(
        out,
        r#"<title>trisection diagram g={} k={} ({WATERMARK})</title>"#,
        d.params.g, d.params.k
    )
    .unwrap();
    writeln!(out, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##).unwrap();

    let pts: Vec<String> = (0..n)
        .map(|k| {
            let (x, y) = vertex(n, k);
            format!("{x:.2},{y:.2}")
        })
        .collect();
    writeln!(
        out,
        r#"<polygon class="surface" points="{}" fill="none" stroke="black" stroke-width="1.5"/>"#,
        pts.join(" ")
    )
    .unwrap();

    // edge labels, inverse edges marked with a bar
    for e in 0..n.min(2 * labels.len()) {
        let m = 2 * (e / 4) + e % 2;
        let (a, b) = (vertex(n, e), vertex(n, e + 1));
        let mid = lerp(a, b, 0.5);
        let out_dir = ((mid.0 - SIZE / 2.0) / RADIUS, (mid.1 - SIZE / 2.0) / RADIUS);
        let (x, y) = (mid.0 + 22.0 * out_dir.0, mid.1 + 22.0 * out_dir.1);
        let suffix = if e % 4 >= 2 { "\u{305}" } else { "" };
        writeln!(
            out,
            r#"<text class="edge-label" x="{x:.2}" y="{y:.2}" font-family="monospace" font-size="12" text-anchor="middle">{}{suffix}</text>"#,
            escape(&labels[m])
        )
        .unwrap();
    }

    // count chords per edge pair so they can be spread along the edge
    let mut totals = vec![0usize; labels.len()];
    for c in d.curves() {
        for (m, &v) in c.class.coords().iter().enumerate() {
            totals[m ^ 1] += v.unsigned_abs() as usize;
        }
    }
    let mut used = vec![0usize; labels.len()];

    for (f, fam) in d.families.iter().enumerate() {
        for (idx, c) in fam.iter().enumerate() {
            let mut path = String::new();
            for (m, &v) in c.class.coords().iter().enumerate() {
                if v == 0 {
                    continue;
                }
                // a curve in class e_m crosses the edges of its dual
                let dual = m ^ 1;
                let (e1, e2) = edges_of(dual);
                for _ in 0..v.unsigned_abs() {
                    used[dual] += 1;
                    let t = used[dual] as f64 / (totals[dual] + 1) as f64;
                    let p1 = lerp(vertex(n, e1), vertex(n, e1 + 1), t);
                    let p2 = lerp(vertex(n, e2), vertex(n, e2 + 1), 1.0 - t);
                    let (from, to) = if v > 0 { (p1, p2) } else { (p2, p1) };
                    if !path.is_empty() {
                        path.push(' ');
                    }
                    write!(path, "M{:.2},{:.2} L{:.2},{:.2}", from.0, from.1, to.0, to.1).unwrap();
                }
            }
            writeln!(
                out,
                r#"<path class="curve family-{fam}" data-index="{idx}" data-support="{sup}" d="{path}" fill="none" stroke="{color}" stroke-width="1.2" stroke-opacity="0.8"/>"#,
                fam = f + 1,
                sup = escape(&c.support.to_string()),
                color = FAMILY_COLORS[f],
            )
            .unwrap();
        }
    }

    for (f, color) in FAMILY_COLORS.iter().enumerate() {
        writeln!(
            out,
            r#"<text class="legend" x="20" y="{:.2}" font-family="monospace" font-size="14" fill="{color}">family {}</text>"#,
            30.0 + 18.0 * f as f64,
            f + 1
        )
        .unwrap();
    }
    writeln!(
        out,
        r##"<text class="watermark" x="{:.2}" y="{:.2}" font-family="monospace" font-size="16" fill="#888888" text-anchor="end">{WATERMARK}</text>"##,
        SIZE - 20.0,
        SIZE - 20.0
    )
    .unwrap();
    out.push_str("</svg>\n");
    out.into_bytes()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder::build_diagram;
    use crate::corpus;

    fn svg(name: &str) -> String {
        let d = build_diagram(&corpus::get(name).unwrap().pencil).unwrap();
        String::from_utf8(render_svg(&d)).unwrap()
    }

    #[test]
    fn cp2_has_three_paths_and_a_square() {
        let s = svg("cp2_lines");
        assert_eq!(s.matches("<path ").count(), 3);
        let poly = s.lines().find(|l| l.starts_with("<polygon")).unwrap();
        let points = poly.split('"').nth(3).unwrap();
        assert_eq!(points.split(' ').count(), 4);
        assert!(s.contains(WATERMARK));
        for color in FAMILY_COLORS {
            assert!(s.contains(&format!("stroke=\"{color}\"")));
        }
    }

    #[test]
    fn conics_has_thirty_paths() {
        assert_eq!(svg("cp2_conics").matches("<path ").count(), 30);
    }

    #[test]
    fn rendering_is_deterministic() {
        assert_eq!(svg("genus1_pencil"), svg("genus1_pencil"));
    }
}
