//! Static SVG drawing of a resolved diagram.

use std::fmt::Write;

use num_traits::ToPrimitive;

use crate::diagram::{Dart, LagrangianDiagram};
use crate::disks::Disk;
use crate::grading::Shading;
use crate::Rational;

const SCALE: f64 = 40.0;
const MARGIN: f64 = 30.0;

fn f(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(0.0)
}

fn dart_points(diag: &LagrangianDiagram, d: Dart) -> Vec<(f64, f64)> {
    let mut pts: Vec<(f64, f64)> = diag.edges[d.edge]
        .path
        .iter()
        .map(|(x, y)| (f(x), f(y)))
        .collect();
    if !d.forward {
        pts.reverse();
    }
    pts
}

/// Draws `diag`, with shaded quadrants marked and the faces of `overlay`
/// filled.
pub fn render(diag: &LagrangianDiagram, shading: Option<&Shading>, overlay: &[Disk]) -> String {
    let all: Vec<(f64, f64)> = diag
        .edges
        .iter()
        .flat_map(|e| e.path.iter().map(|(x, y)| (f(x), f(y))))
        .collect();
    let min_x = all.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let max_x = all.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    let min_y = all.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
    let max_y = all.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
    let tx = |x: f64| MARGIN + (x - min_x) * SCALE;
    let ty = |y: f64| MARGIN + (max_y - y) * SCALE;
    let width = 2.0 * MARGIN + (max_x - min_x) * SCALE;
    let height = 2.0 * MARGIN + (max_y - min_y) * SCALE;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);

    for (i, disk) in overlay.iter().enumerate() {
        let hue = (i * 67) % 360;
        for &face in &disk.faces {
            let mut pts = Vec::new();
            for st in &diag.faces[face].steps {
                pts.extend(dart_points(diag, st.dart));
            }
            let p: Vec<String> = pts
                .iter()
                .map(|&(x, y)| format!("{:.1},{:.1}", tx(x), ty(y)))
                .collect();
            let _ = writeln!(
                s,
                r#"<polygon points="{}" fill="hsl({hue},70%,60%)" fill-opacity="0.25" stroke="none"/>"#,
                p.join(" ")
            );
        }
    }

    for (e, edge) in diag.edges.iter().enumerate() {
        let p: Vec<String> = edge
            .path
            .iter()
            .map(|(x, y)| format!("{:.1},{:.1}", tx(f(x)), ty(f(y))))
            .collect();
        let color = if e == diag.basepoint_edge {
            "#c03030"
        } else {
            "black"
        };
        let _ = writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="2"/>"#,
            p.join(" ")
        );
    }

    // quadrant q lies between slot q and slot q+1; slot directions
    let dirs = [(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)];
    for (v, (x, y)) in diag.realization.vertex_coords.iter().enumerate() {
        let (cx, cy) = (tx(f(x)), ty(f(y)));
        if let Some(sh) = shading {
            for q in 0..4 {
                if !sh[v][q] {
                    continue;
                }
                let (a, b) = (dirs[q], dirs[(q + 1) % 4]);
                let r = 0.25 * SCALE;
                let _ = writeln!(
                    s,
                    r##"<polygon points="{cx:.1},{cy:.1} {:.1},{:.1} {:.1},{:.1}" fill="#3060c0" fill-opacity="0.6"/>"##,
                    cx + r * a.0,
                    cy - r * a.1,
                    cx + r * b.0,
                    cy - r * b.1
                );
            }
        }
        let _ = writeln!(
            s,
            r#"<circle cx="{cx:.1}" cy="{cy:.1}" r="3" fill="black"/><text x="{:.1}" y="{:.1}" font-size="11" font-family="monospace">{}</text>"#,
            cx + 5.0,
            cy - 6.0,
            diag.chord_name(v)
        );
    }
    s.push_str("</svg>\n");
    s
}
