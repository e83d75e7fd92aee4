//! Deterministic SVG rendering of triangulations.
//!
//! Vertices sit on a circle with vertex 0 at the top and labels increasing
//! clockwise, matching the orientation used throughout the crate. The
//! diagonal is drawn thick, mirror-pair chords thin, and any extra edges
//! passed as `dotted` — introduced edges of a flip, say — are overlaid
//! dashed whether or not they belong to the triangulation. Output is a pure
//! function of the input: coordinates use fixed three-decimal formatting and
//! edges are emitted in sorted order, so equal inputs give identical bytes.

use std::fmt::Write as _;

use cyclohedron::{CsTriangulation, Edge};

const SIZE: f64 = 400.0;
const RADIUS: f64 = 166.0;
const LABEL_RADIUS: f64 = 184.0;

fn position(i: u16, n: u16, radius: f64) -> (f64, f64) {
    // Angle 0 points up; SVG y grows downward, so adding turns moves
    // clockwise on screen.
    let turn = std::f64::consts::TAU * f64::from(i) / f64::from(n);
    let x = SIZE / 2.0 + radius * turn.sin();
    let y = SIZE / 2.0 - radius * turn.cos();
    (x, y)
}

fn line(out: &mut String, from: (f64, f64), to: (f64, f64), style: &str) {
    writeln!(
        out,
        r#"  <line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" {}/>"#,
        from.0, from.1, to.0, to.1, style
    )
    .expect("writing to a String cannot fail");
}

pub fn render(t: &CsTriangulation, dotted: &[Edge]) -> String {
    let dim = t.dim();
    let n = dim.n();
    let at = |v: u16| position(v, n, RADIUS);

    let mut dotted = dotted.to_vec();
    dotted.sort();
    dotted.dedup();

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{0}" height="{0}" viewBox="0 0 {0} {0}">"#,
        SIZE as u32
    )
    .unwrap();
    writeln!(
        out,
        r#"  <rect width="{0}" height="{0}" fill="white"/>"#,
        SIZE as u32
    )
    .unwrap();

    let mut boundary = String::new();
    for v in 0..n {
        let (x, y) = at(v);
        if v > 0 {
            boundary.push(' ');
        }
        write!(boundary, "{x:.3},{y:.3}").unwrap();
    }
    writeln!(
        out,
        r##"  <polygon points="{boundary}" fill="none" stroke="#b0b0b0" stroke-width="1"/>"##
    )
    .unwrap();

    for &e in t.interior() {
        if dotted.contains(&e) {
            continue; // drawn dashed below instead
        }
        let style = if dim.is_diagonal(e) {
            r##"stroke="#202020" stroke-width="3""##
        } else {
            r##"stroke="#202020" stroke-width="1.5""##
        };
        line(&mut out, at(e.lo().0), at(e.hi().0), style);
    }
    for &e in &dotted {
        line(
            &mut out,
            at(e.lo().0),
            at(e.hi().0),
            r##"stroke="#606060" stroke-width="1.5" stroke-dasharray="6 4""##,
        );
    }

    for v in 0..n {
        let (x, y) = at(v);
        writeln!(
            out,
            r##"  <circle cx="{x:.3}" cy="{y:.3}" r="3" fill="#202020"/>"##
        )
        .unwrap();
        let (lx, ly) = position(v, n, LABEL_RADIUS);
        writeln!(
            out,
            r##"  <text x="{lx:.3}" y="{ly:.3}" font-family="monospace" font-size="13" text-anchor="middle" dominant-baseline="central" fill="#202020">{v}</text>"##
        )
        .unwrap();
    }

    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use cyclohedron::constructions::fan_triangulation;
    use cyclohedron::PolygonDim;

    #[test]
    fn square_has_four_vertices_and_one_chord() {
        let dim = PolygonDim::new(1).unwrap();
        let t = fan_triangulation(dim);
        let doc = render(&t, &[]);
        assert_eq!(doc.matches("<circle").count(), 4);
        assert_eq!(doc.matches("stroke-width=\"3\"").count(), 1);
        assert_eq!(doc.matches("<text").count(), 4);
        assert!(doc.starts_with("<svg "));
        assert!(doc.ends_with("</svg>\n"));
    }

    #[test]
    fn output_is_deterministic() {
        let dim = PolygonDim::new(4).unwrap();
        let t = fan_triangulation(dim);
        let extra = [Edge::new(1, 3), Edge::new(1, 3)];
        assert_eq!(render(&t, &extra), render(&t, &extra));
        assert_eq!(render(&t, &extra), render(&t, &[Edge::new(1, 3)]));
    }

    #[test]
    fn dotted_edges_replace_solid_ones() {
        let dim = PolygonDim::new(2).unwrap();
        let t = fan_triangulation(dim);
        let chord = t.interior()[0];
        let doc = render(&t, &[chord]);
        assert_eq!(doc.matches("stroke-dasharray").count(), 1);
        // Still one line per interior edge plus the boundary polygon.
        assert_eq!(doc.matches("<line").count(), t.interior().len());
    }

    #[test]
    fn vertex_zero_sits_at_the_top() {
        let (x, y) = position(0, 6, RADIUS);
        assert!((x - SIZE / 2.0).abs() < 1e-9);
        assert!(y < SIZE / 2.0);
        // Vertex 1 is clockwise from it: to the right.
        let (x1, _) = position(1, 6, RADIUS);
        assert!(x1 > x);
    }
}
