//! Grid drawings of arcs, with `y` increasing upward and the origin at the
//! bottom left.

use std::fmt::Write as _;

use crate::arc::ArcSet;

/// SVG units per grid cell.
pub const CELL: u32 = 15;

/// `n` rows of `n` characters, top row `y = n - 1`; `*` marks a point.
pub fn ascii(arc: &ArcSet) -> String {
    let n = arc.modulus().get();
    let mut out = String::with_capacity(((n + 1) * n) as usize);
    for y in (0..n).rev() {
        for x in 0..n {
            let p = arc.modulus().point(x as i64, y as i64);
            out.push(if arc.contains(&p) { '*' } else { '.' });
        }
        out.push('\n');
    }
    out
}

/// An SVG 1.1 drawing: ruled `n x n` grid, one filled circle per point at
/// the center of its cell.
pub fn svg(arc: &ArcSet) -> String {
    let n = arc.modulus().get();
    let size = n * CELL;
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    );
    let _ = writeln!(out, r#"  <rect x="0" y="0" width="{size}" height="{size}" fill="white"/>"#);
    let _ = writeln!(out, r#"  <g stroke="black" stroke-width="0.5">"#);
    for i in 0..=n {
        let c = i * CELL;
        let _ = writeln!(out, r#"    <line x1="{c}" y1="0" x2="{c}" y2="{size}"/>"#);
        let _ = writeln!(out, r#"    <line x1="0" y1="{c}" x2="{size}" y2="{c}"/>"#);
    }
    let _ = writeln!(out, "  </g>");
    let _ = writeln!(out, r#"  <g fill="black">"#);
    let half = CELL as f64 / 2.0;
    for p in arc.points() {
        let cx = (p.x * CELL) as f64 + half;
        let cy = ((n - 1 - p.y) * CELL) as f64 + half;
        let _ = writeln!(out, r#"    <circle cx="{cx}" cy="{cy}" r="{}"/>"#, CELL as f64 / 3.0);
    }
    let _ = writeln!(out, "  </g>");
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::modular::Modulus;

    /// Reads an ASCII drawing back into `(x, y)` pairs.
    fn read_ascii(text: &str) -> Vec<(i64, i64)> {
        let rows: Vec<&str> = text.lines().collect();
        let n = rows.len();
        let mut pts = Vec::new();
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n);
            for (x, ch) in row.chars().enumerate() {
                match ch {
                    '*' => pts.push((x as i64, (n - 1 - r) as i64)),
                    '.' => {}
                    _ => panic!("unexpected {ch:?}"),
                }
            }
        }
        pts
    }

    #[test]
    fn figure_one_bottom_row() {
        let text = ascii(&fixtures::figure(1));
        assert_eq!(text.lines().count(), 6);
        assert_eq!(text.lines().last(), Some("**...."));
        assert_eq!(text.matches('*').count(), 8);
    }

    #[test]
    fn ascii_round_trip() {
        for arc in fixtures::figures() {
            let back = ArcSet::from_coords(arc.modulus(), &read_ascii(&ascii(&arc))).unwrap();
            assert_eq!(back, arc);
        }
    }

    #[test]
    fn empty_grid() {
        let text = ascii(&ArcSet::empty(Modulus::new(4).unwrap()));
        assert_eq!(text, "....\n....\n....\n....\n");
    }

    #[test]
    fn svg_figure_three() {
        let text = svg(&fixtures::figure(3));
        assert_eq!(text.matches("<circle").count(), 12);
        assert_eq!(text.matches("<line").count(), 2 * 15);
        assert!(text.contains(r#"width="210""#));
        // (0,0) sits in the bottom-left cell.
        assert!(text.contains(r#"<circle cx="7.5" cy="202.5""#));
    }
}
