use super::BookDrawing;
use crate::graph::Graph;
use std::fmt::Write;

const GAP: f64 = 40.0;
const MARGIN: f64 = 20.0;

/// Arc diagram: spine left to right, page 0 above, page 1 below.
pub fn render_svg(g: &Graph, d: &BookDrawing) -> String {
    let n = d.spine.len();
    let pos = d.positions();
    let width = 2.0 * MARGIN + GAP * n.saturating_sub(1) as f64;
    let half = GAP * n.max(1) as f64 / 2.0 + MARGIN;
    let height = 2.0 * half;
    let x = |v: usize| MARGIN + GAP * pos[v] as f64;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        s,
        r#"  <line x1="{MARGIN}" y1="{half}" x2="{}" y2="{half}" stroke="black"/>"#,
        width - MARGIN
    );
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let (x1, x2) = (x(u).min(x(v)), x(u).max(x(v)));
        let r = (x2 - x1) / 2.0;
        // Sweep 1 bends the arc upward when drawn left to right.
        let (sweep, color) = if d.pages.get(e).copied().unwrap_or(0) == 0 {
            (1, "steelblue")
        } else {
            (0, "firebrick")
        };
        let _ = writeln!(
            s,
            r#"  <path d="M {x1} {half} A {r} {r} 0 0 {sweep} {x2} {half}" fill="none" stroke="{color}"/>"#
        );
    }
    for &v in &d.spine {
        let _ = writeln!(
            s,
            r#"  <circle cx="{}" cy="{half}" r="4" fill="black"/>"#,
            x(v)
        );
        let _ = writeln!(
            s,
            r#"  <text x="{}" y="{}" font-size="10" text-anchor="middle">{v}</text>"#,
            x(v),
            half + 14.0
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn empty_graph_has_spine_only() {
        let g = Graph::new(0).unwrap();
        let svg = render_svg(&g, &BookDrawing::one_page(&g, vec![]));
        assert!(svg.contains("<line"));
        assert!(!svg.contains("<path"));
    }

    #[test]
    fn one_arc_per_edge() {
        let g = named::complete(4);
        let svg = render_svg(&g, &BookDrawing::one_page(&g, vec![0, 1, 2, 3]));
        assert_eq!(svg.matches("<path").count(), 6);
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    }
}
