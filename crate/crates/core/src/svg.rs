//! Deterministic SVG rendering of drawn maps.
//!
//! Output is a pure function of the input: edges are emitted in sorted
//! order, vertices in vertex order, and every coordinate is printed with a
//! fixed precision, so the same drawing always yields byte-identical SVG.

use std::collections::BTreeMap;

use crate::geometry::GeometricMap;
use crate::map::VertexId;
use crate::scalar::Real;

/// Rendering options. The defaults draw bare matchsticks.
#[derive(Debug, Clone, Default)]
pub struct SvgOptions {
    /// Label every vertex with its id.
    pub labels: bool,
    /// Fill color per vertex id; vertices not listed use a neutral fill.
    /// Callers typically derive this from vertex charges.
    pub vertex_fill: BTreeMap<VertexId, String>,
}

fn fmt(x: f64) -> String {
    // Fixed precision keeps the output byte-deterministic and diff-friendly.
    let s = format!("{x:.4}");
    // Avoid "-0.0000", which would make equal drawings differ.
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

/// Renders a drawing as a standalone SVG document.
///
/// One `<line>` per edge, one `<circle>` per vertex; the viewBox is the
/// drawing's bounding box plus a 5% margin (at least half a unit, so lone
/// vertices and flat drawings stay visible). The y axis is flipped so the
/// mathematical orientation (counterclockwise faces) appears untouched.
pub fn render_svg<R: Real>(gm: &GeometricMap<R>, opts: &SvgOptions) -> String {
    let map = gm.map();
    let pts: Vec<(f64, f64)> = gm
        .points()
        .iter()
        .map(|p| (p.x.to_f64_lossy(), -p.y.to_f64_lossy()))
        .collect();

    let (mut min_x, mut min_y, mut max_x, mut max_y) = (0.0f64, 0.0f64, 1.0f64, 1.0f64);
    if let Some(&(x0, y0)) = pts.first() {
        (min_x, min_y, max_x, max_y) = (x0, y0, x0, y0);
        for &(x, y) in &pts {
            min_x = min_x.min(x);
            min_y = min_y.min(y);
            max_x = max_x.max(x);
            max_y = max_y.max(y);
        }
    }
    let margin = (0.05 * (max_x - min_x).max(max_y - min_y)).max(0.5);
    let (vx, vy) = (min_x - margin, min_y - margin);
    let (vw, vh) = (max_x - min_x + 2.0 * margin, max_y - min_y + 2.0 * margin);

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">\n",
        fmt(vx),
        fmt(vy),
        fmt(vw),
        fmt(vh)
    ));

    out.push_str("  <g stroke=\"#444444\" stroke-width=\"0.03\" stroke-linecap=\"round\">\n");
    for (u, v) in map.edge_list() {
        let (x1, y1) = pts[u];
        let (x2, y2) = pts[v];
        out.push_str(&format!(
            "    <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n",
            fmt(x1),
            fmt(y1),
            fmt(x2),
            fmt(y2)
        ));
    }
    out.push_str("  </g>\n");

    out.push_str("  <g stroke=\"none\">\n");
    for (v, &(x, y)) in pts.iter().enumerate() {
        let fill = opts
            .vertex_fill
            .get(&map.id(v))
            .map(String::as_str)
            .unwrap_or("#222222");
        out.push_str(&format!(
            "    <circle cx=\"{}\" cy=\"{}\" r=\"0.06\" fill=\"{fill}\"/>\n",
            fmt(x),
            fmt(y)
        ));
    }
    out.push_str("  </g>\n");

    if opts.labels {
        out.push_str(
            "  <g font-family=\"monospace\" font-size=\"0.18\" text-anchor=\"middle\" \
             fill=\"#0044aa\">\n",
        );
        for (v, &(x, y)) in pts.iter().enumerate() {
            out.push_str(&format!(
                "    <text x=\"{}\" y=\"{}\">{}</text>\n",
                fmt(x + 0.1),
                fmt(y - 0.1),
                map.id(v)
            ));
        }
        out.push_str("  </g>\n");
    }

    out.push_str("</svg>\n");
    out
}
