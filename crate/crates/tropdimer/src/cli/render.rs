//! Static SVG pictures of dimers and base diagrams.

use std::fmt::Write;

use num_traits::ToPrimitive;

use crate::almost_toric::{BaseDiagram, CurveOnBase, EdgeEnd};
use crate::dimer::{build_graph, zigzag_paths, DualDimer};
use crate::lattice_geom::Vec2;
use crate::tropical::Color;

const SIZE: f64 = 480.0;
const MARGIN: f64 = 40.0;

/// Optional layers, parsed from a comma separated `--show` list.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Layers {
    pub graph: bool,
    pub zigzags: bool,
    pub outer: bool,
    pub inner: bool,
}

impl Layers {
    pub fn parse(s: &str) -> Result<Layers, String> {
        let mut l = Layers::default();
        for part in s.split(',').filter(|p| !p.is_empty()) {
            match part {
                "graph" => l.graph = true,
                "zigzags" => l.zigzags = true,
                "outer" => l.outer = true,
                "inner" => l.inner = true,
                other => return Err(format!("unknown layer `{other}` (expected graph, zigzags, outer, inner)")),
            }
        }
        Ok(l)
    }
}

/// Affine map from the box `[lo, hi]` onto the canvas, y pointing up.
struct Frame {
    lo: (f64, f64),
    scale: f64,
}

impl Frame {
    fn new(lo: (f64, f64), hi: (f64, f64)) -> Frame {
        let span = (hi.0 - lo.0).max(hi.1 - lo.1).max(1e-9);
        Frame { lo, scale: (SIZE - 2.0 * MARGIN) / span }
    }

    fn pt(&self, v: Vec2) -> (f64, f64) {
        let x = v.x.to_f64().unwrap_or(0.0);
        let y = v.y.to_f64().unwrap_or(0.0);
        (MARGIN + (x - self.lo.0) * self.scale, SIZE - MARGIN - (y - self.lo.1) * self.scale)
    }

    fn pts(&self, vs: impl IntoIterator<Item = Vec2>) -> String {
        vs.into_iter()
            .map(|v| {
                let (x, y) = self.pt(v);
                format!("{x:.2},{y:.2}")
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn header(out: &mut String) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, r#"<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>"#);
}

fn line(out: &mut String, f: &Frame, a: Vec2, b: Vec2, attrs: &str) {
    let (x1, y1) = f.pt(a);
    let (x2, y2) = f.pt(b);
    let _ = writeln!(out, r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" {attrs}/>"#);
}

/// The fundamental domain with white polytopes hollow and black ones filled.
pub fn render_dimer(d: &DualDimer, layers: Layers) -> String {
    let mut lo = (0.0f64, 0.0f64);
    let mut hi = (1.0f64, 1.0f64);
    for p in d.polytopes() {
        for v in p.polygon.vertices() {
            let (x, y) = (v.x.to_f64().unwrap_or(0.0), v.y.to_f64().unwrap_or(0.0));
            lo = (lo.0.min(x), lo.1.min(y));
            hi = (hi.0.max(x), hi.1.max(y));
        }
    }
    let f = Frame::new(lo, hi);
    let mut out = String::new();
    header(&mut out);
    let domain = [Vec2::int(0, 0), Vec2::int(1, 0), Vec2::int(1, 1), Vec2::int(0, 1)];
    let _ = writeln!(
        out,
        r##"<path d="M {} Z" fill="none" stroke="#888888" stroke-dasharray="4 3"/>"##,
        f.pts(domain).replace(' ', " L ")
    );
    for p in d.polytopes() {
        let style = match p.color {
            Color::White => r##"fill="none" stroke="#000000" stroke-width="1.5""##,
            Color::Black => r##"fill="#000000" stroke="#000000" stroke-width="1.5""##,
        };
        let _ = writeln!(out, r#"<polygon class="{}" points="{}" {style}/>"#, p.color.name(), f.pts(p.polygon.vertices().iter().copied()));
    }
    if layers.graph {
        if let Ok(g) = build_graph(d) {
            let _ = writeln!(out, r#"<g class="graph">"#);
            for e in &g.edges {
                let wp = &d.polytopes()[e.white].polygon;
                let bp = &d.polytopes()[e.black].polygon;
                let anchor = wp.vertices()[e.white_vertex];
                let attrs = r##"stroke="#1f77b4" stroke-width="1""##;
                line(&mut out, &f, wp.centroid(), anchor, attrs);
                line(&mut out, &f, anchor, anchor + (bp.centroid() - bp.vertices()[e.black_vertex]), attrs);
            }
            let _ = writeln!(out, "</g>");
        }
    }
    if layers.zigzags {
        if let Ok(zz) = zigzag_paths(d) {
            for (i, z) in zz.iter().enumerate() {
                let _ = writeln!(out, r#"<g class="zigzag" data-class="{}">"#, z.cls);
                for &(p, a, b) in &z.segments {
                    let poly = &d.polytopes()[p].polygon;
                    let _ = writeln!(
                        out,
                        r##"<polyline points="{}" fill="none" stroke="{}" stroke-width="3" stroke-opacity="0.6"/>"##,
                        f.pts([poly.vertices()[a], poly.vertices()[b]]),
                        PALETTE[i % PALETTE.len()]
                    );
                }
                let _ = writeln!(out, "</g>");
            }
        }
    }
    out.push_str("</svg>\n");
    out
}

const PALETTE: [&str; 6] = ["#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b"];

/// Boundary, nodes as crosses, dashed cuts and any curves.
pub fn render_diagram(d: &BaseDiagram, curves: &[(&str, &CurveOnBase)]) -> String {
    let mut pts: Vec<Vec2> = d.boundary.iter().flat_map(|b| b.vertices().to_vec()).collect();
    pts.extend(d.nodes.iter().map(|n| n.position));
    for (_, c) in curves {
        pts.extend(c.vertices.iter().copied());
    }
    if pts.is_empty() {
        pts.push(Vec2::zero());
    }
    let xs: Vec<f64> = pts.iter().map(|v| v.x.to_f64().unwrap_or(0.0)).collect();
    let ys: Vec<f64> = pts.iter().map(|v| v.y.to_f64().unwrap_or(0.0)).collect();
    let fmin = |v: &[f64]| v.iter().copied().fold(f64::INFINITY, f64::min);
    let fmax = |v: &[f64]| v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    // unbounded diagrams get a window around their nodes and vertices
    let pad = if d.boundary.is_some() { 0.0 } else { 2.0 };
    let f = Frame::new((fmin(&xs) - pad, fmin(&ys) - pad), (fmax(&xs) + pad, fmax(&ys) + pad));
    let mut out = String::new();
    header(&mut out);
    if let Some(b) = &d.boundary {
        let _ = writeln!(out, r##"<polygon class="boundary" points="{}" fill="#f4f1e8" stroke="#000000" stroke-width="1.5"/>"##, f.pts(b.vertices().iter().copied()));
    }
    for c in &d.cuts {
        let n = &d.nodes[c.node];
        let end = match (&d.boundary, n.corner) {
            (Some(b), Some(k)) => b.vertices()[k],
            _ => n.position + c.direction.scale(crate::lattice_geom::ri(2)),
        };
        line(&mut out, &f, n.position, end, r##"class="cut" stroke="#555555" stroke-dasharray="5 4""##);
    }
    for n in &d.nodes {
        let (x, y) = f.pt(n.position);
        let _ = writeln!(
            out,
            r##"<path class="node" d="M {:.2},{:.2} L {:.2},{:.2} M {:.2},{:.2} L {:.2},{:.2}" stroke="#000000" stroke-width="2"/>"##,
            x - 5.0, y - 5.0, x + 5.0, y + 5.0, x - 5.0, y + 5.0, x + 5.0, y - 5.0
        );
    }
    for (i, (name, c)) in curves.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let _ = writeln!(out, r#"<g class="curve" data-name="{name}">"#);
        for e in &c.edges {
            let a = c.vertices[e.from];
            let b = match e.to {
                EdgeEnd::Vertex(j) => c.vertices[j],
                EdgeEnd::Node(k) => d.nodes[k].position,
                EdgeEnd::Infinity => a + e.dir.scale(crate::lattice_geom::ri(2)),
            };
            line(&mut out, &f, a, b, &format!(r#"stroke="{color}" stroke-width="{}""#, 1 + e.mult));
        }
        let _ = writeln!(out, "</g>");
    }
    out.push_str("</svg>\n");
    out
}
