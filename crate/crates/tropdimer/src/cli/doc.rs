//! JSON documents for dimers and base diagrams.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::almost_toric::{BaseDiagram, BaseEdge, CurveOnBase, EdgeEnd};
use crate::dimer::{DualDimer, Polytope};
use crate::lattice_geom::{Rat, RatPolygon, Vec2};
use crate::tropical::Color;

pub const DIMER_SCHEMA: &str = "tropdimer/1";
pub const DIAGRAM_SCHEMA: &str = "tropdimer-diagram/1";

/// Largest accepted denominator and coordinate magnitude (in lattice units).
const MAX_DENOMINATOR: i64 = 10_000;
const MAX_EXTENT: i64 = 64;
const MAX_POLYTOPES: usize = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DocError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("{0}")]
    Schema(String),
}

fn schema_err(s: impl Into<String>) -> DocError {
    DocError::Schema(s.into())
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPolytope {
    color: String,
    vertices: Vec<[i64; 2]>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDimer {
    schema: String,
    denominator: i64,
    polytopes: Vec<RawPolytope>,
    #[serde(default)]
    weights: BTreeMap<String, [i64; 2]>,
}

/// A dimer together with optional edge weights keyed by edge id.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DimerDocument {
    pub dimer: DualDimer,
    pub weights: BTreeMap<String, Rat>,
}

fn check_denominator(n: i64) -> Result<(), DocError> {
    if !(1..=MAX_DENOMINATOR).contains(&n) {
        return Err(schema_err(format!("denominator must lie in 1..={MAX_DENOMINATOR}, got {n}")));
    }
    Ok(())
}

fn point(p: [i64; 2], n: i64) -> Result<Vec2, DocError> {
    let lim = MAX_EXTENT * n;
    if p[0].abs() > lim || p[1].abs() > lim {
        return Err(schema_err(format!("coordinate [{}, {}] is out of range", p[0], p[1])));
    }
    Ok(Vec2::frac(p[0], p[1], n))
}

/// Convex polygon from vertices listed in either orientation.
fn polygon(vs: Vec<Vec2>) -> Option<RatPolygon> {
    RatPolygon::from_ccw(vs.clone()).or_else(|| RatPolygon::from_ccw(vs.into_iter().rev().collect()))
}

pub fn parse_dimer(text: &str) -> Result<DimerDocument, DocError> {
    let raw: RawDimer = serde_json::from_str(text).map_err(|e| DocError::Json(e.to_string()))?;
    if raw.schema != DIMER_SCHEMA {
        return Err(schema_err(format!("expected schema \"{DIMER_SCHEMA}\", got \"{}\"", raw.schema)));
    }
    check_denominator(raw.denominator)?;
    if raw.polytopes.len() > MAX_POLYTOPES {
        return Err(schema_err("too many polytopes"));
    }
    let n = raw.denominator;
    let mut polys = Vec::new();
    for (i, p) in raw.polytopes.into_iter().enumerate() {
        let color = match p.color.as_str() {
            "white" => Color::White,
            "black" => Color::Black,
            c => return Err(schema_err(format!("polytope {i}: unknown color \"{c}\""))),
        };
        if p.vertices.len() < 3 || p.vertices.len() > MAX_POLYTOPES {
            return Err(schema_err(format!("polytope {i}: needs between 3 and {MAX_POLYTOPES} vertices")));
        }
        let vs = p.vertices.into_iter().map(|v| point(v, n)).collect::<Result<Vec<_>, _>>()?;
        let polygon = polygon(vs).ok_or_else(|| schema_err(format!("polytope {i}: not a strictly convex polygon")))?;
        polys.push(Polytope { color, polygon });
    }
    let dimer = DualDimer::new(n, polys).map_err(|e| schema_err(e.to_string()))?.canonical();
    let mut weights = BTreeMap::new();
    for (k, [a, b]) in raw.weights {
        if b == 0 {
            return Err(schema_err(format!("weight {k}: zero denominator")));
        }
        weights.insert(k, Rat::new(a as i128, b as i128));
    }
    Ok(DimerDocument { dimer, weights })
}

fn numerators(v: Vec2, n: i64) -> [i64; 2] {
    let (x, y) = v.numerators(n as i128).expect("grid point");
    [x as i64, y as i64]
}

/// Canonical compact JSON, without a trailing newline.
pub fn serialize_dimer(doc: &DimerDocument) -> String {
    let d = doc.dimer.canonical();
    let n = d.denominator();
    let raw = RawDimer {
        schema: DIMER_SCHEMA.to_string(),
        denominator: n,
        polytopes: d
            .polytopes()
            .iter()
            .map(|p| RawPolytope {
                color: p.color.name().to_string(),
                vertices: p.polygon.vertices().iter().map(|&v| numerators(v, n)).collect(),
            })
            .collect(),
        weights: doc.weights.iter().map(|(k, r)| (k.clone(), [*r.numer() as i64, *r.denom() as i64])).collect(),
    };
    serde_json::to_string(&raw).expect("serializable")
}

pub fn dimer_document(d: &DualDimer) -> DimerDocument {
    DimerDocument { dimer: d.canonical(), weights: BTreeMap::new() }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNode {
    position: [i64; 2],
    eigenray: [i64; 2],
    multiplicity: u64,
    corner: Option<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCut {
    node: usize,
    direction: [i64; 2],
    matrix: [[i64; 2]; 2],
    translation: [i64; 2],
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEdge {
    from: usize,
    to: String,
    direction: [i64; 2],
    multiplicity: u64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCurve {
    vertices: Vec<[i64; 2]>,
    edges: Vec<RawEdge>,
    attachments: Vec<[usize; 2]>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDiagram {
    schema: String,
    denominator: i64,
    boundary: Option<Vec<[i64; 2]>>,
    nodes: Vec<RawNode>,
    cuts: Vec<RawCut>,
    curve: Option<RawCurve>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiagramDocument {
    pub diagram: BaseDiagram,
    pub curve: Option<CurveOnBase>,
}

fn int_vec(v: Vec2) -> [i64; 2] {
    let (x, y) = v.to_ints().expect("integral vector");
    [x, y]
}

fn lcm_of(points: impl IntoIterator<Item = Vec2>) -> i64 {
    points.into_iter().fold(1i128, |a, v| a.lcm(&v.denom())) as i64
}

pub fn serialize_diagram(doc: &DiagramDocument) -> String {
    let d = &doc.diagram;
    let mut pts: Vec<Vec2> = d.boundary.iter().flat_map(|b| b.vertices().to_vec()).collect();
    pts.extend(d.nodes.iter().map(|n| n.position));
    pts.extend(d.cuts.iter().map(|c| c.transition.translation()));
    if let Some(c) = &doc.curve {
        pts.extend(c.vertices.iter().copied());
    }
    let n = lcm_of(pts);
    let raw = RawDiagram {
        schema: DIAGRAM_SCHEMA.to_string(),
        denominator: n,
        boundary: d.boundary.as_ref().map(|b| b.vertices().iter().map(|&v| numerators(v, n)).collect()),
        nodes: d
            .nodes
            .iter()
            .map(|x| RawNode {
                position: numerators(x.position, n),
                eigenray: int_vec(x.eigenray),
                multiplicity: x.multiplicity,
                corner: x.corner,
            })
            .collect(),
        cuts: d
            .cuts
            .iter()
            .map(|c| RawCut {
                node: c.node,
                direction: int_vec(c.direction),
                matrix: c.transition.matrix(),
                translation: numerators(c.transition.translation(), n),
            })
            .collect(),
        curve: doc.curve.as_ref().map(|c| RawCurve {
            vertices: c.vertices.iter().map(|&v| numerators(v, n)).collect(),
            edges: c
                .edges
                .iter()
                .map(|e| RawEdge {
                    from: e.from,
                    to: match e.to {
                        EdgeEnd::Vertex(j) => format!("v{j}"),
                        EdgeEnd::Node(k) => format!("n{k}"),
                        EdgeEnd::Infinity => "inf".to_string(),
                    },
                    direction: int_vec(e.dir),
                    multiplicity: e.mult,
                })
                .collect(),
            attachments: c.attachments.iter().map(|&(e, k)| [e, k]).collect(),
        }),
    };
    serde_json::to_string(&raw).expect("serializable")
}

fn primitive_int(v: [i64; 2], what: &str) -> Result<Vec2, DocError> {
    if v[0].abs() > MAX_EXTENT || v[1].abs() > MAX_EXTENT || v.iter().all(|x| *x == 0) {
        return Err(schema_err(format!("{what} [{}, {}] is out of range", v[0], v[1])));
    }
    Ok(Vec2::int(v[0], v[1]))
}

pub fn parse_diagram(text: &str) -> Result<DiagramDocument, DocError> {
    let raw: RawDiagram = serde_json::from_str(text).map_err(|e| DocError::Json(e.to_string()))?;
    if raw.schema != DIAGRAM_SCHEMA {
        return Err(schema_err(format!("expected schema \"{DIAGRAM_SCHEMA}\", got \"{}\"", raw.schema)));
    }
    check_denominator(raw.denominator)?;
    let n = raw.denominator;
    let boundary = match raw.boundary {
        None => None,
        Some(vs) => {
            if vs.len() < 3 || vs.len() > MAX_POLYTOPES {
                return Err(schema_err("boundary needs between 3 and 256 vertices"));
            }
            let vs = vs.into_iter().map(|v| point(v, n)).collect::<Result<Vec<_>, _>>()?;
            Some(polygon(vs).ok_or_else(|| schema_err("boundary is not a strictly convex polygon"))?)
        }
    };
    let mut diagram = BaseDiagram { boundary, ..Default::default() };
    if raw.nodes.len() > MAX_POLYTOPES {
        return Err(schema_err("too many nodes"));
    }
    for (i, x) in raw.nodes.iter().enumerate() {
        let e = primitive_int(x.eigenray, "eigenray")?;
        if e.primitive() != e {
            return Err(schema_err(format!("node {i}: eigenray is not primitive")));
        }
        if x.multiplicity == 0 || x.multiplicity > MAX_EXTENT as u64 {
            return Err(schema_err(format!("node {i}: multiplicity out of range")));
        }
        let nb = diagram.boundary.as_ref().map_or(0, |b| b.len());
        if x.corner.is_some_and(|c| c >= nb) {
            return Err(schema_err(format!("node {i}: corner out of range")));
        }
        diagram.add_node(point(x.position, n)?, e, x.multiplicity, x.corner);
    }
    let cuts_ok = raw.cuts.len() == diagram.cuts.len()
        && raw.cuts.iter().zip(&diagram.cuts).all(|(r, c)| {
            r.node == c.node
                && Vec2::int(r.direction[0], r.direction[1]) == c.direction
                && r.matrix == c.transition.matrix()
                && point(r.translation, n).ok() == Some(c.transition.translation())
        });
    if !cuts_ok {
        return Err(schema_err("cuts do not match the node data"));
    }
    let curve = match raw.curve {
        None => None,
        Some(rc) => {
            if rc.vertices.len() > MAX_POLYTOPES || rc.edges.len() > MAX_POLYTOPES {
                return Err(schema_err("curve too large"));
            }
            let vertices = rc.vertices.into_iter().map(|v| point(v, n)).collect::<Result<Vec<_>, _>>()?;
            let mut edges = Vec::new();
            for (i, e) in rc.edges.into_iter().enumerate() {
                let idx = |s: &str| s.parse::<usize>().ok();
                let to = match e.to.split_at(e.to.len().min(1)) {
                    ("v", j) => idx(j).filter(|&j| j < vertices.len()).map(EdgeEnd::Vertex),
                    ("n", k) => idx(k).filter(|&k| k < diagram.nodes.len()).map(EdgeEnd::Node),
                    _ if e.to == "inf" => Some(EdgeEnd::Infinity),
                    _ => None,
                }
                .ok_or_else(|| schema_err(format!("curve edge {i}: bad endpoint \"{}\"", e.to)))?;
                if e.from >= vertices.len() || e.multiplicity == 0 || e.multiplicity > MAX_EXTENT as u64 {
                    return Err(schema_err(format!("curve edge {i}: bad start or multiplicity")));
                }
                edges.push(BaseEdge { from: e.from, to, dir: primitive_int(e.direction, "direction")?, mult: e.multiplicity });
            }
            let attachments: Vec<(usize, usize)> = rc.attachments.into_iter().map(|[e, k]| (e, k)).collect();
            if attachments.iter().any(|&(e, k)| e >= edges.len() || k >= diagram.nodes.len()) {
                return Err(schema_err("attachment out of range"));
            }
            Some(CurveOnBase { vertices, edges, attachments })
        }
    };
    Ok(DiagramDocument { diagram, curve })
}

/// Rational as `[num, den]`.
pub fn rat_json(r: Rat) -> serde_json::Value {
    serde_json::json!([*r.numer() as i64, *r.denom() as i64])
}

/// Exponent as `[num_x, num_y, den]`.
pub fn exponent_json(v: Vec2) -> serde_json::Value {
    let d = v.denom();
    let (x, y) = v.numerators(d).expect("own denominator");
    serde_json::json!([x as i64, y as i64, d as i64])
}

