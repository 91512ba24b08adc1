//! Almost-toric base diagrams and tropical curves on them.
//!
//! A node carries a cut: a ray from the node along `-e`, where `e` is its
//! eigenray. Crossing the cut from its clockwise side to its
//! counterclockwise side applies `A = I - k c det(c, .)`, the `k`-fold twist
//! fixing the cut direction `c`. Curves live in one ambient chart; a vertex
//! sitting on a cut is balanced after moving its clockwise legs across.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::catalog::DelPezzo;
use crate::dimer::DualDimer;
use crate::lattice_geom::{ri, rq, H1Class, Rat, RatPolygon, UnimodularMap, Vec2};
use crate::tropical::{CurveEdge, TropicalCurve, TropicalPolynomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AtfError {
    #[error("diagram has no boundary polygon")]
    NoBoundary,
    #[error("no corner with index {0}")]
    BadCorner(usize),
    #[error("corner {0} is already traded")]
    AlreadyTraded(usize),
    #[error("corner {0} is not smooth")]
    NotDelzant(usize),
    #[error("node depth {0} does not place the node inside the polygon")]
    BadDepth(Rat),
    #[error("every corner must be traded first")]
    NotAllTraded,
    #[error("collar distance {0} must lie strictly between 0 and the nearest node depth")]
    RadiusOutOfRange(Rat),
    #[error("inconsistent placement: edge {0} does not close up")]
    InconsistentPlacement(usize),
    #[error("no node with index {0}")]
    NoSuchNode(usize),
    #[error("no curve edge crosses the cut of node {0} parallel to its eigenray")]
    NotParallel(usize),
    #[error("node {0} has no attached leg")]
    NotAttached(usize),
    #[error("curve is not straight after removing the leg at node {0}")]
    NotStraight(usize),
    #[error("distance must be positive")]
    NonPositive,
    #[error("chain length must be at least 1")]
    EmptyChain,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Node {
    pub position: Vec2,
    /// Primitive eigendirection, pointing away from the cut.
    pub eigenray: Vec2,
    pub multiplicity: u64,
    /// Boundary corner this node was traded from.
    pub corner: Option<usize>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cut {
    pub node: usize,
    pub direction: Vec2,
    /// Affine map fixing the node, applied when crossing counterclockwise.
    pub transition: UnimodularMap,
}

/// Twist matrix `I - k c det(c, .)`.
pub fn twist_matrix(c: Vec2, k: u64) -> [[i64; 2]; 2] {
    let (a, b) = c.to_ints().expect("integral cut direction");
    let k = k as i64;
    [[1 + k * a * b, -k * a * a], [k * b * b, 1 - k * a * b]]
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BaseDiagram {
    pub boundary: Option<RatPolygon>,
    pub nodes: Vec<Node>,
    pub cuts: Vec<Cut>,
}

impl BaseDiagram {
    pub fn from_polygon(p: RatPolygon) -> Self {
        BaseDiagram { boundary: Some(p), ..Default::default() }
    }

    /// Corners traded so far, in trade order.
    pub fn traded(&self) -> Vec<usize> {
        self.nodes.iter().filter_map(|n| n.corner).collect()
    }

    pub fn add_node(&mut self, position: Vec2, eigenray: Vec2, multiplicity: u64, corner: Option<usize>) {
        let eigenray = eigenray.primitive();
        let direction = -eigenray;
        let m = twist_matrix(direction, multiplicity);
        let lin = UnimodularMap::linear(m).expect("twist is unimodular");
        let transition = UnimodularMap::new(m, position - lin.apply_linear(position)).expect("unimodular");
        self.cuts.push(Cut { node: self.nodes.len(), direction, transition });
        self.nodes.push(Node { position, eigenray, multiplicity, corner });
    }

    /// The chart around a single node: node at the origin, eigenray `(1,1)`.
    pub fn local_model() -> Self {
        let mut d = BaseDiagram::default();
        d.add_node(Vec2::zero(), Vec2::int(1, 1), 1, None);
        d
    }

    /// Distance parameter `t` with `node = corner + t e`.
    pub fn node_depth(&self, k: usize) -> Option<Rat> {
        let n = &self.nodes[k];
        let p = self.boundary.as_ref()?.vertices()[n.corner?];
        let off = n.position - p;
        Some(if n.eigenray.x.is_zero() { off.y / n.eigenray.y } else { off.x / n.eigenray.x })
    }

    /// Nodes by corner, if every corner is traded.
    fn corner_nodes(&self) -> Result<Vec<usize>, AtfError> {
        let b = self.boundary.as_ref().ok_or(AtfError::NoBoundary)?;
        (0..b.len())
            .map(|i| self.nodes.iter().position(|n| n.corner == Some(i)).ok_or(AtfError::NotAllTraded))
            .collect()
    }

    /// Cut containing `q` in its relative interior.
    fn cut_at(&self, q: Vec2) -> Option<&Cut> {
        self.cuts.iter().find(|c| {
            let off = q - self.nodes[c.node].position;
            off.det(c.direction).is_zero() && off.dot(c.direction).is_positive()
        })
    }
}

/// Corner data `(p, u, v)` with `u`, `v` primitive and pointing to the
/// previous and next vertices.
fn corner(p: &RatPolygon, i: usize) -> (Vec2, Vec2, Vec2) {
    let n = p.len();
    let c = p.vertices()[i];
    let u = (p.vertices()[(i + n - 1) % n] - c).primitive();
    let v = (p.vertices()[(i + 1) % n] - c).primitive();
    (c, u, v)
}

pub const DEFAULT_NODE_DEPTH: (i64, i64) = (1, 3);

/// Trades a corner for a node at the default depth.
pub fn nodal_trade(d: &BaseDiagram, corner_index: usize) -> Result<BaseDiagram, AtfError> {
    nodal_trade_at(d, corner_index, rq(DEFAULT_NODE_DEPTH.0, DEFAULT_NODE_DEPTH.1))
}

/// Trades a smooth corner `p` for a node at `p + t e`, where `e` is the
/// primitive inward bisector `u + v`.
pub fn nodal_trade_at(d: &BaseDiagram, corner_index: usize, depth: Rat) -> Result<BaseDiagram, AtfError> {
    let b = d.boundary.as_ref().ok_or(AtfError::NoBoundary)?;
    if corner_index >= b.len() {
        return Err(AtfError::BadCorner(corner_index));
    }
    if d.traded().contains(&corner_index) {
        return Err(AtfError::AlreadyTraded(corner_index));
    }
    let (p, u, v) = corner(b, corner_index);
    if u.det(v).abs() != Rat::one() {
        return Err(AtfError::NotDelzant(corner_index));
    }
    let e = u + v;
    let pos = p + e.scale(depth);
    if !depth.is_positive() || !b.contains_strictly(pos) {
        return Err(AtfError::BadDepth(depth));
    }
    let mut out = d.clone();
    out.add_node(pos, e, 1, Some(corner_index));
    Ok(out)
}

/// Trades every corner in order.
pub fn trade_all(p: RatPolygon) -> Result<BaseDiagram, AtfError> {
    let mut d = BaseDiagram::from_polygon(p);
    for i in 0..d.boundary.as_ref().map_or(0, |b| b.len()) {
        d = nodal_trade(&d, i)?;
    }
    Ok(d)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EdgeEnd {
    Vertex(usize),
    Node(usize),
    Infinity,
}

/// Edge leaving vertex `from` with direction `dir` (in the chart at `from`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BaseEdge {
    pub from: usize,
    pub to: EdgeEnd,
    pub dir: Vec2,
    pub mult: u64,
}

/// Tropical curve drawn on a base diagram. Attached edges end at nodes.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct CurveOnBase {
    pub vertices: Vec<Vec2>,
    pub edges: Vec<BaseEdge>,
    /// `(edge, node)` pairs.
    pub attachments: Vec<(usize, usize)>,
}

impl CurveOnBase {
    /// Weighted legs at a vertex, as stored.
    pub fn legs(&self, v: usize) -> Vec<(Vec2, u64)> {
        let mut out = Vec::new();
        for e in &self.edges {
            if e.from == v {
                out.push((e.dir, e.mult));
            }
            if e.to == EdgeEnd::Vertex(v) {
                out.push((-e.dir, e.mult));
            }
        }
        out
    }

    /// The plain planar curve, attached legs becoming rays.
    pub fn to_tropical_curve(&self) -> TropicalCurve {
        TropicalCurve {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| match e.to {
                    EdgeEnd::Vertex(b) => CurveEdge::Segment { a: e.from, b, mult: e.mult },
                    _ => CurveEdge::Ray { from: e.from, dir: e.dir, mult: e.mult },
                })
                .collect(),
        }
    }

    /// Balancing at every vertex, moving legs across a cut through the
    /// vertex when needed.
    pub fn is_balanced(&self, d: &BaseDiagram) -> bool {
        (0..self.vertices.len()).all(|v| self.vertex_tension(d, v).is_zero())
    }

    fn vertex_tension(&self, d: &BaseDiagram, v: usize) -> Vec2 {
        let cut = d.cut_at(self.vertices[v]);
        self.legs(v).into_iter().fold(Vec2::zero(), |acc, (dir, m)| {
            let dir = match cut {
                Some(c) if c.direction.det(dir).is_negative() => c.transition.apply_linear(dir),
                _ => dir,
            };
            acc + dir.scale(ri(m as i64))
        })
    }

    pub fn attachment_count(&self) -> usize {
        self.attachments.len()
    }
}

fn on_segment(p: Vec2, a: Vec2, b: Vec2) -> bool {
    let d = b - a;
    let w = p - a;
    d.det(w).is_zero() && !w.dot(d).is_negative() && w.dot(d) <= d.dot(d)
}

fn on_ray(p: Vec2, a: Vec2, dir: Vec2) -> bool {
    let w = p - a;
    dir.det(w).is_zero() && !w.dot(dir).is_negative()
}

/// Whether the curve meets nodes only along attached eigenray legs and stays
/// strictly inside the boundary.
pub fn admissible(c: &CurveOnBase, d: &BaseDiagram) -> bool {
    for &(e, k) in &c.attachments {
        if c.edges.get(e).map(|x| x.to) != Some(EdgeEnd::Node(k)) {
            return false;
        }
    }
    if c.vertices.iter().any(|q| d.nodes.iter().any(|n| n.position == *q)) {
        return false;
    }
    for (i, e) in c.edges.iter().enumerate() {
        let a = c.vertices[e.from];
        let thimble_line = match e.to {
            EdgeEnd::Node(k) => {
                let Some(n) = d.nodes.get(k) else { return false };
                if !c.attachments.contains(&(i, k)) || !e.dir.det(n.eigenray).is_zero() {
                    return false;
                }
                let w = n.position - a;
                if !w.det(e.dir).is_zero() || !w.dot(e.dir).is_positive() {
                    return false;
                }
                Some(k)
            }
            _ => None,
        };
        for (k, n) in d.nodes.iter().enumerate() {
            if thimble_line == Some(k) {
                continue;
            }
            let hit = match e.to {
                EdgeEnd::Vertex(b) => on_segment(n.position, a, c.vertices[b]),
                EdgeEnd::Node(j) => on_segment(n.position, a, d.nodes[j].position),
                EdgeEnd::Infinity => on_ray(n.position, a, e.dir),
            };
            let along_eigenline = thimble_line.is_some() && n.eigenray.det(e.dir).is_zero();
            if hit && !along_eigenline {
                return false;
            }
        }
    }
    if let Some(b) = &d.boundary {
        if c.vertices.iter().any(|q| !b.contains_strictly(*q)) {
            return false;
        }
        if c.edges.iter().any(|e| e.to == EdgeEnd::Infinity) {
            return false;
        }
    }
    true
}

/// Closed curve pushed off the boundary: one vertex on each cut at collar
/// distance `r`, joined along the boundary edge directions.
pub fn build_outer_torus(d: &BaseDiagram, r: Rat) -> Result<CurveOnBase, AtfError> {
    let cn = d.corner_nodes()?;
    let min_depth = (0..cn.len()).filter_map(|i| d.node_depth(cn[i])).min().ok_or(AtfError::NotAllTraded)?;
    if !r.is_positive() || r >= min_depth {
        return Err(AtfError::RadiusOutOfRange(r));
    }
    ring(d, r)
}

/// Vertices `p_i + s e_i` joined along the boundary directions.
fn ring(d: &BaseDiagram, s: Rat) -> Result<CurveOnBase, AtfError> {
    let b = d.boundary.as_ref().ok_or(AtfError::NoBoundary)?;
    let n = b.len();
    let mut c = CurveOnBase::default();
    for i in 0..n {
        let (p, u, v) = corner(b, i);
        c.vertices.push(p + (u + v).scale(s));
    }
    for i in 0..n {
        let (_, _, v) = corner(b, i);
        let j = (i + 1) % n;
        let step = c.vertices[j] - c.vertices[i];
        if !step.det(v).is_zero() || !step.dot(v).is_positive() {
            return Err(AtfError::InconsistentPlacement(i));
        }
        c.edges.push(BaseEdge { from: i, to: EdgeEnd::Vertex(j), dir: v, mult: 1 });
    }
    Ok(c)
}

/// Depth used for the inner torus: twice the deepest node.
pub fn inner_torus_depth(d: &BaseDiagram) -> Result<Rat, AtfError> {
    let cn = d.corner_nodes()?;
    cn.iter().filter_map(|&k| d.node_depth(k)).max().map(|t| t * ri(2)).ok_or(AtfError::NotAllTraded)
}

/// One trivalent vertex behind each node, with an eigenray leg to the node
/// and the two boundary directions to its neighbours.
pub fn build_inner_torus(d: &BaseDiagram) -> Result<CurveOnBase, AtfError> {
    let s = inner_torus_depth(d)?;
    let mut c = ring(d, s)?;
    let n = c.vertices.len();
    for (k, node) in d.nodes.iter().enumerate() {
        let Some(i) = node.corner else { continue };
        c.edges.push(BaseEdge { from: i, to: EdgeEnd::Node(k), dir: -node.eigenray, mult: node.multiplicity });
        c.attachments.push((n + k, k));
    }
    Ok(c)
}

/// Replaces the straight crossing of node `k`'s cut by a trivalent vertex at
/// distance `delta` beyond the node, with a leg running into the node.
pub fn nodal_trade_exchange(c: &CurveOnBase, d: &BaseDiagram, k: usize, delta: Rat) -> Result<CurveOnBase, AtfError> {
    let node = d.nodes.get(k).ok_or(AtfError::NoSuchNode(k))?;
    if !delta.is_positive() {
        return Err(AtfError::NonPositive);
    }
    let cut = &d.cuts[k];
    let candidates = (0..c.vertices.len()).filter_map(|v| {
        let off = c.vertices[v] - node.position;
        let on_cut = off.det(cut.direction).is_zero() && off.dot(cut.direction).is_positive();
        let legs = c.legs(v);
        (on_cut && legs.len() == 2 && c.vertex_tension(d, v).is_zero()).then(|| (off.dot(cut.direction), v, legs))
    });
    let (_, v, legs) = candidates.min_by_key(|x| x.0).ok_or(AtfError::NotParallel(k))?;
    let theta = -legs.iter().fold(Vec2::zero(), |a, &(dir, m)| a + dir.scale(ri(m as i64)));
    if !theta.det(cut.direction).is_zero() || !theta.dot(cut.direction).is_positive() || !theta.is_integral() {
        return Err(AtfError::NotParallel(k));
    }
    let m = theta.lattice_length(1).ok_or(AtfError::NotParallel(k))? as u64;
    let mut out = c.clone();
    out.vertices[v] = node.position - cut.direction.scale(delta);
    out.edges.push(BaseEdge { from: v, to: EdgeEnd::Node(k), dir: cut.direction, mult: m });
    out.attachments.push((out.edges.len() - 1, k));
    Ok(out)
}

/// Inverse of [`nodal_trade_exchange`]: drops the leg at node `k` and moves
/// its vertex onto the cut at distance `lambda` from the node.
pub fn nodal_trade_exchange_inverse(c: &CurveOnBase, d: &BaseDiagram, k: usize, lambda: Rat) -> Result<CurveOnBase, AtfError> {
    let node = d.nodes.get(k).ok_or(AtfError::NoSuchNode(k))?;
    if !lambda.is_positive() {
        return Err(AtfError::NonPositive);
    }
    let pos = c.attachments.iter().position(|&(_, n)| n == k).ok_or(AtfError::NotAttached(k))?;
    let (e, _) = c.attachments[pos];
    let mut out = c.clone();
    out.attachments.remove(pos);
    for a in &mut out.attachments {
        if a.0 > e {
            a.0 -= 1;
        }
    }
    let v = out.edges.remove(e).from;
    out.vertices[v] = node.position + d.cuts[k].direction.scale(lambda);
    if out.legs(v).len() != 2 || !out.vertex_tension(d, v).is_zero() {
        return Err(AtfError::NotStraight(k));
    }
    Ok(out)
}

/// The straight curve through the cut of the local model: a vertex at
/// `(-1,-1)` with legs `(0,1)` and `(1,0)`.
pub fn local_line() -> CurveOnBase {
    CurveOnBase {
        vertices: vec![Vec2::int(-1, -1)],
        edges: vec![
            BaseEdge { from: 0, to: EdgeEnd::Infinity, dir: Vec2::int(0, 1), mult: 1 },
            BaseEdge { from: 0, to: EdgeEnd::Infinity, dir: Vec2::int(1, 0), mult: 1 },
        ],
        attachments: vec![],
    }
}

/// `n` nodes on one eigenline and a curve with a leg into each of them.
pub fn an_chain_curve(n: u64) -> Result<(BaseDiagram, CurveOnBase), AtfError> {
    if n == 0 {
        return Err(AtfError::EmptyChain);
    }
    let mut d = BaseDiagram::default();
    for j in 0..n as i64 {
        d.add_node(Vec2::int(-j, -j), Vec2::int(1, 1), 1, None);
    }
    let n_i = n as i64;
    let mut c = CurveOnBase {
        vertices: vec![Vec2::int(1, 1)],
        edges: vec![
            BaseEdge { from: 0, to: EdgeEnd::Infinity, dir: Vec2::int(0, 1), mult: 1 },
            BaseEdge { from: 0, to: EdgeEnd::Infinity, dir: Vec2::int(n_i, n_i - 1), mult: 1 },
        ],
        attachments: vec![],
    };
    for k in 0..n as usize {
        c.edges.push(BaseEdge { from: 0, to: EdgeEnd::Node(k), dir: Vec2::int(-1, -1), mult: 1 });
        c.attachments.push((c.edges.len() - 1, k));
    }
    Ok((d, c))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Chart {
    pub region: RatPolygon,
    pub phi: TropicalPolynomial,
}

/// Tropical functions on overlapping charts. `transitions[(i, j)]` maps
/// chart `i` coordinates to chart `j`; missing pairs use the inverse of the
/// reverse pair, or the identity.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ChartedSection {
    pub charts: Vec<Chart>,
    pub transitions: BTreeMap<(usize, usize), UnimodularMap>,
    /// Nodes as `(chart, position in that chart)`.
    pub nodes: Vec<(usize, Vec2)>,
}

impl ChartedSection {
    pub fn transition(&self, i: usize, j: usize) -> UnimodularMap {
        if i == j {
            return UnimodularMap::identity();
        }
        self.transitions
            .get(&(i, j))
            .copied()
            .or_else(|| self.transitions.get(&(j, i)).map(|m| m.inverse()))
            .unwrap_or_else(UnimodularMap::identity)
    }

    /// The same section after changing every chart by `m`.
    pub fn apply_map(&self, m: &UnimodularMap) -> ChartedSection {
        let inv = m.inverse();
        ChartedSection {
            charts: self
                .charts
                .iter()
                .map(|c| Chart { region: c.region.map(|v| m.apply(v)), phi: c.phi.pushforward(m) })
                .collect(),
            transitions: self.transitions.iter().map(|(&k, t)| (k, m.compose(&t.compose(&inv)))).collect(),
            nodes: self.nodes.iter().map(|&(c, p)| (c, m.apply(p))).collect(),
        }
    }
}

fn transpose_apply(m: &UnimodularMap, v: Vec2) -> Vec2 {
    let [[a, b], [c, d]] = m.matrix();
    Vec2::new(ri(a) * v.x + ri(c) * v.y, ri(b) * v.x + ri(d) * v.y)
}

/// Tie lines `a . x = b` of a polynomial.
fn tie_lines(phi: &TropicalPolynomial) -> Vec<(Vec2, Rat)> {
    let t: Vec<(Vec2, Rat)> = phi.terms().iter().map(|(e, c)| (*e, *c)).collect();
    let mut out = Vec::new();
    for i in 0..t.len() {
        for j in i + 1..t.len() {
            out.push((t[i].0 - t[j].0, t[j].1 - t[i].1));
        }
    }
    out
}

fn split(pieces: Vec<RatPolygon>, a: Vec2, b: Rat) -> Vec<RatPolygon> {
    pieces
        .into_iter()
        .flat_map(|p| [p.clip(a, b), p.clip(-a, -b)])
        .flatten()
        .filter(|p| !p.is_degenerate())
        .collect()
}

/// Checks that the chart differentials glue: on each overlap, the gradients
/// differ by one integral covector, and every node sits inside a chart.
pub fn validate_section(s: &ChartedSection) -> bool {
    let n = s.charts.len();
    for i in 0..n {
        for j in i + 1..n {
            let t = s.transition(i, j);
            let inv = t.inverse();
            let other = s.charts[j].region.map(|v| inv.apply(v));
            let Some(overlap) = s.charts[i].region.intersect(&other) else { continue };
            if overlap.is_degenerate() {
                continue;
            }
            let mut pieces = vec![overlap];
            for (a, b) in tie_lines(&s.charts[i].phi) {
                pieces = split(pieces, a, b);
            }
            for (a, b) in tie_lines(&s.charts[j].phi) {
                pieces = split(pieces, transpose_apply(&t, a), b - a.dot(t.translation()));
            }
            let mut diff: Option<Vec2> = None;
            for p in &pieces {
                let x = p.centroid();
                let (Some(gi), Some(gj)) = (s.charts[i].phi.gradient_at(x), s.charts[j].phi.gradient_at(t.apply(x))) else {
                    continue;
                };
                let dlt = gi - transpose_apply(&t, gj);
                if !dlt.is_integral() || diff.is_some_and(|d0| d0 != dlt) {
                    return false;
                }
                diff = Some(dlt);
            }
        }
    }
    s.nodes.iter().all(|&(c, p)| (0..n).any(|j| s.charts[j].region.contains_strictly(s.transition(c, j).apply(p))))
}

fn rect(x0: i64, y0: i64, x1: i64, y1: i64) -> RatPolygon {
    RatPolygon::from_ccw(vec![Vec2::int(x0, y0), Vec2::int(x1, y0), Vec2::int(x1, y1), Vec2::int(x0, y1)]).expect("rectangle")
}

fn poly(terms: &[((i64, i64), i64)], concave: bool) -> TropicalPolynomial {
    let t = terms.iter().map(|&((x, y), c)| (Vec2::int(x, y), ri(c)));
    if concave { TropicalPolynomial::concave(t) } else { TropicalPolynomial::new(t) }.expect("terms")
}

/// Two overlapping boxes carrying `max(0, x)` and `max(-x, 0)`, whose
/// differentials differ by the constant covector `(1, 0)`.
pub fn two_chart_section() -> ChartedSection {
    ChartedSection {
        charts: vec![
            Chart { region: rect(-2, -1, 1, 1), phi: poly(&[((0, 0), 0), ((1, 0), 0)], false) },
            Chart { region: rect(-1, -1, 2, 1), phi: poly(&[((-1, 0), 0), ((0, 0), 0)], false) },
        ],
        ..Default::default()
    }
}

/// Four half-boxes around a node at the origin. Every overlap glues, but no
/// chart contains the node, so no single polynomial represents the section
/// there.
pub fn nodal_nonsection() -> ChartedSection {
    let zero = || poly(&[((0, 0), 0)], false);
    ChartedSection {
        charts: vec![
            Chart { region: rect(-1, 0, 1, 1), phi: zero() },
            Chart { region: rect(0, -1, 1, 1), phi: zero() },
            Chart { region: rect(-1, -1, 1, 0), phi: poly(&[((0, 0), 0), ((1, 0), 0)], false) },
            Chart { region: rect(-1, -1, 0, 1), phi: zero() },
        ],
        transitions: BTreeMap::new(),
        nodes: vec![(0, Vec2::zero())],
    }
}

/// Catalog record of one toric del Pezzo surface.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DelPezzoEntry {
    pub surface: DelPezzo,
    pub polygon: RatPolygon,
    pub fan: Vec<H1Class>,
    pub diagram: BaseDiagram,
    pub dimer: DualDimer,
}

pub fn catalog() -> Vec<DelPezzoEntry> {
    DelPezzo::ALL
        .into_iter()
        .map(|s| DelPezzoEntry {
            surface: s,
            polygon: s.polygon(),
            fan: s.fan_rays(),
            diagram: trade_all(s.polygon()).expect("monotone polygons are smooth"),
            dimer: s.seed_dimer(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tropical::check_balancing;

    #[test]
    fn twist_matches_chart_change() {
        assert_eq!(twist_matrix(Vec2::int(-1, -1), 1), [[2, -1], [1, 0]]);
        assert_eq!(twist_matrix(Vec2::int(1, 1), 1), [[2, -1], [1, 0]]);
    }

    #[test]
    fn trades() {
        let d = trade_all(DelPezzo::CP2.polygon()).unwrap();
        assert_eq!(d.nodes.len(), 3);
        assert_eq!(nodal_trade(&d, 0), Err(AtfError::AlreadyTraded(0)));
        assert_eq!(nodal_trade(&d, 7), Err(AtfError::BadCorner(7)));
        assert_eq!(trade_all(DelPezzo::P1P1.polygon()).unwrap().nodes.len(), 4);
    }

    #[test]
    fn tori() {
        for e in catalog() {
            let d = &e.diagram;
            let outer = build_outer_torus(d, rq(1, 6)).unwrap();
            assert!(outer.is_balanced(d) && admissible(&outer, d), "{:?}", e.surface);
            let inner = build_inner_torus(d).unwrap();
            assert!(inner.is_balanced(d) && admissible(&inner, d), "{:?}", e.surface);
            assert!(check_balancing(&inner.to_tropical_curve()));
            assert_eq!(inner.vertices.len(), e.polygon.len());
            let s = inner_torus_depth(d).unwrap();
            let mut c = outer.clone();
            for k in 0..d.nodes.len() {
                c = nodal_trade_exchange(&c, d, k, s - d.node_depth(k).unwrap()).unwrap();
                assert!(c.is_balanced(d) && admissible(&c, d));
            }
            assert_eq!(c, inner);
            assert!(build_outer_torus(d, rq(1, 2)).is_err());
        }
    }

    #[test]
    fn local_exchange() {
        let d = BaseDiagram::local_model();
        let line = local_line();
        assert!(line.is_balanced(&d) && admissible(&line, &d));
        let pants = nodal_trade_exchange(&line, &d, 0, ri(1)).unwrap();
        assert_eq!(pants.vertices, vec![Vec2::int(1, 1)]);
        assert!(check_balancing(&pants.to_tropical_curve()) && admissible(&pants, &d));
        assert_eq!(nodal_trade_exchange_inverse(&pants, &d, 0, ri(1)).unwrap(), line);
        let (d1, c1) = an_chain_curve(1).unwrap();
        assert_eq!((d1, c1), (d, pants));
    }

    #[test]
    fn chains() {
        assert!(an_chain_curve(0).is_err());
        for n in 1..=5 {
            let (d, c) = an_chain_curve(n).unwrap();
            assert!(admissible(&c, &d) && c.is_balanced(&d));
            assert_eq!(c.attachment_count(), n as usize);
        }
    }

    #[test]
    fn transverse_segment_is_not_admissible() {
        let d = BaseDiagram::local_model();
        let c = CurveOnBase {
            vertices: vec![Vec2::int(-1, 0), Vec2::int(1, 0)],
            edges: vec![
                BaseEdge { from: 0, to: EdgeEnd::Vertex(1), dir: Vec2::int(1, 0), mult: 1 },
                BaseEdge { from: 0, to: EdgeEnd::Infinity, dir: Vec2::int(-1, 0), mult: 1 },
                BaseEdge { from: 1, to: EdgeEnd::Infinity, dir: Vec2::int(1, 0), mult: 1 },
            ],
            attachments: vec![],
        };
        assert!(!admissible(&c, &d));
    }

    #[test]
    fn sections() {
        assert!(validate_section(&two_chart_section()));
        assert!(!validate_section(&nodal_nonsection()));
        let m = UnimodularMap::new([[1, 1], [0, 1]], Vec2::frac(1, 2, 3)).unwrap();
        assert!(validate_section(&two_chart_section().apply_map(&m)));
        assert!(!validate_section(&nodal_nonsection().apply_map(&m)));
        let mut bad = two_chart_section();
        bad.charts[1].phi = poly(&[((-2, 0), 0), ((0, 0), 0)], false);
        assert!(!validate_section(&bad));
    }
}
