//! Dual dimers on the torus.
//!
//! A dual dimer is a finite set of white and black convex polygons in the
//! plane, read modulo `Z^2`. Every white vertex must sit on exactly one
//! black vertex, and at each such point the two edge germs of the white
//! polygon are the negatives of the black ones. The bipartite graph whose
//! edges are these shared points is the dimer graph.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::lattice_geom::{reduce_mod_lattice, H1Class, Rat, RatPolygon, TorusPoint, UnimodularMap, Vec2};
use crate::tropical::{Color, TropicalCurve};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DimerError {
    #[error("polygon {0} is degenerate or not convex")]
    BadPolygon(usize),
    #[error("vertex {vertex} of polygon {polygon} is not on the 1/{n} grid")]
    OffGrid { polygon: usize, vertex: Vec2, n: i64 },
    #[error("denominator must be positive")]
    BadDenominator,
    #[error("dimer axioms fail:\n{0}")]
    Invalid(ValidationReport),
    #[error("faces undefined for immersed dimer")]
    Immersed,
    #[error("zigzag lines meet in a triple point")]
    TriplePoint,
    #[error("two zigzag lines coincide")]
    CoincidentLines,
    #[error("zigzag line arrangement needs two independent directions")]
    DegenerateArrangement,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polytope {
    pub color: Color,
    pub polygon: RatPolygon,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DualDimer {
    denominator: i64,
    polytopes: Vec<Polytope>,
}

/// Outcome of checking the three dimer axioms, plus the embedding status.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ValidationReport {
    /// Torus points carried by two vertices of the same color.
    pub repeated: Vec<TorusPoint>,
    /// Torus points carried by a vertex of only one color.
    pub unmatched: Vec<TorusPoint>,
    /// Matched points whose edge germs are not opposite.
    pub not_opposite: Vec<TorusPoint>,
    /// Whether two polygon interiors overlap modulo `Z^2`.
    pub self_intersecting: bool,
}

impl ValidationReport {
    pub fn axioms_pass(&self) -> bool {
        self.repeated.is_empty() && self.unmatched.is_empty() && self.not_opposite.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let line = |f: &mut fmt::Formatter<'_>, name: &str, bad: &[TorusPoint]| -> fmt::Result {
            if bad.is_empty() {
                writeln!(f, "{name}: pass")
            } else {
                let pts: Vec<String> = bad.iter().map(|p| p.to_string()).collect();
                writeln!(f, "{name}: FAIL at {}", pts.join(" "))
            }
        };
        line(f, "distinct vertices", &self.repeated)?;
        line(f, "vertex matching", &self.unmatched)?;
        line(f, "opposite edges", &self.not_opposite)?;
        write!(f, "self-intersections: {}", if self.self_intersecting { "yes" } else { "no" })
    }
}

impl DualDimer {
    /// Builds a dimer without checking the axioms.
    pub fn new(denominator: i64, polytopes: Vec<Polytope>) -> Result<Self, DimerError> {
        if denominator <= 0 {
            return Err(DimerError::BadDenominator);
        }
        for (i, p) in polytopes.iter().enumerate() {
            if p.polygon.is_degenerate() {
                return Err(DimerError::BadPolygon(i));
            }
            for v in p.polygon.vertices() {
                if v.numerators(denominator as i128).is_none() {
                    return Err(DimerError::OffGrid { polygon: i, vertex: *v, n: denominator });
                }
            }
        }
        Ok(DualDimer { denominator, polytopes })
    }

    /// Builds a dimer and rejects it unless the axioms hold.
    pub fn checked(denominator: i64, polytopes: Vec<Polytope>) -> Result<Self, DimerError> {
        let d = DualDimer::new(denominator, polytopes)?;
        let r = validate(&d);
        if !r.axioms_pass() {
            return Err(DimerError::Invalid(r));
        }
        Ok(d)
    }

    pub fn denominator(&self) -> i64 {
        self.denominator
    }

    pub fn polytopes(&self) -> &[Polytope] {
        &self.polytopes
    }

    pub fn count(&self, color: Color) -> usize {
        self.polytopes.iter().filter(|p| p.color == color).count()
    }

    /// Smallest grid `(1/n) Z^2` holding every vertex.
    pub fn minimal_denominator(&self) -> i64 {
        self.polytopes
            .iter()
            .flat_map(|p| p.polygon.vertices())
            .fold(1i128, |acc, v| acc.lcm(&v.denom())) as i64
    }

    pub fn with_denominator(&self, n: i64) -> Result<Self, DimerError> {
        DualDimer::new(n, self.polytopes.clone())
    }

    /// Sorted polytopes (white first), each starting at its smallest vertex
    /// and shifted so that vertex lies in `[0,1)^2`.
    pub fn canonical(&self) -> DualDimer {
        let mut ps: Vec<Polytope> = self
            .polytopes
            .iter()
            .map(|p| {
                let c = p.polygon.canonical();
                let first = c.vertices()[0];
                Polytope {
                    color: p.color,
                    polygon: c.translate(-first.floor()),
                }
            })
            .collect();
        ps.sort_by(|a, b| (a.color, a.polygon.vertices()).cmp(&(b.color, b.polygon.vertices())));
        DualDimer {
            denominator: self.denominator,
            polytopes: ps,
        }
    }

    /// Applies an affine unimodular map to every polygon. The grid is
    /// enlarged if the translation needs it.
    pub fn apply_map(&self, m: &UnimodularMap) -> DualDimer {
        let n = (self.denominator as i128).lcm(&m.translation().denom()) as i64;
        DualDimer {
            denominator: n,
            polytopes: self
                .polytopes
                .iter()
                .map(|p| Polytope {
                    color: p.color,
                    polygon: p.polygon.map(|v| m.apply(v)),
                })
                .collect(),
        }
    }

    /// A checked dimer with one polygon of each color.
    pub fn from_pair(n: i64, white: RatPolygon, black: RatPolygon) -> Result<Self, DimerError> {
        DualDimer::checked(
            n,
            vec![
                Polytope { color: Color::White, polygon: white },
                Polytope { color: Color::Black, polygon: black },
            ],
        )
    }
}

fn germ_dirs(p: &RatPolygon, k: usize) -> BTreeSet<Vec2> {
    let n = p.len();
    let v = p.vertices()[k];
    let a = (p.vertices()[(k + n - 1) % n] - v).primitive();
    let b = (p.vertices()[(k + 1) % n] - v).primitive();
    [a, b].into_iter().collect()
}

/// Which polytope and vertex sits at each torus point, per color.
type VertexTable = BTreeMap<TorusPoint, Vec<(usize, usize)>>;

fn vertex_tables(d: &DualDimer) -> (VertexTable, VertexTable) {
    let mut white: VertexTable = BTreeMap::new();
    let mut black: VertexTable = BTreeMap::new();
    for (i, p) in d.polytopes.iter().enumerate() {
        let t = if p.color == Color::White { &mut white } else { &mut black };
        for (k, v) in p.polygon.vertices().iter().enumerate() {
            t.entry(reduce_mod_lattice(*v)).or_default().push((i, k));
        }
    }
    (white, black)
}

pub fn validate(d: &DualDimer) -> ValidationReport {
    let (white, black) = vertex_tables(d);
    let mut r = ValidationReport::default();
    for t in [&white, &black] {
        for (pt, occ) in t {
            if occ.len() > 1 && !r.repeated.contains(pt) {
                r.repeated.push(*pt);
            }
        }
    }
    r.repeated.sort();
    let wk: BTreeSet<_> = white.keys().collect();
    let bk: BTreeSet<_> = black.keys().collect();
    r.unmatched = wk.symmetric_difference(&bk).map(|p| **p).collect();
    r.unmatched.sort();
    for (pt, wocc) in &white {
        let Some(bocc) = black.get(pt) else { continue };
        let (wi, wv) = wocc[0];
        let (bi, bv) = bocc[0];
        let wg = germ_dirs(&d.polytopes[wi].polygon, wv);
        let bg: BTreeSet<Vec2> = germ_dirs(&d.polytopes[bi].polygon, bv).into_iter().map(|g| -g).collect();
        if wg != bg {
            r.not_opposite.push(*pt);
        }
    }
    r.self_intersecting = self_intersecting(d);
    r
}

fn bbox(p: &RatPolygon) -> (Vec2, Vec2) {
    let xs = p.vertices().iter().map(|v| v.x);
    let ys = p.vertices().iter().map(|v| v.y);
    (
        Vec2::new(xs.clone().min().unwrap(), ys.clone().min().unwrap()),
        Vec2::new(xs.max().unwrap(), ys.max().unwrap()),
    )
}

/// True if some pair of polygon interiors (a polygon with a translate of
/// itself included) overlaps modulo `Z^2`.
pub fn self_intersecting(d: &DualDimer) -> bool {
    let ps = &d.polytopes;
    for i in 0..ps.len() {
        for j in i..ps.len() {
            let (a0, a1) = bbox(&ps[i].polygon);
            let (b0, b1) = bbox(&ps[j].polygon);
            // shifts k with (b + k) meeting a's box
            let kx0 = (a0.x - b1.x).floor().to_integer() as i64;
            let kx1 = (a1.x - b0.x).ceil().to_integer() as i64;
            let ky0 = (a0.y - b1.y).floor().to_integer() as i64;
            let ky1 = (a1.y - b0.y).ceil().to_integer() as i64;
            for kx in kx0..=kx1 {
                for ky in ky0..=ky1 {
                    if i == j && kx == 0 && ky == 0 {
                        continue;
                    }
                    let moved = ps[j].polygon.translate(Vec2::int(kx, ky));
                    if let Some(x) = ps[i].polygon.intersect(&moved) {
                        if !x.is_degenerate() && x.double_area() > Rat::zero() {
                            return true;
                        }
                    }
                }
            }
        }
    }
    false
}

/// Edge of the dimer graph: a white and a black polygon sharing a vertex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GraphEdge {
    pub white: usize,
    pub black: usize,
    pub anchor: TorusPoint,
    /// Vertex index of the anchor on the white polygon.
    pub white_vertex: usize,
    /// Vertex index of the anchor on the black polygon.
    pub black_vertex: usize,
    /// Lift of the path black centroid -> anchor -> white centroid.
    pub displacement: Vec2,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DimerGraph {
    /// Color of each graph vertex; graph vertex `i` is polytope `i`.
    pub colors: Vec<Color>,
    pub edges: Vec<GraphEdge>,
    /// Edges around each polytope in counterclockwise vertex order.
    pub rotation: Vec<Vec<usize>>,
}

/// A dart is an edge traversed away from the given graph vertex.
pub type Dart = (usize, usize);

impl DimerGraph {
    pub fn vertex_count(&self) -> usize {
        self.colors.len()
    }

    pub fn other_end(&self, e: usize, v: usize) -> usize {
        let ed = &self.edges[e];
        if ed.white == v {
            ed.black
        } else {
            ed.white
        }
    }

    /// Position of a polytope among polytopes of its color.
    pub fn color_index(&self, v: usize) -> usize {
        self.colors[..v].iter().filter(|&&c| c == self.colors[v]).count()
    }

    /// Traces boundary walks of the rotation system. With `flip_black` the
    /// rotation at black vertices is reversed, which traces the zigzags.
    pub fn trace(&self, flip_black: bool) -> Vec<Vec<Dart>> {
        let next = |v: usize, e: usize| -> usize {
            let r = &self.rotation[v];
            let i = r.iter().position(|&x| x == e).expect("edge at vertex");
            if flip_black && self.colors[v] == Color::Black {
                r[(i + r.len() - 1) % r.len()]
            } else {
                r[(i + 1) % r.len()]
            }
        };
        let mut seen: BTreeSet<Dart> = BTreeSet::new();
        let mut walks = Vec::new();
        for e in 0..self.edges.len() {
            for v in [self.edges[e].black, self.edges[e].white] {
                if seen.contains(&(e, v)) {
                    continue;
                }
                let mut walk = Vec::new();
                let mut cur = (e, v);
                while seen.insert(cur) {
                    walk.push(cur);
                    let w = self.other_end(cur.0, cur.1);
                    cur = (next(w, cur.0), w);
                }
                walks.push(walk);
            }
        }
        walks
    }

    /// Sum of the edge lifts along a walk, black to white counted positively.
    pub fn walk_vector(&self, walk: &[Dart]) -> Vec2 {
        walk.iter().fold(Vec2::zero(), |acc, &(e, v)| {
            let d = self.edges[e].displacement;
            if self.colors[v] == Color::Black {
                acc + d
            } else {
                acc - d
            }
        })
    }
}

pub fn build_graph(d: &DualDimer) -> Result<DimerGraph, DimerError> {
    let r = validate(d);
    if !r.axioms_pass() {
        return Err(DimerError::Invalid(r));
    }
    let (white, black) = vertex_tables(d);
    let mut edges = Vec::new();
    for (pt, wocc) in &white {
        let (wi, wv) = wocc[0];
        let (bi, bv) = black[pt][0];
        let wp = &d.polytopes[wi].polygon;
        let bp = &d.polytopes[bi].polygon;
        let displacement = (wp.centroid() - wp.vertices()[wv]) + (bp.vertices()[bv] - bp.centroid());
        edges.push(GraphEdge {
            white: wi,
            black: bi,
            anchor: *pt,
            white_vertex: wv,
            black_vertex: bv,
            displacement,
        });
    }
    edges.sort_by_key(|e| (e.white, e.black, e.anchor));
    let mut rotation = vec![Vec::new(); d.polytopes.len()];
    for (i, p) in d.polytopes.iter().enumerate() {
        for k in 0..p.polygon.len() {
            let e = edges
                .iter()
                .position(|g| if p.color == Color::White { g.white == i && g.white_vertex == k } else { g.black == i && g.black_vertex == k })
                .expect("every vertex is an edge");
            rotation[i].push(e);
        }
    }
    Ok(DimerGraph {
        colors: d.polytopes.iter().map(|p| p.color).collect(),
        edges,
        rotation,
    })
}

/// A maximal straight chain of polygon edges, closed on the torus.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ZigzagPath {
    /// Graph edges (shared vertices) in the order visited.
    pub edges: Vec<usize>,
    /// Polygon edges as `(polytope, from vertex, to vertex)`.
    pub segments: Vec<(usize, usize, usize)>,
    pub cls: H1Class,
}

/// Partitions polygon edges into zigzags. Black edges are walked
/// counterclockwise, white ones clockwise.
pub fn zigzag_paths(d: &DualDimer) -> Result<Vec<ZigzagPath>, DimerError> {
    let g = build_graph(d)?;
    let ps = &d.polytopes;
    let edge_at = |poly: usize, k: usize| g.rotation[poly][k];
    let mut used: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut out = Vec::new();
    for start in 0..ps.len() {
        if ps[start].color != Color::Black {
            continue;
        }
        for k0 in 0..ps[start].polygon.len() {
            if used.contains(&(start, k0)) {
                continue;
            }
            let mut path = ZigzagPath {
                edges: vec![],
                segments: vec![],
                cls: H1Class::new(0, 0),
            };
            let mut total = Vec2::zero();
            // state: polygon, from vertex, step (+1 ccw, -1 cw)
            let (mut p, mut k, mut step) = (start, k0, 1i64);
            loop {
                let n = ps[p].polygon.len();
                let to = ((k as i64 + step).rem_euclid(n as i64)) as usize;
                let edge_id = if step == 1 { k } else { to };
                if !used.insert((p, edge_id)) {
                    break;
                }
                let vec = ps[p].polygon.vertices()[to] - ps[p].polygon.vertices()[k];
                total = total + vec;
                path.segments.push((p, k, to));
                let ge = edge_at(p, to);
                path.edges.push(ge);
                // continue straight in the polygon across the shared vertex
                let (q, j) = if ps[p].color == Color::White {
                    (g.edges[ge].black, g.edges[ge].black_vertex)
                } else {
                    (g.edges[ge].white, g.edges[ge].white_vertex)
                };
                let qp = &ps[q].polygon;
                let m = qp.len();
                let dir = vec.primitive();
                let fwd = (qp.vertices()[(j + 1) % m] - qp.vertices()[j]).primitive();
                p = q;
                k = j;
                step = if fwd == dir { 1 } else { -1 };
            }
            path.cls = H1Class::from_vec2(total);
            out.push(path);
        }
    }
    Ok(out)
}

/// Boundary of a complementary region of the embedded graph.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DimerFace {
    /// Polytopes around the face, alternating colors.
    pub boundary: Vec<usize>,
    /// Graph edges around the face, as darts.
    pub darts: Vec<Dart>,
    pub cls: H1Class,
}

impl DimerFace {
    pub fn edges(&self) -> Vec<usize> {
        self.darts.iter().map(|d| d.0).collect()
    }
}

/// Faces of an embedded dimer, traced from the rotation system.
pub fn faces(d: &DualDimer) -> Result<Vec<DimerFace>, DimerError> {
    let r = validate(d);
    if !r.axioms_pass() {
        return Err(DimerError::Invalid(r));
    }
    if r.self_intersecting {
        return Err(DimerError::Immersed);
    }
    let g = build_graph(d)?;
    Ok(g.trace(false)
        .into_iter()
        .map(|walk| {
            let start = walk.iter().position(|&(_, v)| g.colors[v] == Color::Black).unwrap_or(0);
            let mut darts = walk.clone();
            darts.rotate_left(start);
            DimerFace {
                boundary: darts.iter().map(|&(_, v)| v).collect(),
                cls: H1Class::from_vec2(g.walk_vector(&darts)),
                darts,
            }
        })
        .collect())
}

/// The fan of the dimer: one ray per zigzag direction, the inward normal of
/// its black edges, weighted by the lattice length of those edges in the
/// dimer's grid.
pub fn dimer_to_tropical_fan(d: &DualDimer) -> Result<TropicalCurve, DimerError> {
    let zz = zigzag_paths(d)?;
    let n = d.denominator as i128;
    let mut rays: BTreeMap<Vec2, u64> = BTreeMap::new();
    for z in &zz {
        let ray = z.cls.to_vec2().rot90().primitive();
        for &(p, a, b) in &z.segments {
            if d.polytopes[p].color == Color::Black {
                let poly = &d.polytopes[p].polygon;
                let len = (poly.vertices()[b] - poly.vertices()[a]).lattice_length(n).expect("grid vertices");
                *rays.entry(ray).or_insert(0) += len as u64;
            }
        }
    }
    Ok(TropicalCurve::fan(rays))
}

/// A family of parallel zigzag lines `det(d, x) = c + k`, `k` in `Z`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ZigzagLine {
    pub class: H1Class,
    pub offset: Rat,
}

impl ZigzagLine {
    pub fn new(class: H1Class, offset: Rat) -> Self {
        ZigzagLine { class, offset }
    }

    fn value(&self, x: Vec2) -> Rat {
        self.class.to_vec2().det(x)
    }
}

/// Dimer whose zigzags are the given straight line families. Cells of the
/// arrangement bounded with every edge oriented along its line become black
/// polygons, those with every edge against it white ones; the rest are
/// faces.
pub fn from_zigzag_lines(lines: &[ZigzagLine]) -> Result<DualDimer, DimerError> {
    let dirs: Vec<Vec2> = lines.iter().map(|l| l.class.to_vec2()).collect();
    if !dirs.iter().any(|a| dirs.iter().any(|b| !a.det(*b).is_zero())) || dirs.iter().any(|d| d.is_zero()) {
        return Err(DimerError::DegenerateArrangement);
    }
    for i in 0..lines.len() {
        for j in (i + 1)..lines.len() {
            if dirs[i].det(dirs[j]).is_zero() {
                // parallel families coincide when their offsets agree modulo the common period
                let (a, b) = (lines[i], lines[j]);
                let s = if dirs[i] == dirs[j] { Rat::one() } else { -Rat::one() };
                if (a.offset - s * b.offset).is_integer() {
                    return Err(DimerError::CoincidentLines);
                }
            }
        }
    }
    let reach: Rat = Rat::from_integer(
        2 * dirs.iter().map(|d| (d.x.abs() + d.y.abs()).to_integer()).sum::<i128>() + 2,
    );
    let eps = Rat::new(1, 1_000_000);

    // crossing points on the torus, with the families through them
    let mut crossings: BTreeMap<TorusPoint, BTreeSet<usize>> = BTreeMap::new();
    for i in 0..lines.len() {
        for j in (i + 1)..lines.len() {
            let det = dirs[i].det(dirs[j]);
            if det.is_zero() {
                continue;
            }
            let dd = det.abs().to_integer() as i64;
            for m in 0..dd {
                for k in 0..dd {
                    let a = lines[i].offset + Rat::from_integer(m as i128);
                    let b = lines[j].offset + Rat::from_integer(k as i128);
                    // det(d_i, x) = a, det(d_j, x) = b
                    let (p, q) = (dirs[i], dirs[j]);
                    let x = (a * q.x - b * p.x) / det;
                    let y = (a * q.y - b * p.y) / det;
                    let t = reduce_mod_lattice(Vec2::new(x, y));
                    let s = crossings.entry(t).or_default();
                    s.insert(i);
                    s.insert(j);
                }
            }
        }
    }
    if crossings.values().any(|s| s.len() > 2) {
        return Err(DimerError::TriplePoint);
    }

    let mut polys: BTreeMap<Vec<Vec2>, Polytope> = BTreeMap::new();
    for (pt, fams) in &crossings {
        let fams: Vec<usize> = fams.iter().copied().collect();
        let (d1, d2) = (dirs[fams[0]], dirs[fams[1]]);
        for (a, b) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            let q = pt.coords() + (d1.scale(Rat::from_integer(a)) + d2.scale(Rat::from_integer(b))).scale(eps);
            let cell = arrangement_cell(lines, q, reach);
            let color = match classify_cell(lines, &cell)? {
                Some(c) => c,
                None => continue,
            };
            let shift = cell.centroid().floor();
            let cell = cell.translate(-shift).canonical();
            polys.entry(cell.vertices().to_vec()).or_insert(Polytope { color, polygon: cell });
        }
    }
    let all: Vec<Polytope> = polys.into_values().collect();
    let n = all
        .iter()
        .flat_map(|p| p.polygon.vertices())
        .fold(1i128, |acc, v| acc.lcm(&v.denom())) as i64;
    Ok(DualDimer::checked(n, all)?.canonical())
}

fn arrangement_cell(lines: &[ZigzagLine], q: Vec2, reach: Rat) -> RatPolygon {
    let r = reach;
    let mut cell = RatPolygon::from_ccw(vec![
        q + Vec2::new(-r, -r),
        q + Vec2::new(r, -r),
        q + Vec2::new(r, r),
        q + Vec2::new(-r, r),
    ])
    .expect("box");
    for l in lines {
        let d = l.class.to_vec2();
        let k = (l.value(q) - l.offset).floor();
        // c + k <= det(d, x) <= c + k + 1, with det(d, x) = (-d.y, d.x) . x
        let a = Vec2::new(-d.y, d.x);
        cell = cell.clip(a, l.offset + k + Rat::one()).expect("sample point inside");
        cell = cell.clip(-a, -(l.offset + k)).expect("sample point inside");
    }
    cell
}

/// Black if every edge runs along its line, white if every edge runs
/// against it, `None` for a face.
fn classify_cell(lines: &[ZigzagLine], cell: &RatPolygon) -> Result<Option<Color>, DimerError> {
    let mut along = 0;
    let mut against = 0;
    for i in 0..cell.len() {
        let p = cell.vertices()[i];
        let e = cell.edge(i);
        let mut hits = lines.iter().filter(|l| {
            let d = l.class.to_vec2();
            d.det(e).is_zero() && (l.value(p) - l.offset).is_integer()
        });
        let l = hits.next().expect("cell edges lie on lines");
        if hits.next().is_some() {
            return Err(DimerError::CoincidentLines);
        }
        if l.class.to_vec2().dot(e) > Rat::zero() {
            along += 1;
        } else {
            against += 1;
        }
    }
    Ok(match (along, against) {
        (_, 0) => Some(Color::Black),
        (0, _) => Some(Color::White),
        _ => None,
    })
}

/// Ids `w<i>-b<j>@<ax>,<ay>` of graph edges, anchors in numerators over `n`.
pub fn edge_ids(d: &DualDimer, g: &DimerGraph) -> Vec<String> {
    let n = d.denominator as i128;
    g.edges
        .iter()
        .map(|e| {
            let (ax, ay) = e.anchor.coords().numerators(n).expect("grid anchor");
            format!("w{}-b{}@{},{}", g.color_index(e.white), g.color_index(e.black), ax, ay)
        })
        .collect()
}
