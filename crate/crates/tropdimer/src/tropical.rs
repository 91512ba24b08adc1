//! Max-plus polynomials with rational exponents and their tropical curves.
//!
//! A convex polynomial evaluates as `max(c + <a, q>)`. A concave one
//! (the dual function of a black polygon) keeps its Newton data as is and
//! evaluates as `min(c + <a, q>)`; its locus is computed from the negated
//! terms, which have the same corner locus.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::lattice_geom::{convex_hull, interior_lattice_points, GeomError, Rat, RatPolygon, UnimodularMap, Vec2};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TropicalError {
    #[error("tropical polynomial needs at least one term")]
    NoTerms,
    #[error("degenerate polygon has no dual function")]
    DegeneratePolygon,
    #[error("curve is not a fan")]
    NotAFan,
    #[error("degree must be positive")]
    ZeroDegree,
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// Which of the two dual functions a polygon carries.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Color {
    White,
    Black,
}

impl Color {
    pub fn name(self) -> &'static str {
        match self {
            Color::White => "white",
            Color::Black => "black",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TropicalPolynomial {
    terms: BTreeMap<Vec2, Rat>,
    concave: bool,
}

impl TropicalPolynomial {
    /// Convex (max-plus) polynomial from `(exponent, coefficient)` pairs.
    /// Repeated exponents keep the larger coefficient.
    pub fn new(terms: impl IntoIterator<Item = (Vec2, Rat)>) -> Result<Self, TropicalError> {
        Self::build(terms, false)
    }

    /// Concave polynomial `min(c + <a, q>)`.
    pub fn concave(terms: impl IntoIterator<Item = (Vec2, Rat)>) -> Result<Self, TropicalError> {
        Self::build(terms, true)
    }

    fn build(terms: impl IntoIterator<Item = (Vec2, Rat)>, concave: bool) -> Result<Self, TropicalError> {
        let mut map: BTreeMap<Vec2, Rat> = BTreeMap::new();
        for (e, c) in terms {
            let slot = map.entry(e).or_insert(c);
            *slot = if concave { (*slot).min(c) } else { (*slot).max(c) };
        }
        if map.is_empty() {
            return Err(TropicalError::NoTerms);
        }
        Ok(TropicalPolynomial { terms: map, concave })
    }

    pub fn terms(&self) -> &BTreeMap<Vec2, Rat> {
        &self.terms
    }

    pub fn is_concave(&self) -> bool {
        self.concave
    }

    pub fn evaluate(&self, q: Vec2) -> Rat {
        let vals = self.terms.iter().map(|(e, c)| *c + e.dot(q));
        if self.concave {
            vals.min().unwrap()
        } else {
            vals.max().unwrap()
        }
    }

    pub fn newton_polytope(&self) -> RatPolygon {
        let pts: Vec<Vec2> = self.terms.keys().copied().collect();
        convex_hull(&pts).expect("nonempty")
    }

    /// Gradient on the linearity region containing `q` (`None` on the corner locus).
    pub fn gradient_at(&self, q: Vec2) -> Option<Vec2> {
        let best = self.evaluate(q);
        let mut active = self.terms.iter().filter(|(e, c)| **c + e.dot(q) == best);
        let first = active.next()?;
        if active.next().is_some() {
            return None;
        }
        Some(*first.0)
    }

    /// Pushes exponents forward by the linear part of `m`.
    pub fn map_exponents(&self, m: &UnimodularMap) -> TropicalPolynomial {
        TropicalPolynomial {
            terms: self.terms.iter().map(|(e, c)| (m.apply_linear(*e), *c)).collect(),
            concave: self.concave,
        }
    }

    /// The same function precomposed with the affine map `m^{-1}`:
    /// `q -> phi(m^{-1} q)`.
    pub fn pushforward(&self, m: &UnimodularMap) -> TropicalPolynomial {
        let inv = m.inverse();
        let dual = m.dual();
        TropicalPolynomial {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (dual.apply_linear(*e), *c + e.dot(inv.translation())))
                .collect(),
            concave: self.concave,
        }
    }

    pub fn add_constant(&self, k: Rat) -> TropicalPolynomial {
        TropicalPolynomial {
            terms: self.terms.iter().map(|(e, c)| (*e, *c + k)).collect(),
            concave: self.concave,
        }
    }

    /// Convex terms with the same corner locus.
    fn max_form(&self) -> Vec<(Vec2, Rat)> {
        if self.concave {
            self.terms.iter().map(|(e, c)| (-*e, -*c)).collect()
        } else {
            self.terms.iter().map(|(e, c)| (*e, *c)).collect()
        }
    }

    fn exponent_denominator(&self) -> i128 {
        self.terms.keys().fold(1i128, |acc, e| acc.lcm(&e.denom()))
    }
}

/// The dual tropical function of a polygon: vertex monomials with zero
/// coefficients, convex for white and concave for black.
pub fn dual_function(delta: &RatPolygon, color: Color) -> Result<TropicalPolynomial, TropicalError> {
    if delta.is_degenerate() {
        return Err(TropicalError::DegeneratePolygon);
    }
    let terms = delta.vertices().iter().map(|v| (*v, Rat::zero()));
    match color {
        Color::White => TropicalPolynomial::new(terms),
        Color::Black => TropicalPolynomial::concave(terms),
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CurveEdge {
    /// Bounded edge between two vertices.
    Segment { a: usize, b: usize, mult: u64 },
    /// Unbounded edge leaving a vertex.
    Ray { from: usize, dir: Vec2, mult: u64 },
    /// Full line with no vertex on it.
    Line { point: Vec2, dir: Vec2, mult: u64 },
}

impl CurveEdge {
    pub fn mult(&self) -> u64 {
        match self {
            CurveEdge::Segment { mult, .. } | CurveEdge::Ray { mult, .. } | CurveEdge::Line { mult, .. } => *mult,
        }
    }
}

/// Weighted rational polyhedral curve in the plane.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TropicalCurve {
    pub vertices: Vec<Vec2>,
    pub edges: Vec<CurveEdge>,
}

impl TropicalCurve {
    /// A fan with a single vertex at the origin.
    pub fn fan(rays: impl IntoIterator<Item = (Vec2, u64)>) -> TropicalCurve {
        let edges = rays
            .into_iter()
            .map(|(d, m)| CurveEdge::Ray { from: 0, dir: d.primitive(), mult: m })
            .collect();
        TropicalCurve {
            vertices: vec![Vec2::zero()],
            edges,
        }
    }

    /// Weighted outgoing primitive directions at vertex `v`.
    pub fn star(&self, v: usize) -> Vec<(Vec2, u64)> {
        let mut out = Vec::new();
        for e in &self.edges {
            match *e {
                CurveEdge::Segment { a, b, mult } => {
                    if a == v {
                        out.push(((self.vertices[b] - self.vertices[a]).primitive(), mult));
                    }
                    if b == v {
                        out.push(((self.vertices[a] - self.vertices[b]).primitive(), mult));
                    }
                }
                CurveEdge::Ray { from, dir, mult } if from == v => out.push((dir, mult)),
                _ => {}
            }
        }
        out
    }
}

pub fn check_balancing(curve: &TropicalCurve) -> bool {
    (0..curve.vertices.len()).all(|v| {
        let s = curve
            .star(v)
            .iter()
            .fold(Vec2::zero(), |acc, (d, m)| acc + d.scale(Rat::from_integer(*m as i128)));
        s.is_zero()
    })
}

/// Corner locus of `phi`, with multiplicities from the dual subdivision.
pub fn nonlinearity_locus(phi: &TropicalPolynomial) -> TropicalCurve {
    let terms = phi.max_form();
    let den = phi.exponent_denominator();
    let n = terms.len();
    let val = |k: usize, q: Vec2| terms[k].1 + terms[k].0.dot(q);

    // active term set -> (start, end) parameters on a line p0 + t d
    type Piece = (Vec2, Vec2, Option<Rat>, Option<Rat>);
    let mut found: BTreeMap<Vec<usize>, Piece> = BTreeMap::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let g = terms[i].0 - terms[j].0;
            let dc = terms[i].1 - terms[j].1;
            // points with <g, q> = -dc
            let p0 = g.scale(-dc / g.dot(g));
            let d = g.rot90().primitive();
            let mut lo: Option<Rat> = None;
            let mut hi: Option<Rat> = None;
            let mut empty = false;
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                // val_i - val_k >= 0 along the line: a + t b >= 0
                let a = val(i, p0) - val(k, p0);
                let b = (terms[i].0 - terms[k].0).dot(d);
                if b.is_zero() {
                    if a < Rat::zero() {
                        empty = true;
                        break;
                    }
                } else {
                    let t = -a / b;
                    if b > Rat::zero() {
                        lo = Some(lo.map_or(t, |x| x.max(t)));
                    } else {
                        hi = Some(hi.map_or(t, |x| x.min(t)));
                    }
                }
            }
            if empty {
                continue;
            }
            if let (Some(l), Some(h)) = (lo, hi) {
                if l >= h {
                    continue;
                }
            }
            let mid = match (lo, hi) {
                (Some(l), Some(h)) => (l + h) / Rat::from_integer(2),
                (Some(l), None) => l + Rat::one(),
                (None, Some(h)) => h - Rat::one(),
                (None, None) => Rat::zero(),
            };
            let q = p0 + d.scale(mid);
            let best = val(i, q);
            let active: Vec<usize> = (0..n).filter(|&k| val(k, q) == best).collect();
            found.entry(active).or_insert((p0, d, lo, hi));
        }
    }

    let mut vertices: Vec<Vec2> = Vec::new();
    let vid = |p: Vec2, vs: &mut Vec<Vec2>| -> usize {
        if let Some(k) = vs.iter().position(|&v| v == p) {
            k
        } else {
            vs.push(p);
            vs.len() - 1
        }
    };
    let mut edges = Vec::new();
    for (active, (p0, d, lo, hi)) in found {
        let pts: Vec<Vec2> = active.iter().map(|&k| terms[k].0).collect();
        let hull = convex_hull(&pts).expect("nonempty");
        let span = hull.vertices()[1] - hull.vertices()[0];
        let mult = span.lattice_length(den).expect("exponents lie in the cleared lattice") as u64;
        let edge = match (lo, hi) {
            (Some(l), Some(h)) => {
                let a = vid(p0 + d.scale(l), &mut vertices);
                let b = vid(p0 + d.scale(h), &mut vertices);
                CurveEdge::Segment { a, b, mult }
            }
            (Some(l), None) => CurveEdge::Ray {
                from: vid(p0 + d.scale(l), &mut vertices),
                dir: d,
                mult,
            },
            (None, Some(h)) => CurveEdge::Ray {
                from: vid(p0 + d.scale(h), &mut vertices),
                dir: -d,
                mult,
            },
            (None, None) => CurveEdge::Line {
                point: line_anchor(p0, d),
                dir: canonical_line_dir(d),
                mult,
            },
        };
        edges.push(edge);
    }
    TropicalCurve { vertices, edges }
}

/// Where the line meets the x-axis, or the y-axis if it is horizontal.
fn line_anchor(p0: Vec2, d: Vec2) -> Vec2 {
    if !d.y.is_zero() {
        p0 - d.scale(p0.y / d.y)
    } else {
        p0 - d.scale(p0.x / d.x)
    }
}

fn canonical_line_dir(d: Vec2) -> Vec2 {
    if d.y < Rat::zero() || (d.y.is_zero() && d.x < Rat::zero()) {
        -d
    } else {
        d
    }
}

/// The curve as a multiset of weighted primitive rays, if it is a fan.
pub fn fan_rays(curve: &TropicalCurve) -> Result<BTreeMap<Vec2, u64>, TropicalError> {
    let mut rays: BTreeMap<Vec2, u64> = BTreeMap::new();
    let mut center: Option<Vec2> = None;
    if curve.vertices.len() > 1 {
        return Err(TropicalError::NotAFan);
    }
    if let Some(&v) = curve.vertices.first() {
        center = Some(v);
    }
    let lines: Vec<(Vec2, Vec2, u64)> = curve
        .edges
        .iter()
        .filter_map(|e| match *e {
            CurveEdge::Line { point, dir, mult } => Some((point, dir, mult)),
            _ => None,
        })
        .collect();
    if center.is_none() && lines.len() >= 2 {
        let (p, d, _) = lines[0];
        let other = lines.iter().find(|(_, e, _)| !d.det(*e).is_zero());
        if let Some(&(p2, e, _)) = other {
            // p + s d = p2 + t e
            let s = (p2 - p).det(e) / d.det(e);
            center = Some(p + d.scale(s));
        }
    }
    for e in &curve.edges {
        match *e {
            CurveEdge::Segment { .. } => return Err(TropicalError::NotAFan),
            CurveEdge::Ray { dir, mult, .. } => *rays.entry(dir).or_insert(0) += mult,
            CurveEdge::Line { point, dir, mult } => {
                let c = center.ok_or(TropicalError::NotAFan)?;
                if !(c - point).det(dir).is_zero() {
                    return Err(TropicalError::NotAFan);
                }
                *rays.entry(dir).or_insert(0) += mult;
                *rays.entry(-dir).or_insert(0) += mult;
            }
        }
    }
    Ok(rays)
}

/// Compares two fans as multisets of weighted primitive rays.
pub fn fan_equal(v1: &TropicalCurve, v2: &TropicalCurve) -> Result<bool, TropicalError> {
    Ok(fan_rays(v1)? == fan_rays(v2)?)
}

/// Unimodularity of the dual subdivision, used as the smoothness test.
pub fn is_smooth(phi: &TropicalPolynomial) -> bool {
    let curve = nonlinearity_locus(phi);
    if curve.edges.iter().any(|e| e.mult() != 1) {
        return false;
    }
    let terms = phi.max_form();
    let den = Rat::from_integer(phi.exponent_denominator());
    curve.vertices.iter().all(|&q| {
        let best = terms.iter().map(|(e, c)| *c + e.dot(q)).max().unwrap();
        let cell: Vec<Vec2> = terms
            .iter()
            .filter(|(e, c)| *c + e.dot(q) == best)
            .map(|(e, _)| e.scale(den))
            .collect();
        match convex_hull(&cell) {
            Ok(h) => cell.len() == 3 && h.double_area() == Rat::one(),
            Err(_) => false,
        }
    })
}

pub fn genus_degree(d: u64) -> Result<u64, TropicalError> {
    if d == 0 {
        return Err(TropicalError::ZeroDegree);
    }
    Ok((d - 1) * (d.saturating_sub(2)) / 2)
}

pub fn genus_of(delta: &RatPolygon) -> Result<u64, TropicalError> {
    Ok(interior_lattice_points(delta)?.len() as u64)
}

/// The standard triangle dilated by `d`.
pub fn dilated_triangle(d: i64) -> RatPolygon {
    RatPolygon::from_ccw(vec![Vec2::int(0, 0), Vec2::int(d, 0), Vec2::int(0, d)]).expect("d > 0")
}

/// All directions of a fan, as a set.
pub fn ray_directions(curve: &TropicalCurve) -> Result<BTreeSet<Vec2>, TropicalError> {
    Ok(fan_rays(curve)?.into_keys().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice_geom::ri;

    fn poly(terms: &[((i64, i64), i64)]) -> TropicalPolynomial {
        TropicalPolynomial::new(terms.iter().map(|&((a, b), c)| (Vec2::int(a, b), ri(c)))).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let p = poly(&[((1, 0), 0), ((0, 1), 0), ((0, 0), 0)]);
        assert_eq!(p.evaluate(Vec2::int(2, 1)), ri(2));
        let q = poly(&[((1, 0), 0), ((0, 1), 0), ((-1, -1), 0)]);
        assert_eq!(q.evaluate(Vec2::zero()), ri(0));
    }

    #[test]
    fn standard_line() {
        let c = nonlinearity_locus(&poly(&[((1, 0), 0), ((0, 1), 0), ((0, 0), 0)]));
        assert_eq!(c.vertices, vec![Vec2::zero()]);
        let rays = fan_rays(&c).unwrap();
        let want: BTreeMap<Vec2, u64> =
            [(Vec2::int(1, 1), 1), (Vec2::int(-1, 0), 1), (Vec2::int(0, -1), 1)].into_iter().collect();
        assert_eq!(rays, want);
        assert!(check_balancing(&c));
    }

    #[test]
    fn two_terms_give_a_line() {
        let c = nonlinearity_locus(&poly(&[((0, 0), 0), ((1, 0), 0)]));
        assert_eq!(
            c.edges,
            vec![CurveEdge::Line { point: Vec2::zero(), dir: Vec2::int(0, 1), mult: 1 }]
        );
        assert!(c.vertices.is_empty());
    }

    #[test]
    fn single_term_is_empty() {
        let c = nonlinearity_locus(&poly(&[((3, 1), 5)]));
        assert!(c.edges.is_empty());
    }

    #[test]
    fn collinear_exponents_give_multiplicity() {
        // 0 + max(0, 2x) with the middle term below the tie: one line of weight 2
        let c = nonlinearity_locus(&poly(&[((0, 0), 0), ((1, 0), -1), ((2, 0), 0)]));
        assert_eq!(c.edges.len(), 1);
        assert_eq!(c.edges[0].mult(), 2);
        // raising the middle term splits it into two parallel lines
        let c = nonlinearity_locus(&poly(&[((0, 0), 0), ((1, 0), 1), ((2, 0), 0)]));
        assert_eq!(c.edges.len(), 2);
        assert!(c.edges.iter().all(|e| e.mult() == 1));
    }

    #[test]
    fn hand_built_unbalanced() {
        let c = TropicalCurve::fan([(Vec2::int(1, 0), 1), (Vec2::int(0, 1), 1)]);
        assert!(!check_balancing(&c));
    }

    #[test]
    fn fans_differ() {
        let a = nonlinearity_locus(&poly(&[((1, 0), 0), ((0, 1), 0), ((0, 0), 0)]));
        let b = nonlinearity_locus(&poly(&[((1, 0), 0), ((0, 1), 0), ((-1, -1), 0)]));
        assert!(!fan_equal(&a, &b).unwrap());
        assert!(fan_equal(&a, &a).unwrap());
    }

    #[test]
    fn conic_with_bounded_edges() {
        let c = nonlinearity_locus(&poly(&[
            ((0, 0), 0),
            ((1, 0), 1),
            ((0, 1), 1),
            ((2, 0), 0),
            ((1, 1), 1),
            ((0, 2), 0),
        ]));
        assert!(check_balancing(&c));
        assert!(c.edges.iter().any(|e| matches!(e, CurveEdge::Segment { .. })));
        assert!(fan_rays(&c).is_err());
    }

    #[test]
    fn genus() {
        assert_eq!(genus_degree(1).unwrap(), 0);
        assert_eq!(genus_degree(3).unwrap(), 1);
        assert_eq!(genus_degree(4).unwrap(), 3);
        assert_eq!(genus_degree(0), Err(TropicalError::ZeroDegree));
    }

    #[test]
    fn smoothness() {
        assert!(is_smooth(&poly(&[((1, 0), 0), ((0, 1), 0), ((0, 0), 0)])));
        assert!(!is_smooth(&poly(&[((1, 0), 0), ((0, 1), 0), ((-1, -1), 0)])));
    }

    #[test]
    fn black_dual_function_is_concave() {
        let t = RatPolygon::from_ccw(vec![Vec2::int(1, 0), Vec2::int(0, 1), Vec2::int(-1, -1)]).unwrap();
        let b = dual_function(&t, Color::Black).unwrap();
        assert!(b.is_concave());
        assert_eq!(b.evaluate(Vec2::int(1, 0)), ri(-1));
        let pt = convex_hull(&[Vec2::int(1, 1)]).unwrap();
        assert_eq!(dual_function(&pt, Color::White), Err(TropicalError::DegeneratePolygon));
    }
}
