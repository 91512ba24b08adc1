//! Exact lattice geometry on the plane and on the torus `R^2 / Z^2`.
//!
//! Everything here is a small immutable value. Coordinates are
//! [`Rat`] (a reduced `i128` fraction), so equality is exact.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::Zero;
use thiserror::Error;

/// Exact rational number. Always stored reduced with a positive denominator.
pub type Rat = num_rational::Ratio<i128>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeomError {
    #[error("empty point set")]
    EmptyPointSet,
    #[error("lattice polygon required")]
    NotLattice,
    #[error("degenerate polygon")]
    Degenerate,
    #[error("matrix is not unimodular (det = {0})")]
    NotUnimodular(i64),
}

/// Shorthand for an integer-valued [`Rat`].
pub fn ri(n: i64) -> Rat {
    Rat::from_integer(n as i128)
}

/// Shorthand for `n / d`.
pub fn rq(n: i64, d: i64) -> Rat {
    Rat::new(n as i128, d as i128)
}

/// Point or vector in `R^2`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vec2 {
    pub x: Rat,
    pub y: Rat,
}

impl Vec2 {
    pub fn new(x: Rat, y: Rat) -> Self {
        Vec2 { x, y }
    }

    pub fn int(x: i64, y: i64) -> Self {
        Vec2::new(ri(x), ri(y))
    }

    /// The point `(x/d, y/d)`.
    pub fn frac(x: i64, y: i64, d: i64) -> Self {
        Vec2::new(rq(x, d), rq(y, d))
    }

    pub fn zero() -> Self {
        Vec2::int(0, 0)
    }

    pub fn scale(self, s: Rat) -> Self {
        Vec2::new(self.x * s, self.y * s)
    }

    pub fn dot(self, o: Vec2) -> Rat {
        self.x * o.x + self.y * o.y
    }

    /// `det(self, o) = self.x * o.y - self.y * o.x`.
    pub fn det(self, o: Vec2) -> Rat {
        self.x * o.y - self.y * o.x
    }

    /// Counterclockwise quarter turn `(x, y) -> (-y, x)`.
    pub fn rot90(self) -> Self {
        Vec2::new(-self.y, self.x)
    }

    pub fn is_zero(self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_integral(self) -> bool {
        self.x.is_integer() && self.y.is_integer()
    }

    /// Least common denominator of the two coordinates.
    pub fn denom(self) -> i128 {
        self.x.denom().lcm(self.y.denom())
    }

    /// Integer part `(floor x, floor y)`.
    pub fn floor(self) -> Vec2 {
        Vec2::new(self.x.floor(), self.y.floor())
    }

    /// Primitive integer vector positively parallel to `self`. Panics on zero.
    pub fn primitive(self) -> Vec2 {
        assert!(!self.is_zero(), "primitive of zero vector");
        let d = self.denom();
        let a = (self.x * d).to_integer();
        let b = (self.y * d).to_integer();
        let g = a.gcd(&b);
        Vec2::new(Rat::from_integer(a / g), Rat::from_integer(b / g))
    }

    /// Lattice length of the vector measured in `(1/n) Z^2`.
    /// Returns `None` when the vector is not in that lattice.
    pub fn lattice_length(self, n: i128) -> Option<i128> {
        let a = self.x * n;
        let b = self.y * n;
        if !a.is_integer() || !b.is_integer() {
            return None;
        }
        Some(a.to_integer().gcd(&b.to_integer()))
    }

    /// Integer coordinates, if the vector is integral.
    pub fn to_ints(self) -> Option<(i64, i64)> {
        if !self.is_integral() {
            return None;
        }
        let x = i64::try_from(self.x.to_integer()).ok()?;
        let y = i64::try_from(self.y.to_integer()).ok()?;
        Some((x, y))
    }

    /// Numerators over a common denominator `n`, if `n` clears both coordinates.
    pub fn numerators(self, n: i128) -> Option<(i128, i128)> {
        let a = self.x * n;
        let b = self.y * n;
        (a.is_integer() && b.is_integer()).then(|| (a.to_integer(), b.to_integer()))
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

impl Mul<Rat> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: Rat) -> Vec2 {
        self.scale(s)
    }
}

impl fmt::Debug for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Display for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A point of the torus, stored in the fundamental domain `[0,1)^2`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct TorusPoint {
    coords: Vec2,
}

impl TorusPoint {
    pub fn coords(&self) -> Vec2 {
        self.coords
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.coords.fmt(f)
    }
}

pub fn reduce_mod_lattice(p: Vec2) -> TorusPoint {
    TorusPoint {
        coords: p - p.floor(),
    }
}

/// Homology class `a [x] + b [y]` in `H_1(T^2)`; also used as a plain integer vector.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct H1Class {
    pub a: i64,
    pub b: i64,
}

impl H1Class {
    pub fn new(a: i64, b: i64) -> Self {
        H1Class { a, b }
    }

    pub fn to_vec2(self) -> Vec2 {
        Vec2::int(self.a, self.b)
    }

    /// Panics if `v` is not integral.
    pub fn from_vec2(v: Vec2) -> Self {
        let (a, b) = v.to_ints().expect("integral vector");
        H1Class { a, b }
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }
}

impl Add for H1Class {
    type Output = H1Class;
    fn add(self, o: H1Class) -> H1Class {
        H1Class::new(self.a + o.a, self.b + o.b)
    }
}

impl Neg for H1Class {
    type Output = H1Class;
    fn neg(self) -> H1Class {
        H1Class::new(-self.a, -self.b)
    }
}

impl fmt::Display for H1Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{},{}>", self.a, self.b)
    }
}

pub fn intersection_number(c1: H1Class, c2: H1Class) -> u64 {
    (c1.a as i128 * c2.b as i128 - c2.a as i128 * c1.b as i128).unsigned_abs() as u64
}

/// Convex polygon with counterclockwise vertices.
///
/// One or two vertices mean a degenerate point or segment; dimer
/// constructors reject those.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatPolygon {
    vertices: Vec<Vec2>,
}

impl RatPolygon {
    /// Builds a polygon from vertices already in convex counterclockwise
    /// position. Returns `None` if they are not.
    pub fn from_ccw(vertices: Vec<Vec2>) -> Option<Self> {
        let n = vertices.len();
        if n == 0 {
            return None;
        }
        if n >= 3 {
            for i in 0..n {
                let a = vertices[i];
                let b = vertices[(i + 1) % n];
                let c = vertices[(i + 2) % n];
                if (b - a).det(c - b) <= Rat::zero() {
                    return None;
                }
            }
            // a convex turn at every vertex can still wind twice
            let turns: Rat = (1..n - 1)
                .map(|i| (vertices[i] - vertices[0]).det(vertices[i + 1] - vertices[0]))
                .sum();
            if turns <= Rat::zero() {
                return None;
            }
            let hull = convex_hull(&vertices).ok()?;
            if hull.vertices.len() != n {
                return None;
            }
        } else if n == 2 && vertices[0] == vertices[1] {
            return None;
        }
        Some(RatPolygon { vertices })
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_degenerate(&self) -> bool {
        self.vertices.len() < 3
    }

    /// Edge vector from vertex `i` to vertex `i+1`.
    pub fn edge(&self, i: usize) -> Vec2 {
        let n = self.vertices.len();
        self.vertices[(i + 1) % n] - self.vertices[i]
    }

    /// Twice the area.
    pub fn double_area(&self) -> Rat {
        let n = self.vertices.len();
        (0..n)
            .map(|i| self.vertices[i].det(self.vertices[(i + 1) % n]))
            .sum()
    }

    /// Average of the vertices.
    pub fn centroid(&self) -> Vec2 {
        let n = ri(self.vertices.len() as i64);
        let s = self.vertices.iter().fold(Vec2::zero(), |acc, &v| acc + v);
        Vec2::new(s.x / n, s.y / n)
    }

    pub fn translate(&self, t: Vec2) -> RatPolygon {
        RatPolygon {
            vertices: self.vertices.iter().map(|&v| v + t).collect(),
        }
    }

    /// Same polygon, vertex list rotated to start at the lexicographically smallest vertex.
    pub fn canonical(&self) -> RatPolygon {
        let k = (0..self.vertices.len())
            .min_by_key(|&i| self.vertices[i])
            .unwrap_or(0);
        let mut v = self.vertices.clone();
        v.rotate_left(k);
        RatPolygon { vertices: v }
    }

    /// Signed position of `p` against every edge: `Greater` strictly inside,
    /// `Equal` on the boundary, `Less` outside.
    pub fn locate(&self, p: Vec2) -> Ordering {
        if self.is_degenerate() {
            return Ordering::Less;
        }
        let mut worst = Ordering::Greater;
        for i in 0..self.vertices.len() {
            let s = self.edge(i).det(p - self.vertices[i]);
            match s.cmp(&Rat::zero()) {
                Ordering::Less => return Ordering::Less,
                Ordering::Equal => worst = Ordering::Equal,
                Ordering::Greater => {}
            }
        }
        worst
    }

    pub fn contains_strictly(&self, p: Vec2) -> bool {
        self.locate(p) == Ordering::Greater
    }

    pub fn contains(&self, p: Vec2) -> bool {
        self.locate(p) != Ordering::Less
    }

    /// Intersection with the half-plane `a . x <= b`.
    pub fn clip(&self, a: Vec2, b: Rat) -> Option<RatPolygon> {
        let pts = clip_points(&self.vertices, a, b);
        if pts.is_empty() {
            return None;
        }
        convex_hull(&pts).ok()
    }

    /// Intersection of two convex polygons (possibly degenerate or empty).
    pub fn intersect(&self, other: &RatPolygon) -> Option<RatPolygon> {
        if other.is_degenerate() {
            return None;
        }
        let mut pts = self.vertices.clone();
        let n = other.vertices.len();
        for i in 0..n {
            let e = other.edge(i);
            // inside means det(e, p - v) >= 0, i.e. (-rot90 e) . p <= (-rot90 e) . v
            let a = -e.rot90();
            let b = a.dot(other.vertices[i]);
            pts = clip_points(&pts, a, b);
            if pts.is_empty() {
                return None;
            }
        }
        convex_hull(&pts).ok()
    }

    /// Applies `f` to every vertex, restoring counterclockwise order.
    pub fn map(&self, f: impl Fn(Vec2) -> Vec2) -> RatPolygon {
        let mut v: Vec<Vec2> = self.vertices.iter().map(|&p| f(p)).collect();
        if v.len() >= 3 {
            let p = RatPolygon {
                vertices: v.clone(),
            };
            if p.double_area() < Rat::zero() {
                v.reverse();
            }
        }
        RatPolygon { vertices: v }
    }
}

fn clip_points(poly: &[Vec2], a: Vec2, b: Rat) -> Vec<Vec2> {
    let n = poly.len();
    if n == 1 {
        return if a.dot(poly[0]) <= b { poly.to_vec() } else { vec![] };
    }
    let mut out = Vec::new();
    for i in 0..n {
        let p = poly[i];
        let q = poly[(i + 1) % n];
        let fp = a.dot(p) - b;
        let fq = a.dot(q) - b;
        if fp <= Rat::zero() {
            out.push(p);
        }
        if (fp < Rat::zero() && fq > Rat::zero()) || (fp > Rat::zero() && fq < Rat::zero()) {
            let t = fp / (fp - fq);
            out.push(p + (q - p) * t);
        }
    }
    out
}

/// Minimal convex polygon containing the points (Andrew's monotone chain).
pub fn convex_hull(points: &[Vec2]) -> Result<RatPolygon, GeomError> {
    if points.is_empty() {
        return Err(GeomError::EmptyPointSet);
    }
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return Ok(RatPolygon { vertices: pts });
    }
    let cross = |o: Vec2, a: Vec2, b: Vec2| (a - o).det(b - o);
    let mut lower: Vec<Vec2> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= Rat::zero() {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Vec2> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= Rat::zero() {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 3 {
        // collinear input: keep the two extreme points
        let (lo, hi) = (pts[0], pts[pts.len() - 1]);
        return Ok(RatPolygon {
            vertices: vec![lo, hi],
        });
    }
    Ok(RatPolygon { vertices: lower })
}

pub fn interior_lattice_points(p: &RatPolygon) -> Result<Vec<(i64, i64)>, GeomError> {
    if p.vertices.iter().any(|v| !v.is_integral()) {
        return Err(GeomError::NotLattice);
    }
    if p.is_degenerate() {
        return Ok(vec![]);
    }
    let xs = p.vertices.iter().map(|v| v.x.to_integer() as i64);
    let ys = p.vertices.iter().map(|v| v.y.to_integer() as i64);
    let (x0, x1) = (xs.clone().min().unwrap(), xs.max().unwrap());
    let (y0, y1) = (ys.clone().min().unwrap(), ys.max().unwrap());
    let mut out = Vec::new();
    for x in x0..=x1 {
        for y in y0..=y1 {
            if p.contains_strictly(Vec2::int(x, y)) {
                out.push((x, y));
            }
        }
    }
    Ok(out)
}

/// Affine map `x -> M x + t` with `M` an integer matrix of determinant +-1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct UnimodularMap {
    m: [[i64; 2]; 2],
    t: Vec2,
}

impl UnimodularMap {
    pub fn new(m: [[i64; 2]; 2], t: Vec2) -> Result<Self, GeomError> {
        let d = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        if d.abs() != 1 {
            return Err(GeomError::NotUnimodular(d));
        }
        Ok(UnimodularMap { m, t })
    }

    pub fn linear(m: [[i64; 2]; 2]) -> Result<Self, GeomError> {
        UnimodularMap::new(m, Vec2::zero())
    }

    pub fn identity() -> Self {
        UnimodularMap {
            m: [[1, 0], [0, 1]],
            t: Vec2::zero(),
        }
    }

    pub fn matrix(&self) -> [[i64; 2]; 2] {
        self.m
    }

    pub fn translation(&self) -> Vec2 {
        self.t
    }

    pub fn det(&self) -> i64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn apply_linear(&self, v: Vec2) -> Vec2 {
        let m = |i: usize, j: usize| ri(self.m[i][j]);
        Vec2::new(m(0, 0) * v.x + m(0, 1) * v.y, m(1, 0) * v.x + m(1, 1) * v.y)
    }

    pub fn apply(&self, v: Vec2) -> Vec2 {
        self.apply_linear(v) + self.t
    }

    pub fn apply_class(&self, c: H1Class) -> H1Class {
        H1Class::new(
            self.m[0][0] * c.a + self.m[0][1] * c.b,
            self.m[1][0] * c.a + self.m[1][1] * c.b,
        )
    }

    pub fn inverse(&self) -> UnimodularMap {
        let d = self.det();
        let [[a, b], [c, e]] = self.m;
        let inv = [[e * d, -b * d], [-c * d, a * d]];
        let lin = UnimodularMap { m: inv, t: Vec2::zero() };
        UnimodularMap {
            m: inv,
            t: -lin.apply_linear(self.t),
        }
    }

    /// `self` after `other`: `x -> self(other(x))`.
    pub fn compose(&self, other: &UnimodularMap) -> UnimodularMap {
        let a = self.m;
        let b = other.m;
        let m = [
            [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
            [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
        ];
        UnimodularMap {
            m,
            t: self.apply(other.t),
        }
    }

    /// Inverse transpose of the linear part, the action on covectors.
    pub fn dual(&self) -> UnimodularMap {
        let inv = self.inverse().m;
        UnimodularMap {
            m: [[inv[0][0], inv[1][0]], [inv[0][1], inv[1][1]]],
            t: Vec2::zero(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce_mod_lattice(Vec2::frac(7, -1, 6)).coords(), Vec2::frac(1, 5, 6));
        assert_eq!(reduce_mod_lattice(Vec2::zero()).coords(), Vec2::zero());
        assert_eq!(reduce_mod_lattice(Vec2::frac(6, 6, 6)).coords(), Vec2::zero());
    }

    #[test]
    fn hull_absorbs_interior_point() {
        let h = convex_hull(&[Vec2::int(0, 0), Vec2::int(1, 0), Vec2::int(0, 1), Vec2::frac(1, 1, 3)]).unwrap();
        assert_eq!(h.vertices(), &[Vec2::int(0, 0), Vec2::int(1, 0), Vec2::int(0, 1)]);
        assert!(convex_hull(&[Vec2::int(2, 3)]).unwrap().is_degenerate());
        assert_eq!(convex_hull(&[]), Err(GeomError::EmptyPointSet));
    }

    #[test]
    fn intersections() {
        assert_eq!(intersection_number(H1Class::new(1, 0), H1Class::new(0, 1)), 1);
        assert_eq!(intersection_number(H1Class::new(3, -2), H1Class::new(3, -2)), 0);
        assert_eq!(intersection_number(H1Class::new(1, 1), H1Class::new(1, -1)), 2);
    }

    #[test]
    fn interior_points_of_triangles() {
        let tri = |d| RatPolygon::from_ccw(vec![Vec2::int(0, 0), Vec2::int(d, 0), Vec2::int(0, d)]).unwrap();
        assert!(interior_lattice_points(&tri(1)).unwrap().is_empty());
        assert_eq!(interior_lattice_points(&tri(3)).unwrap(), vec![(1, 1)]);
        assert_eq!(interior_lattice_points(&tri(4)).unwrap().len(), 3);
        let half = RatPolygon::from_ccw(vec![Vec2::zero(), Vec2::frac(1, 0, 2), Vec2::int(0, 1)]).unwrap();
        assert_eq!(interior_lattice_points(&half), Err(GeomError::NotLattice));
    }

    #[test]
    fn unimodular_inverse_and_dual() {
        let m = UnimodularMap::new([[2, 1], [1, 1]], Vec2::frac(1, 2, 3)).unwrap();
        let p = Vec2::frac(5, -7, 4);
        assert_eq!(m.inverse().apply(m.apply(p)), p);
        assert_eq!(m.compose(&m.inverse()), UnimodularMap::identity());
        // covector pairing is preserved
        let a = Vec2::int(3, -1);
        assert_eq!(m.dual().apply_linear(a).dot(m.apply_linear(p)), a.dot(p));
        assert!(UnimodularMap::linear([[2, 0], [0, 1]]).is_err());
    }

    #[test]
    fn polygon_clip_and_intersect() {
        let sq = RatPolygon::from_ccw(vec![Vec2::int(0, 0), Vec2::int(2, 0), Vec2::int(2, 2), Vec2::int(0, 2)]).unwrap();
        let tri = RatPolygon::from_ccw(vec![Vec2::int(1, 1), Vec2::int(3, 1), Vec2::int(1, 3)]).unwrap();
        let i = sq.intersect(&tri).unwrap();
        assert_eq!(i.double_area(), ri(2));
        assert!(RatPolygon::from_ccw(vec![Vec2::int(0, 0), Vec2::int(0, 1), Vec2::int(1, 0)]).is_none());
    }
}
