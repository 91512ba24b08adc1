//! Kasteleyn matrices, partition functions and perfect matchings.
//!
//! Rows are white polytopes, columns black ones. An edge contributes the
//! monomial `z^δ` where `δ` is the lift of the path from the black centroid
//! through the shared vertex to the white centroid.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::dimer::{build_graph, faces, DimerError, DimerGraph, DualDimer};
use crate::lattice_geom::{convex_hull, ri, GeomError, Rat, RatPolygon, Vec2};
use crate::tropical::Color;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KasteleynError {
    #[error(transparent)]
    Dimer(#[from] DimerError),
    #[error("Kasteleyn sign system has no solution")]
    NoSigns,
    #[error("unknown gauge `{0}` (expected paper, trivial or random:<seed>)")]
    BadGauge(String),
}

/// Finite sum of monomials `c z^α` with rational exponents.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPolynomial {
    terms: BTreeMap<Vec2, Rat>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Vec2::zero(), Rat::one())
    }

    pub fn monomial(exp: Vec2, coeff: Rat) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Vec2, Rat)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exp: Vec2, coeff: Rat) {
        let c = self.terms.entry(exp).or_insert_with(Rat::zero);
        *c += coeff;
        if c.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// Terms in lexicographic exponent order.
    pub fn terms(&self) -> &BTreeMap<Vec2, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: Vec2) -> Rat {
        self.terms.get(&exp).copied().unwrap_or_else(Rat::zero)
    }

    /// Least common denominator of all exponent coordinates.
    pub fn common_denominator(&self) -> i128 {
        self.terms.keys().fold(1i128, |acc, e| acc.lcm(&e.denom()))
    }

    pub fn scale(&self, c: Rat) -> Self {
        Self::from_terms(self.terms.iter().map(|(&e, &k)| (e, k * c)))
    }

    /// Multiplication by `z^s`.
    pub fn shift(&self, s: Vec2) -> Self {
        Self::from_terms(self.terms.iter().map(|(&e, &k)| (e + s, k)))
    }

    pub fn newton_polytope(&self) -> Result<RatPolygon, GeomError> {
        convex_hull(&self.terms.keys().copied().collect::<Vec<_>>())
    }

    pub fn abs_coefficient_sum(&self) -> Rat {
        self.terms.values().fold(Rat::zero(), |a, c| a + c.abs())
    }

    /// The term with largest absolute coefficient, ties going to the
    /// lexicographically smallest exponent.
    pub fn dominant_term(&self) -> Option<(Vec2, Rat)> {
        let mut best: Option<(Vec2, Rat)> = None;
        for (&e, &c) in &self.terms {
            if best.is_none_or(|(_, b)| c.abs() > b.abs()) {
                best = Some((e, c));
            }
        }
        best
    }

    /// Divides by the dominant term's monomial and sign, so that term becomes
    /// a positive constant. Unit-monomial multiples share a normal form.
    pub fn normalized(&self) -> Self {
        match self.dominant_term() {
            None => Self::zero(),
            Some((e, c)) => {
                let s = if c.is_negative() { -Rat::one() } else { Rat::one() };
                self.shift(-e).scale(s)
            }
        }
    }

    /// Terms ordered by total degree, then with larger exponents first.
    pub fn display_order(&self) -> Vec<(Vec2, Rat)> {
        let mut t: Vec<(Vec2, Rat)> = self.terms.iter().map(|(&e, &c)| (e, c)).collect();
        t.sort_by(|a, b| {
            let l1 = |v: Vec2| v.x.abs() + v.y.abs();
            l1(a.0).cmp(&l1(b.0)).then(b.0.cmp(&a.0))
        });
        t
    }
}

fn fmt_power(var: &str, e: Rat) -> Option<String> {
    if e.is_zero() {
        None
    } else if e.is_one() {
        Some(var.to_string())
    } else if e.is_integer() {
        Some(format!("{var}^{e}"))
    } else {
        Some(format!("{var}^({e})"))
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.display_order().into_iter().enumerate() {
            let mono: Vec<String> = [fmt_power("z1", e.x), fmt_power("z2", e.y)].into_iter().flatten().collect();
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match (mono.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "{mag}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, o: &LaurentPolynomial) -> LaurentPolynomial {
        let mut p = self.clone();
        for (&e, &c) in &o.terms {
            p.add_term(e, c);
        }
        p
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, o: &LaurentPolynomial) -> LaurentPolynomial {
        self + &(-o)
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        self.scale(-Rat::one())
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, o: &LaurentPolynomial) -> LaurentPolynomial {
        let mut p = LaurentPolynomial::zero();
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &o.terms {
                p.add_term(e1 + e2, c1 * c2);
            }
        }
        p
    }
}

/// Per-row and per-column rescaling of the Kasteleyn matrix.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Gauge {
    /// Trivial gauge, with the overall sign fixed so the determinant's
    /// dominant term is positive.
    Paper,
    Trivial,
    /// Random unit monomials on every row and column.
    Random(u64),
}

impl std::str::FromStr for Gauge {
    type Err = KasteleynError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "paper" => Ok(Gauge::Paper),
            "trivial" => Ok(Gauge::Trivial),
            _ => s
                .strip_prefix("random:")
                .and_then(|n| n.parse().ok())
                .map(Gauge::Random)
                .ok_or_else(|| KasteleynError::BadGauge(s.to_string())),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KasteleynMatrix {
    /// Polytope index of each row (white).
    pub rows: Vec<usize>,
    /// Polytope index of each column (black).
    pub cols: Vec<usize>,
    pub entries: Vec<Vec<LaurentPolynomial>>,
}

impl KasteleynMatrix {
    pub fn is_square(&self) -> bool {
        self.rows.len() == self.cols.len()
    }

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        self.rows.swap(i, j);
        self.entries.swap(i, j);
    }

    pub fn negate_row(&mut self, i: usize) {
        for p in &mut self.entries[i] {
            *p = -&*p;
        }
    }
}

/// The holonomy monomial of a graph edge, without sign.
pub fn edge_monomial(g: &DimerGraph, e: usize) -> LaurentPolynomial {
    LaurentPolynomial::monomial(g.edges[e].displacement, Rat::one())
}

/// Edge signs making every face of degree `2k` carry sign `(-1)^(k+1)`.
/// Immersed dimers have no faces and get all `+1`.
pub fn kasteleyn_signs(d: &DualDimer, g: &DimerGraph) -> Result<Vec<i8>, KasteleynError> {
    let m = g.edges.len();
    let fs = match faces(d) {
        Ok(fs) => fs,
        Err(DimerError::Immersed) => return Ok(vec![1; m]),
        Err(e) => return Err(e.into()),
    };
    // rows: bitset over edges plus the right-hand side in the last slot
    let mut rows: Vec<Vec<bool>> = fs
        .iter()
        .map(|f| {
            let mut r = vec![false; m + 1];
            for &(e, _) in &f.darts {
                r[e] ^= true;
            }
            let k = f.darts.len() / 2;
            r[m] = k % 2 == 0;
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m {
        let Some(p) = (row..rows.len()).find(|&r| rows[r][col]) else { continue };
        rows.swap(row, p);
        for r in 0..rows.len() {
            if r != row && rows[r][col] {
                let src = rows[row].clone();
                for (a, b) in rows[r].iter_mut().zip(src) {
                    *a ^= b;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if rows[row..].iter().any(|r| r[m]) {
        return Err(KasteleynError::NoSigns);
    }
    let mut neg = vec![false; m];
    for (r, &c) in pivots.iter().enumerate() {
        neg[c] = rows[r][m];
    }
    Ok(neg.into_iter().map(|b| if b { -1 } else { 1 }).collect())
}

fn unit_monomial(rng: &mut ChaCha8Rng, n: i64) -> LaurentPolynomial {
    let e = Vec2::frac(rng.gen_range(-2 * n..=2 * n), rng.gen_range(-2 * n..=2 * n), n);
    let c = if rng.gen_bool(0.5) { ri(1) } else { ri(-1) };
    LaurentPolynomial::monomial(e, c)
}

pub fn kasteleyn_matrix(d: &DualDimer, gauge: Gauge) -> Result<KasteleynMatrix, KasteleynError> {
    let g = build_graph(d)?;
    let signs = kasteleyn_signs(d, &g)?;
    let rows: Vec<usize> = (0..g.vertex_count()).filter(|&v| g.colors[v] == Color::White).collect();
    let cols: Vec<usize> = (0..g.vertex_count()).filter(|&v| g.colors[v] == Color::Black).collect();
    let mut entries = vec![vec![LaurentPolynomial::zero(); cols.len()]; rows.len()];
    for (e, ed) in g.edges.iter().enumerate() {
        let i = g.color_index(ed.white);
        let j = g.color_index(ed.black);
        let term = edge_monomial(&g, e).scale(ri(signs[e] as i64));
        entries[i][j] = &entries[i][j] + &term;
    }
    let mut m = KasteleynMatrix { rows, cols, entries };
    match gauge {
        Gauge::Trivial => {}
        Gauge::Paper => {
            let det = determinant(&m);
            if m.is_square() && !m.rows.is_empty() && det.dominant_term().is_some_and(|(_, c)| c.is_negative()) {
                m.negate_row(0);
            }
        }
        Gauge::Random(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = d.denominator();
            let rg: Vec<_> = (0..m.rows.len()).map(|_| unit_monomial(&mut rng, n)).collect();
            let cg: Vec<_> = (0..m.cols.len()).map(|_| unit_monomial(&mut rng, n)).collect();
            for (i, r) in m.entries.iter_mut().enumerate() {
                for (j, p) in r.iter_mut().enumerate() {
                    *p = &(&*p * &rg[i]) * &cg[j];
                }
            }
        }
    }
    Ok(m)
}

/// Exact determinant by Laplace expansion along rows, memoized over the set
/// of used columns. Non-square matrices give the zero polynomial.
pub fn determinant(m: &KasteleynMatrix) -> LaurentPolynomial {
    let n = m.rows.len();
    if n != m.cols.len() {
        return LaurentPolynomial::zero();
    }
    assert!(n < 24, "matrix too large for exact expansion");
    // minors[mask]: determinant of the last |mask| rows on the columns in mask
    let mut minors: Vec<Option<LaurentPolynomial>> = vec![None; 1 << n];
    minors[0] = Some(LaurentPolynomial::one());
    for mask in 1usize..(1 << n) {
        let k = mask.count_ones() as usize;
        let row = n - k;
        let mut acc = LaurentPolynomial::zero();
        let mut sign_pos = 0;
        for j in 0..n {
            if mask & (1 << j) == 0 {
                continue;
            }
            let entry = &m.entries[row][j];
            if !entry.is_zero() {
                let sub = minors[mask & !(1 << j)].as_ref().expect("filled");
                let t = entry * sub;
                acc = if sign_pos % 2 == 0 { &acc + &t } else { &acc - &t };
            }
            sign_pos += 1;
        }
        minors[mask] = Some(acc);
    }
    minors.pop().flatten().expect("full minor")
}

/// The partition function `Z` of a dimer in the given gauge.
pub fn partition_function(d: &DualDimer, gauge: Gauge) -> Result<LaurentPolynomial, KasteleynError> {
    Ok(determinant(&kasteleyn_matrix(d, gauge)?))
}

/// A perfect matching, as sorted graph edge indices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Matching {
    pub edges: Vec<usize>,
    /// Product of the edge monomials, as an exponent.
    pub boltzmann: Vec2,
}

/// All perfect matchings by backtracking over white vertices, sorted.
pub fn enumerate_matchings(g: &DimerGraph) -> Vec<Matching> {
    let whites: Vec<usize> = (0..g.vertex_count()).filter(|&v| g.colors[v] == Color::White).collect();
    let nblack = g.vertex_count() - whites.len();
    let mut out = Vec::new();
    if whites.len() != nblack {
        return out;
    }
    fn go(g: &DimerGraph, whites: &[usize], i: usize, used: &mut BTreeSet<usize>, chosen: &mut Vec<usize>, out: &mut Vec<Matching>) {
        if i == whites.len() {
            let mut edges = chosen.clone();
            edges.sort_unstable();
            let boltzmann = edges.iter().fold(Vec2::zero(), |a, &e| a + g.edges[e].displacement);
            out.push(Matching { edges, boltzmann });
            return;
        }
        for &e in &g.rotation[whites[i]] {
            let b = g.edges[e].black;
            if used.insert(b) {
                chosen.push(e);
                go(g, whites, i + 1, used, chosen, out);
                chosen.pop();
                used.remove(&b);
            }
        }
    }
    go(g, &whites, 0, &mut BTreeSet::new(), &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Compares the trivial-gauge determinant with the matching enumeration:
/// every monomial's coefficient must be, up to sign, the number of matchings
/// with that Boltzmann weight.
pub fn det_matches_matchings(d: &DualDimer) -> Result<bool, KasteleynError> {
    let g = build_graph(d)?;
    let det = partition_function(d, Gauge::Trivial)?;
    let mut counts: BTreeMap<Vec2, i128> = BTreeMap::new();
    for m in enumerate_matchings(&g) {
        *counts.entry(m.boltzmann).or_insert(0) += 1;
    }
    let total: i128 = counts.values().sum();
    let same_support = counts.len() == det.len()
        && counts.iter().all(|(e, &k)| det.coeff(*e).abs() == Rat::from_integer(k));
    Ok(same_support && det.abs_coefficient_sum() == Rat::from_integer(total))
}

/// Nonnegative edge weights, indexed by graph edge.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NovikovWeights(pub Vec<Rat>);

/// True iff the least total weight over perfect matchings is attained at
/// least twice, so that the leading terms of `Z` can cancel.
pub fn novikov_necessary_condition(d: &DualDimer, w: &NovikovWeights) -> Result<bool, KasteleynError> {
    let g = build_graph(d)?;
    let totals: Vec<Rat> = enumerate_matchings(&g)
        .iter()
        .map(|m| m.edges.iter().fold(Rat::zero(), |a, &e| a + w.0[e]))
        .collect();
    let Some(min) = totals.iter().min() else { return Ok(false) };
    Ok(totals.iter().filter(|t| *t == min).count() >= 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, honeycomb, pants_min};
    use crate::lattice_geom::rq;

    #[test]
    fn honeycomb_determinant() {
        let d = honeycomb();
        let m = kasteleyn_matrix(&d, Gauge::Paper).unwrap();
        let mut exps = BTreeSet::new();
        for r in &m.entries {
            for p in r {
                assert_eq!(p.len(), 1);
                exps.insert(*p.terms().keys().next().unwrap());
            }
        }
        let want: BTreeSet<Vec2> =
            [Vec2::new(rq(0, 1), rq(1, 3)), Vec2::new(rq(1, 3), rq(0, 1)), Vec2::new(rq(-1, 3), rq(-1, 3))].into();
        assert_eq!(exps, want);
        let z = determinant(&m);
        assert_eq!(z.to_string(), "3 - z1 - z2 - z1^-1*z2^-1");
        for s in 0..10 {
            let r = partition_function(&d, Gauge::Random(s)).unwrap();
            assert_eq!(r.normalized(), z);
        }
        let mut sw = m.clone();
        sw.swap_rows(0, 2);
        assert_eq!(determinant(&sw), -&z);
    }

    #[test]
    fn matchings_agree() {
        for name in catalog::DIMER_NAMES {
            let d = catalog::dimer(name).unwrap();
            assert!(det_matches_matchings(&d).unwrap(), "{name}");
        }
        let g = build_graph(&honeycomb()).unwrap();
        assert_eq!(enumerate_matchings(&g).len(), 6);
        let g = build_graph(&pants_min()).unwrap();
        assert_eq!(enumerate_matchings(&g).len(), 3);
    }

    #[test]
    fn novikov() {
        let d = honeycomb();
        assert!(novikov_necessary_condition(&d, &NovikovWeights(vec![ri(1); 9])).unwrap());
        let w = (0..9).map(|i| ri(1 << i)).collect();
        assert!(!novikov_necessary_condition(&d, &NovikovWeights(w)).unwrap());
    }

    #[test]
    fn display() {
        let p = LaurentPolynomial::from_terms([(Vec2::new(rq(1, 3), rq(0, 1)), ri(2)), (Vec2::zero(), ri(-1))]);
        assert_eq!(p.to_string(), "-1 + 2*z1^(1/3)");
    }
}
