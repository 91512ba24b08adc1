//! Edge weights, face mutation and mutation directions.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use thiserror::Error;

use crate::catalog::DelPezzo;
use crate::dimer::{build_graph, faces, validate, Dart, DimerError, DimerFace, DimerGraph, DualDimer, Polytope};
use crate::lattice_geom::{convex_hull, ri, H1Class, Rat, UnimodularMap, Vec2};
use crate::tropical::Color;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MutationError {
    #[error(transparent)]
    Dimer(#[from] DimerError),
    #[error("walk is not closed at step {0}")]
    NotClosed(usize),
    #[error("face not mutable: boundary weight {0}")]
    NotMutable(Rat),
    #[error("no face with index {0}")]
    NoSuchFace(usize),
    #[error("weights given for {got} edges, graph has {want}")]
    WeightCount { got: usize, want: usize },
    #[error("mutated polygons do not form a dimer")]
    BadResult,
    #[error("dimer Lagrangian has first homology of rank {0}, not a torus")]
    NotTorus(usize),
    #[error("multisets have sizes {0} and {1}")]
    SizeMismatch(usize, usize),
}

/// Nonnegative weight per graph edge.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EdgeWeightAssignment(pub Vec<Rat>);

/// Signed weight of a closed walk: black-to-white steps count `+w`, the
/// others `-w`.
pub fn cycle_weight(g: &DimerGraph, cycle: &[Dart], w: &EdgeWeightAssignment) -> Result<Rat, MutationError> {
    if w.0.len() != g.edges.len() {
        return Err(MutationError::WeightCount { got: w.0.len(), want: g.edges.len() });
    }
    let mut total = Rat::zero();
    for (i, &(e, v)) in cycle.iter().enumerate() {
        let next_from = cycle[(i + 1) % cycle.len()].1;
        if g.other_end(e, v) != next_from || (g.edges[e].white != v && g.edges[e].black != v) {
            return Err(MutationError::NotClosed(i));
        }
        if g.colors[v] == Color::Black {
            total += w.0[e];
        } else {
            total -= w.0[e];
        }
    }
    Ok(total)
}

/// Constant weight 1 on every edge. Every cycle of a bipartite graph
/// alternates colors, so all cycle weights vanish.
pub fn exact_assignment(d: &DualDimer) -> Result<EdgeWeightAssignment, MutationError> {
    let g = build_graph(d)?;
    Ok(EdgeWeightAssignment(vec![ri(1); g.edges.len()]))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MutationResult {
    pub dimer: DualDimer,
    pub immersed: bool,
    pub face: DimerFace,
    /// Polytope indices of the input that were replaced.
    pub removed: Vec<usize>,
}

/// Lifts of the polytopes around a face to the plane, following the face
/// boundary once from its first polytope.
fn unroll(d: &DualDimer, g: &DimerGraph, f: &DimerFace) -> Vec<(usize, Vec2)> {
    let ps = d.polytopes();
    let vertex_on = |poly: usize, e: usize| {
        let ed = &g.edges[e];
        let k = if ed.white == poly { ed.white_vertex } else { ed.black_vertex };
        ps[poly].polygon.vertices()[k]
    };
    let mut lifts = Vec::new();
    let mut t = Vec2::zero();
    for &(e, v) in &f.darts {
        lifts.push((v, t));
        let w = g.other_end(e, v);
        t = vertex_on(v, e) + t - vertex_on(w, e);
    }
    lifts
}

/// Replaces the polytopes around face `index` of `faces(d)` by the hulls of
/// their unrolled lifts, one per color.
pub fn mutate_face(d: &DualDimer, index: usize, w: &EdgeWeightAssignment) -> Result<MutationResult, MutationError> {
    let fs = faces(d)?;
    let f = fs.get(index).ok_or(MutationError::NoSuchFace(index))?.clone();
    let g = build_graph(d)?;
    let weight = cycle_weight(&g, &f.darts, w)?;
    if !weight.is_zero() {
        return Err(MutationError::NotMutable(weight));
    }
    let lifts = unroll(d, &g, &f);
    let hull = |c: Color| {
        let pts: Vec<Vec2> = lifts
            .iter()
            .filter(|(p, _)| d.polytopes()[*p].color == c)
            .flat_map(|&(p, t)| d.polytopes()[p].polygon.vertices().iter().map(move |&v| v + t))
            .collect();
        convex_hull(&pts).map_err(|_| MutationError::BadResult)
    };
    let removed: BTreeSet<usize> = f.boundary.iter().copied().collect();
    let mut polys: Vec<Polytope> = d
        .polytopes()
        .iter()
        .enumerate()
        .filter(|(i, _)| !removed.contains(i))
        .map(|(_, p)| p.clone())
        .collect();
    polys.push(Polytope { color: Color::White, polygon: hull(Color::White)? });
    polys.push(Polytope { color: Color::Black, polygon: hull(Color::Black)? });
    let dimer = DualDimer::new(d.denominator(), polys).map_err(|_| MutationError::BadResult)?.canonical();
    let r = validate(&dimer);
    if !r.axioms_pass() {
        return Err(MutationError::BadResult);
    }
    Ok(MutationResult {
        dimer,
        immersed: r.self_intersecting,
        face: f,
        removed: removed.into_iter().collect(),
    })
}

/// `|V| - |E| + |F|` of an embedded dimer.
pub fn euler_characteristic(d: &DualDimer) -> Result<i64, MutationError> {
    let fs = faces(d)?;
    let g = build_graph(d)?;
    Ok(g.vertex_count() as i64 - g.edges.len() as i64 + fs.len() as i64)
}

/// Euler characteristic of the surface obtained by capping the zigzags:
/// `|V| - |E| + |Z|`.
pub fn zigzag_euler_characteristic(d: &DualDimer) -> Result<i64, MutationError> {
    let g = build_graph(d)?;
    let z = g.trace(true).len();
    Ok(g.vertex_count() as i64 - g.edges.len() as i64 + z as i64)
}

fn dart_vector(g: &DimerGraph, walk: &[Dart]) -> Vec<i64> {
    let mut x = vec![0i64; g.edges.len()];
    for &(e, v) in walk {
        x[e] += if g.colors[v] == Color::Black { 1 } else { -1 };
    }
    x
}

/// Column-reduces `rows` to Smith form. Returns the accumulated column
/// operations and the number of nonzero invariant factors.
fn smith_columns(mut a: Vec<Vec<i64>>, k: usize) -> (Vec<Vec<i64>>, Vec<i64>) {
    let mut v: Vec<Vec<i64>> = (0..k).map(|i| (0..k).map(|j| i64::from(i == j)).collect()).collect();
    let swap_cols = |a: &mut Vec<Vec<i64>>, v: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        for row in a.iter_mut().chain(v.iter_mut()) {
            row.swap(i, j);
        }
    };
    let add_col = |a: &mut Vec<Vec<i64>>, v: &mut Vec<Vec<i64>>, dst: usize, src: usize, f: i64| {
        for row in a.iter_mut().chain(v.iter_mut()) {
            row[dst] += f * row[src];
        }
    };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < k {
        let mut piv: Option<(usize, usize)> = None;
        for i in t..a.len() {
            for j in t..k {
                if a[i][j] != 0 && piv.is_none_or(|(pi, pj)| a[i][j].abs() < a[pi][pj].abs()) {
                    piv = Some((i, j));
                }
            }
        }
        let Some((i, j)) = piv else { break };
        a.swap(t, i);
        swap_cols(&mut a, &mut v, t, j);
        loop {
            let mut done = true;
            for j in t + 1..k {
                if a[t][j] != 0 {
                    let q = a[t][j].div_euclid(a[t][t]);
                    add_col(&mut a, &mut v, j, t, -q);
                    if a[t][j] != 0 {
                        swap_cols(&mut a, &mut v, t, j);
                        done = false;
                    }
                }
            }
            for i in t + 1..a.len() {
                if a[i][t] != 0 {
                    let q = a[i][t].div_euclid(a[t][t]);
                    let src = a[t].clone();
                    for (x, y) in a[i].iter_mut().zip(src) {
                        *x -= q * y;
                    }
                    if a[i][t] != 0 {
                        a.swap(t, i);
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    (v, diag)
}

/// Classes of the face boundaries in the first homology of the surface
/// obtained from the dimer graph by capping every zigzag with a disk.
pub fn mutation_directions(d: &DualDimer) -> Result<Vec<H1Class>, MutationError> {
    let fs = faces(d)?;
    let g = build_graph(d)?;
    // spanning tree; the other edges give coordinates on cycles
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut tree = BTreeSet::new();
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &e in &g.rotation[v] {
            let w = g.other_end(e, v);
            if !seen[w] {
                seen[w] = true;
                tree.insert(e);
                stack.push(w);
            }
        }
    }
    let cotree: Vec<usize> = (0..g.edges.len()).filter(|e| !tree.contains(e)).collect();
    let project = |x: Vec<i64>| -> Vec<i64> { cotree.iter().map(|&e| x[e]).collect() };
    let k = cotree.len();
    let rels: Vec<Vec<i64>> = g.trace(true).iter().map(|z| project(dart_vector(&g, z))).collect();
    let (v, diag) = smith_columns(rels, k);
    let rank = diag.len();
    let free = k - rank;
    if free > 2 {
        return Err(MutationError::NotTorus(free));
    }
    let coords = |x: Vec<i64>| -> Vec<i64> {
        (rank..k).map(|j| (0..k).map(|i| x[i] * v[i][j]).sum()).collect()
    };
    Ok(fs
        .iter()
        .map(|f| {
            let c = coords(project(dart_vector(&g, &f.darts)));
            H1Class::new(c.first().copied().unwrap_or(0), c.get(1).copied().unwrap_or(0))
        })
        .collect())
}

/// Vanishing-cycle classes of the nodal trades at the corners of a monotone
/// polygon: the quarter turn of the primitive inward corner bisector.
pub fn seed_directions(surface: DelPezzo) -> Vec<H1Class> {
    let p = surface.polygon();
    let n = p.len();
    (0..n)
        .map(|i| {
            let c = p.vertices()[i];
            let u = p.vertices()[(i + n - 1) % n] - c;
            let v = p.vertices()[(i + 1) % n] - c;
            H1Class::from_vec2((u.primitive() + v.primitive()).primitive().rot90())
        })
        .collect()
}

fn sorted(v: impl IntoIterator<Item = H1Class>) -> Vec<H1Class> {
    let mut v: Vec<H1Class> = v.into_iter().collect();
    v.sort();
    v
}

/// Integer matrix sending `a1, a2` to `b1, b2`, if one exists with `|det| = 1`.
fn solve_pair(a1: H1Class, a2: H1Class, b1: H1Class, b2: H1Class) -> Option<UnimodularMap> {
    let da = a1.a * a2.b - a2.a * a1.b;
    if da == 0 {
        return None;
    }
    // M = [b1 b2] * adj([a1 a2]) / da
    let adj = [[a2.b, -a2.a], [-a1.b, a1.a]];
    let bm = [[b1.a, b2.a], [b1.b, b2.b]];
    let mut m = [[0i64; 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            let s = bm[r][0] * adj[0][c] + bm[r][1] * adj[1][c];
            if s % da != 0 {
                return None;
            }
            m[r][c] = s / da;
        }
    }
    UnimodularMap::linear(m).ok()
}

fn complete_basis(p: H1Class) -> Option<H1Class> {
    // q with det(p, q) = 1, for primitive p
    let (g, x, y) = ext_gcd(p.a, p.b);
    (g == 1).then(|| H1Class::new(-y, x))
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// A unimodular linear map carrying the multiset `a` onto `b`.
pub fn compare_up_to_unimodular(a: &[H1Class], b: &[H1Class]) -> Result<Option<UnimodularMap>, MutationError> {
    if a.len() != b.len() {
        return Err(MutationError::SizeMismatch(a.len(), b.len()));
    }
    let target = sorted(b.iter().copied());
    let works = |m: &UnimodularMap| sorted(a.iter().map(|&c| m.apply_class(c))) == target;
    let id = UnimodularMap::identity();
    if works(&id) {
        return Ok(Some(id));
    }
    let pair = (0..a.len())
        .flat_map(|i| (i + 1..a.len()).map(move |j| (i, j)))
        .find(|&(i, j)| a[i].a * a[j].b - a[j].a * a[i].b != 0);
    match pair {
        Some((i, j)) => {
            for k in 0..b.len() {
                for l in 0..b.len() {
                    if k == l {
                        continue;
                    }
                    if let Some(m) = solve_pair(a[i], a[j], b[k], b[l]) {
                        if works(&m) {
                            return Ok(Some(m));
                        }
                    }
                }
            }
            Ok(None)
        }
        None => {
            // everything on one line through the origin
            let Some(&a0) = a.iter().find(|c| !c.is_zero()) else { return Ok(None) };
            let pa = H1Class::from_vec2(a0.to_vec2().primitive());
            let qa = complete_basis(pa).expect("primitive");
            for &b0 in b.iter().filter(|c| !c.is_zero()) {
                for s in [1, -1] {
                    let pb = H1Class::from_vec2(b0.to_vec2().primitive().scale(ri(s)));
                    let qb = complete_basis(pb).expect("primitive");
                    if let Some(m) = solve_pair(pa, qa, pb, qb) {
                        if works(&m) {
                            return Ok(Some(m));
                        }
                    }
                }
            }
            Ok(None)
        }
    }
}

/// Multiset of zigzag classes, sorted.
pub fn zigzag_classes(d: &DualDimer) -> Result<Vec<H1Class>, MutationError> {
    Ok(sorted(crate::dimer::zigzag_paths(d)?.into_iter().map(|z| z.cls)))
}

/// Counts of each class, for display.
pub fn class_counts(v: &[H1Class]) -> BTreeMap<H1Class, usize> {
    let mut m = BTreeMap::new();
    for &c in v {
        *m.entry(c).or_insert(0) += 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, honeycomb, pants_min};
    use crate::dimer::dimer_to_tropical_fan;
    use crate::tropical::fan_equal;

    #[test]
    fn weights() {
        let d = honeycomb();
        let g = build_graph(&d).unwrap();
        let w = exact_assignment(&d).unwrap();
        for f in faces(&d).unwrap() {
            assert_eq!(cycle_weight(&g, &f.darts, &w).unwrap(), ri(0));
        }
        assert_eq!(cycle_weight(&g, &[], &w).unwrap(), ri(0));
    }

    #[test]
    fn honeycomb_mutation() {
        let d = honeycomb();
        let w = exact_assignment(&d).unwrap();
        let r = mutate_face(&d, 0, &w).unwrap();
        assert!(r.immersed);
        assert_eq!(r.dimer.polytopes().len(), 2);
        assert_eq!(zigzag_classes(&r.dimer).unwrap(), zigzag_classes(&d).unwrap());
        assert!(fan_equal(&dimer_to_tropical_fan(&d).unwrap(), &dimer_to_tropical_fan(&r.dimer).unwrap()).unwrap());
        let small = r.dimer.with_denominator(2).unwrap().canonical();
        assert_eq!(small, catalog::immersed_hexagon());
        let mut bad = w.clone();
        bad.0[r.face.darts[0].0] = ri(2);
        assert!(matches!(mutate_face(&d, 0, &bad), Err(MutationError::NotMutable(_))));
    }

    #[test]
    fn euler_and_directions() {
        assert_eq!(euler_characteristic(&honeycomb()).unwrap(), 0);
        assert_eq!(euler_characteristic(&pants_min()).unwrap(), 0);
        assert_eq!(mutation_directions(&pants_min()).unwrap().len(), 1);
        let h = mutation_directions(&honeycomb()).unwrap();
        assert_eq!(h.len(), 3);
        assert!(h.iter().fold(H1Class::new(0, 0), |a, &c| a + c).is_zero());
        for dp in DelPezzo::ALL {
            let d = dp.seed_dimer();
            assert_eq!(euler_characteristic(&d).unwrap(), 0);
            assert_eq!(zigzag_euler_characteristic(&d).unwrap(), 0);
            let md = mutation_directions(&d).unwrap();
            let sd = seed_directions(dp);
            let m = compare_up_to_unimodular(&md, &sd).unwrap();
            assert!(m.is_some(), "{}: {md:?} vs {sd:?}", dp.name());
        }
    }

    #[test]
    fn seeds_cp2() {
        let s = seed_directions(DelPezzo::CP2);
        for i in 0..3 {
            for j in i + 1..3 {
                assert_eq!(crate::lattice_geom::intersection_number(s[i], s[j]), 3);
            }
        }
    }

    #[test]
    fn compare_rotation() {
        let a = [H1Class::new(1, 0), H1Class::new(0, 1), H1Class::new(-1, -1)];
        let rot = UnimodularMap::linear([[0, -1], [1, 0]]).unwrap();
        let b: Vec<_> = a.iter().map(|&c| rot.apply_class(c)).collect();
        let m = compare_up_to_unimodular(&a, &b).unwrap().unwrap();
        let mut got: Vec<_> = a.iter().map(|&c| m.apply_class(c)).collect();
        got.sort();
        assert_eq!(got, sorted(b));
        assert!(compare_up_to_unimodular(&a, &[H1Class::new(2, 0); 3]).unwrap().is_none());
    }
}
