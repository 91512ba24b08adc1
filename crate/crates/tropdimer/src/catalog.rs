//! Named dimers and del Pezzo data.

use thiserror::Error;

use crate::dimer::{from_zigzag_lines, DimerError, DualDimer, Polytope, ZigzagLine};
use crate::lattice_geom::{convex_hull, rq, H1Class, RatPolygon, Vec2};
use crate::tropical::Color;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown catalog entry `{0}`")]
    Unknown(String),
    #[error(transparent)]
    Dimer(#[from] DimerError),
}

/// Names accepted by [`dimer`].
pub const DIMER_NAMES: [&str; 8] = [
    "honeycomb",
    "pants-min",
    "cp2-seed",
    "p1p1-seed",
    "bl1-seed",
    "bl2-seed",
    "bl3-seed",
    "immersed-hexagon",
];

fn tri(n: i64, pts: [(i64, i64); 3]) -> RatPolygon {
    let v: Vec<Vec2> = pts.iter().map(|&(x, y)| Vec2::frac(x, y, n)).collect();
    convex_hull(&v).expect("nonempty")
}

fn poly(color: Color, polygon: RatPolygon) -> Polytope {
    Polytope { color, polygon }
}

/// Three white and three black triangles on the 1/6 grid; the dimer graph is
/// the hexagonal tiling of the torus with three faces.
pub fn honeycomb() -> DualDimer {
    let w = |p| poly(Color::White, tri(6, p));
    let b = |p| poly(Color::Black, tri(6, p));
    DualDimer::checked(
        6,
        vec![
            w([(6, 6), (5, 4), (4, 5)]),
            w([(2, 4), (0, 3), (1, 2)]),
            w([(4, 2), (2, 1), (3, 0)]),
            b([(0, 0), (1, 2), (2, 1)]),
            b([(2, 4), (3, 6), (4, 5)]),
            b([(4, 2), (5, 4), (6, 3)]),
        ],
    )
    .expect("honeycomb is a dimer")
    .canonical()
}

/// The smallest embedded dimer: two unimodular triangles, three edges, one face.
pub fn pants_min() -> DualDimer {
    DualDimer::from_pair(
        2,
        tri(2, [(2, 2), (1, 2), (2, 1)]),
        tri(2, [(0, 0), (1, 0), (0, 1)]),
    )
    .expect("pants is a dimer")
    .canonical()
}

/// Two big triangles overlapping in a hexagon, the shape left by mutating
/// the honeycomb at a face.
pub fn immersed_hexagon() -> DualDimer {
    DualDimer::from_pair(
        2,
        tri(2, [(2, 2), (1, 0), (0, 1)]),
        tri(2, [(0, 0), (2, 1), (1, 2)]),
    )
    .expect("immersed hexagon is a dimer")
    .canonical()
}

/// The five toric del Pezzo surfaces.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum DelPezzo {
    CP2,
    P1P1,
    Bl1,
    Bl2,
    Bl3,
}

impl DelPezzo {
    pub const ALL: [DelPezzo; 5] = [DelPezzo::CP2, DelPezzo::P1P1, DelPezzo::Bl1, DelPezzo::Bl2, DelPezzo::Bl3];

    pub fn name(self) -> &'static str {
        match self {
            DelPezzo::CP2 => "cp2",
            DelPezzo::P1P1 => "p1p1",
            DelPezzo::Bl1 => "bl1",
            DelPezzo::Bl2 => "bl2",
            DelPezzo::Bl3 => "bl3",
        }
    }

    pub fn from_name(s: &str) -> Option<DelPezzo> {
        DelPezzo::ALL.into_iter().find(|d| d.name() == s)
    }

    /// Monotone moment polygon, counterclockwise.
    pub fn polygon(self) -> RatPolygon {
        let v: &[(i64, i64)] = match self {
            DelPezzo::CP2 => &[(-1, -1), (2, -1), (-1, 2)],
            DelPezzo::P1P1 => &[(-1, -1), (1, -1), (1, 1), (-1, 1)],
            DelPezzo::Bl1 => &[(-1, 0), (0, -1), (2, -1), (-1, 2)],
            DelPezzo::Bl2 => &[(-1, 0), (0, -1), (1, -1), (1, 0), (-1, 2)],
            DelPezzo::Bl3 => &[(-1, 0), (0, -1), (1, -1), (1, 0), (0, 1), (-1, 1)],
        };
        RatPolygon::from_ccw(v.iter().map(|&(x, y)| Vec2::int(x, y)).collect()).expect("convex")
    }

    /// Inward primitive normals of the polygon edges: the rays of the fan.
    pub fn fan_rays(self) -> Vec<H1Class> {
        let p = self.polygon();
        (0..p.len())
            .map(|i| H1Class::from_vec2(p.edge(i).rot90().primitive()))
            .collect()
    }

    /// Zigzag line families of the seed dimer: one line per polygon corner,
    /// in the direction of the quarter-turned corner.
    fn seed_lines(self) -> Vec<ZigzagLine> {
        let offsets: &[(i64, i64)] = match self {
            DelPezzo::CP2 => &[(3, 4), (3, 4), (3, 4)],
            DelPezzo::P1P1 => &[(3, 4), (3, 4), (0, 1), (3, 4)],
            DelPezzo::Bl1 => &[(11, 12), (0, 1), (2, 3), (1, 4)],
            DelPezzo::Bl2 => &[(1, 8), (5, 8), (3, 4), (3, 8), (1, 2)],
            DelPezzo::Bl3 => &[(5, 6), (5, 6), (1, 3), (5, 6), (0, 1), (1, 2)],
        };
        self.polygon()
            .vertices()
            .iter()
            .zip(offsets)
            .map(|(v, &(a, b))| ZigzagLine::new(H1Class::from_vec2(v.rot90()), rq(a, b)))
            .collect()
    }

    /// The seed dimer of the surface.
    pub fn seed_dimer(self) -> DualDimer {
        from_zigzag_lines(&self.seed_lines()).expect("seed arrangement is a dimer")
    }
}

/// Vanishing-cycle classes of the four-node elliptic fibration example.
pub fn x3333_classes() -> [H1Class; 4] {
    [H1Class::new(1, 0), H1Class::new(0, 1), H1Class::new(-1, 1), H1Class::new(1, 1)]
}

pub fn dimer(name: &str) -> Result<DualDimer, CatalogError> {
    let seed = |d: DelPezzo| Ok(d.seed_dimer());
    match name {
        "honeycomb" => Ok(honeycomb()),
        "pants-min" => Ok(pants_min()),
        "immersed-hexagon" => Ok(immersed_hexagon()),
        "cp2-seed" => seed(DelPezzo::CP2),
        "p1p1-seed" => seed(DelPezzo::P1P1),
        "bl1-seed" => seed(DelPezzo::Bl1),
        "bl2-seed" => seed(DelPezzo::Bl2),
        "bl3-seed" => seed(DelPezzo::Bl3),
        _ => Err(CatalogError::Unknown(name.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dimer::{build_graph, faces, validate, zigzag_paths};

    #[test]
    fn catalog_shapes() {
        for name in DIMER_NAMES {
            let d = dimer(name).unwrap();
            let r = validate(&d);
            assert!(r.axioms_pass(), "{name}: {r}");
            let g = build_graph(&d).unwrap();
            let z = zigzag_paths(&d).unwrap();
            let f = faces(&d).map(|f| f.len());
            eprintln!("{name}: N={} V={} E={} Z={} F={:?} immersed={}", d.denominator(), g.vertex_count(), g.edges.len(), z.len(), f, r.self_intersecting);
        }
    }
}
