#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tropdimer::catalog::DelPezzo;
use tropdimer::dimer::{from_zigzag_lines, DualDimer, ZigzagLine};
use tropdimer::lattice_geom::{rq, H1Class, UnimodularMap};

/// Random element of SL(2, Z) as a short word in the standard generators.
pub fn random_sl2(rng: &mut ChaCha8Rng, len: usize) -> UnimodularMap {
    let gens = [[[1, 1], [0, 1]], [[1, 0], [1, 1]], [[0, -1], [1, 0]], [[1, -1], [0, 1]]];
    (0..len).fold(UnimodularMap::identity(), |m, _| {
        let g = UnimodularMap::linear(gens[rng.gen_range(0..gens.len())]).unwrap();
        g.compose(&m)
    })
}

/// A valid dimer from a seed's zigzag classes moved by a random unimodular
/// map, with random line offsets. Returns `None` when the arrangement is
/// degenerate or too large.
pub fn try_fuzz_dimer(rng: &mut ChaCha8Rng) -> Option<DualDimer> {
    let s = DelPezzo::ALL[rng.gen_range(0..5)];
    let len = rng.gen_range(0..3);
    let m = random_sl2(rng, len);
    let n = rng.gen_range(2..=12);
    let lines: Vec<ZigzagLine> = s
        .polygon()
        .vertices()
        .iter()
        .map(|v| {
            let c = m.apply_class(H1Class::from_vec2(v.rot90()));
            ZigzagLine::new(c, rq(rng.gen_range(0..n), n))
        })
        .collect();
    let size: i64 = lines.iter().map(|l| l.class.a.abs() + l.class.b.abs()).sum();
    if size > 14 {
        return None;
    }
    from_zigzag_lines(&lines).ok()
}

pub fn fuzz_dimers(seed: u64, count: usize) -> Vec<DualDimer> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        if let Some(d) = try_fuzz_dimer(&mut rng) {
            out.push(d);
        }
    }
    out
}
