mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tropdimer::almost_toric::{
    local_line, nodal_nonsection, nodal_trade_exchange, nodal_trade_exchange_inverse, two_chart_section, validate_section,
    BaseDiagram,
};
use tropdimer::catalog::{self, DelPezzo};
use tropdimer::cli::doc;
use tropdimer::dimer::{validate, zigzag_paths};
use tropdimer::kasteleyn::{det_matches_matchings, partition_function, Gauge, LaurentPolynomial};
use tropdimer::lattice_geom::{ri, rq, UnimodularMap, Vec2};
use tropdimer::mutation::{compare_up_to_unimodular, euler_characteristic, mutation_directions, seed_directions};

fn affine(seed: u64, n: i64) -> UnimodularMap {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = rng.gen_range(0..5);
    let lin = common::random_sl2(&mut rng, len);
    let t = Vec2::frac(rng.gen_range(-3 * n..3 * n), rng.gen_range(-3 * n..3 * n), n);
    UnimodularMap::new(lin.matrix(), t).unwrap()
}

fn laurent() -> impl Strategy<Value = LaurentPolynomial> {
    prop::collection::vec(((-3i64..=3, -3i64..=3, 1i64..=3), -4i64..=4), 0..5).prop_map(|ts| {
        LaurentPolynomial::from_terms(ts.into_iter().map(|((x, y, d), c)| (Vec2::frac(x, y, d), ri(c))))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_gauges_agree_after_normalizing(seed in any::<u64>(), which in 0usize..4) {
        let name = ["honeycomb", "pants-min", "cp2-seed", "p1p1-seed"][which];
        let d = catalog::dimer(name).unwrap();
        let paper = partition_function(&d, Gauge::Paper).unwrap().normalized();
        prop_assert_eq!(partition_function(&d, Gauge::Random(seed)).unwrap().normalized(), paper);
    }

    #[test]
    fn euler_characteristic_is_affine_invariant(seed in any::<u64>(), s in 0usize..5) {
        let d = DelPezzo::ALL[s].seed_dimer();
        let moved = d.apply_map(&affine(seed, d.denominator())).canonical();
        prop_assert_eq!(euler_characteristic(&moved).unwrap(), 0);
    }

    #[test]
    fn zigzags_sum_to_zero_after_maps(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = loop {
            if let Some(d) = common::try_fuzz_dimer(&mut rng) { break d; }
        };
        let moved = d.apply_map(&affine(seed ^ 0x55, d.denominator()));
        let s = zigzag_paths(&moved).unwrap().iter().fold(Vec2::zero(), |a, z| a + z.cls.to_vec2());
        prop_assert!(s.is_zero());
    }

    #[test]
    fn compare_is_symmetric(seed in any::<u64>(), s in 0usize..5) {
        let a = seed_directions(DelPezzo::ALL[s]);
        let m = affine(seed, 1);
        let mut b: Vec<_> = a.iter().map(|c| m.apply_class(*c)).collect();
        let r = seed as usize % b.len();
        b.rotate_left(r);
        let ab = compare_up_to_unimodular(&a, &b).unwrap();
        let ba = compare_up_to_unimodular(&b, &a).unwrap();
        prop_assert!(ab.is_some() && ba.is_some());
        let other = mutation_directions(&DelPezzo::ALL[(s + 1) % 5].seed_dimer()).unwrap();
        let found = |x: &[_], y: &[_]| compare_up_to_unimodular(x, y).ok().map(|m| m.is_some());
        prop_assert_eq!(found(&a, &other), found(&other, &a));
    }

    #[test]
    fn laurent_ring_laws(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &LaurentPolynomial::one(), a.clone());
        prop_assert_eq!(&a + &(-&a), LaurentPolynomial::zero());
    }

    #[test]
    fn normalizing_forgets_monomial_factors(a in laurent(), x in -4i64..4, y in -4i64..4, k in 1i64..5) {
        let shifted = &a * &LaurentPolynomial::monomial(Vec2::frac(x, y, 2), ri(-k));
        prop_assert_eq!(shifted.normalized(), a.scale(ri(k)).normalized());
    }

    #[test]
    fn section_validity_is_affine_invariant(seed in any::<u64>()) {
        let m = affine(seed, 6);
        prop_assert!(validate_section(&two_chart_section().apply_map(&m)));
        prop_assert!(!validate_section(&nodal_nonsection().apply_map(&m)));
    }

    #[test]
    fn exchange_round_trips(dn in 1i64..20, dd in 1i64..7, ln in 1i64..20, ld in 1i64..7) {
        let d = BaseDiagram::local_model();
        let (delta, lambda) = (rq(dn, dd), rq(ln, ld));
        let pants = nodal_trade_exchange(&local_line(), &d, 0, delta).unwrap();
        prop_assert_eq!(nodal_trade_exchange_inverse(&pants, &d, 0, ri(1)).unwrap(), local_line());
        let straight = nodal_trade_exchange_inverse(&pants, &d, 0, lambda).unwrap();
        prop_assert_eq!(nodal_trade_exchange(&straight, &d, 0, delta).unwrap(), pants);
    }

    #[test]
    fn determinant_counts_matchings_on_fuzzed_dimers(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = loop {
            match common::try_fuzz_dimer(&mut rng) {
                Some(d) if !validate(&d).self_intersecting => break d,
                _ => {}
            }
        };
        prop_assert!(det_matches_matchings(&d).unwrap());
    }

    #[test]
    fn documents_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = loop {
            if let Some(d) = common::try_fuzz_dimer(&mut rng) { break d; }
        };
        let text = doc::serialize_dimer(&doc::dimer_document(&d));
        let back = doc::parse_dimer(&text).unwrap();
        prop_assert_eq!(&back.dimer, &d);
        prop_assert_eq!(doc::serialize_dimer(&back), text);
    }
}
