use std::collections::BTreeMap;

use tropdimer::catalog;
use tropdimer::dimer::build_graph;
use tropdimer::kasteleyn::{det_matches_matchings, enumerate_matchings, novikov_necessary_condition, partition_function, Gauge, NovikovWeights};
use tropdimer::lattice_geom::ri;

fn main() {
    for name in ["honeycomb", "pants-min", "cp2-seed", "p1p1-seed", "bl3-seed"] {
        let d = catalog::dimer(name).unwrap();
        let g = build_graph(&d).unwrap();
        let ms = enumerate_matchings(&g);
        let mut by_weight: BTreeMap<_, usize> = BTreeMap::new();
        for m in &ms {
            *by_weight.entry(m.boltzmann).or_default() += 1;
        }
        let z = partition_function(&d, Gauge::Trivial).unwrap();
        println!("{name}: {} matchings, |coeffs| sum {}, oracle {}", ms.len(), z.abs_coefficient_sum(), det_matches_matchings(&d).unwrap());
        for (w, k) in by_weight {
            println!("    {k} x z^{w}");
        }
    }

    let d = catalog::honeycomb();
    let n = build_graph(&d).unwrap().edges.len();
    let flat = NovikovWeights(vec![ri(1); n]);
    let steep = NovikovWeights((0..n).map(|i| ri(1 << i)).collect());
    println!("flat weights cancel: {}", novikov_necessary_condition(&d, &flat).unwrap());
    println!("steep weights cancel: {}", novikov_necessary_condition(&d, &steep).unwrap());
}
