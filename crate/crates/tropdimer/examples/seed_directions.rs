//! Mutation directions of the del Pezzo seed dimers against the corners of
//! their fans.

use tropdimer::catalog::DelPezzo;
use tropdimer::lattice_geom::intersection_number;
use tropdimer::mutation::{compare_up_to_unimodular, euler_characteristic, mutation_directions, seed_directions};

fn show(v: &[tropdimer::lattice_geom::H1Class]) -> String {
    v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}

fn main() {
    for s in DelPezzo::ALL {
        let d = s.seed_dimer();
        let seeds = seed_directions(s);
        let muts = mutation_directions(&d).unwrap();
        println!("{:5} chi={} seed [{}] dimer [{}]", s.name(), euler_characteristic(&d).unwrap(), show(&seeds), show(&muts));
        match compare_up_to_unimodular(&seeds, &muts).unwrap() {
            Some(m) => println!("      map {:?} + {}", m.matrix(), m.translation()),
            None => println!("      no unimodular map"),
        }
    }

    let cp2 = seed_directions(DelPezzo::CP2);
    for i in 0..cp2.len() {
        for j in i + 1..cp2.len() {
            println!("cp2 {} . {} = {}", cp2[i], cp2[j], intersection_number(cp2[i], cp2[j]));
        }
    }
}
