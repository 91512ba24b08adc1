//! Mutating the honeycomb at a hexagon gives two overlapping triangles.

use tropdimer::catalog;
use tropdimer::dimer::{dimer_to_tropical_fan, faces};
use tropdimer::lattice_geom::rq;
use tropdimer::mutation::{exact_assignment, mutate_face, zigzag_classes, EdgeWeightAssignment};
use tropdimer::tropical::fan_equal;

fn main() {
    let d = catalog::honeycomb();
    let w = exact_assignment(&d).unwrap();
    let before = dimer_to_tropical_fan(&d).unwrap();

    for f in 0..faces(&d).unwrap().len() {
        let m = mutate_face(&d, f, &w).unwrap();
        println!("face {f}: removed polytopes {:?}, immersed {}", m.removed, m.immersed);
        for p in m.dimer.polytopes() {
            println!("  {:5} {:?}", p.color.name(), p.polygon.vertices());
        }
        let after = dimer_to_tropical_fan(&m.dimer).unwrap();
        println!("  same zigzags: {}", zigzag_classes(&m.dimer).unwrap() == zigzag_classes(&d).unwrap());
        println!("  same fan: {}", fan_equal(&before, &after).unwrap());
    }

    // a face whose boundary weight does not cancel cannot be mutated
    let mut bent = EdgeWeightAssignment(w.0.clone());
    bent.0[0] = rq(3, 2);
    match mutate_face(&d, 0, &bent) {
        Ok(_) => println!("unexpected success"),
        Err(e) => println!("perturbed weights: {e}"),
    }
}
