mod common;

use tropdimer::dimer::{dimer_to_tropical_fan, faces, validate};
use tropdimer::mutation::{exact_assignment, mutate_face, zigzag_classes};
use tropdimer::tropical::{check_balancing, fan_equal, ray_directions};

// Mutation of embedded fuzzed dimers at every face. Zigzag classes, ray
// directions and balancing must survive; full multiplicity agreement is
// only counted, since black edge lengths are not preserved in general.
#[test]
fn fuzzed_mutations_keep_classes_and_rays() {
    let mut instances = 0;
    let mut same_fan = 0;
    for d in common::fuzz_dimers(0xd1ce, 60) {
        if validate(&d).self_intersecting {
            continue;
        }
        let w = exact_assignment(&d).unwrap();
        let before = dimer_to_tropical_fan(&d).unwrap();
        for f in 0..faces(&d).unwrap().len() {
            let m = mutate_face(&d, f, &w).unwrap();
            let after = dimer_to_tropical_fan(&m.dimer).unwrap();
            assert_eq!(zigzag_classes(&m.dimer).unwrap(), zigzag_classes(&d).unwrap());
            assert_eq!(ray_directions(&after).unwrap(), ray_directions(&before).unwrap());
            assert!(check_balancing(&after));
            instances += 1;
            if fan_equal(&before, &after).unwrap() {
                same_fan += 1;
            }
        }
    }
    assert!(instances >= 50, "only {instances} mutations");
    println!("{instances} mutations, {same_fan} with identical multiplicities");
}
