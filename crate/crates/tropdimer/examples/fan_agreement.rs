//! The six dual functions of the honeycomb polytopes all have the same
//! nonlinearity locus, and it matches the fan read off the zigzags.

use tropdimer::catalog;
use tropdimer::dimer::dimer_to_tropical_fan;
use tropdimer::tropical::{check_balancing, dual_function, fan_equal, fan_rays, nonlinearity_locus};

fn main() {
    let d = catalog::honeycomb();
    let fan = dimer_to_tropical_fan(&d).unwrap();
    for (i, p) in d.polytopes().iter().enumerate() {
        let locus = nonlinearity_locus(&dual_function(&p.polygon, p.color).unwrap());
        let rays: Vec<String> = fan_rays(&locus).unwrap().keys().map(|r| r.to_string()).collect();
        println!("polytope {i} ({}): rays {}", p.color.name(), rays.join(" "));
        assert!(fan_equal(&locus, &nonlinearity_locus(&dual_function(&d.polytopes()[0].polygon, d.polytopes()[0].color).unwrap())).unwrap());
    }
    for (ray, m) in fan_rays(&fan).unwrap() {
        println!("dimer ray {ray} multiplicity {m}");
    }
    println!("balanced: {}", check_balancing(&fan));
}
