//! Build a dimer from straight zigzag line families and inspect it.

use tropdimer::dimer::{build_graph, faces, from_zigzag_lines, validate, zigzag_paths, ZigzagLine};
use tropdimer::lattice_geom::{rq, H1Class};

fn main() {
    // three families through the torus, like the lines dual to the CP2 fan
    let lines = [
        ZigzagLine::new(H1Class::new(1, 1), rq(0, 1)),
        ZigzagLine::new(H1Class::new(-2, 1), rq(1, 3)),
        ZigzagLine::new(H1Class::new(1, -2), rq(1, 4)),
    ];
    let d = from_zigzag_lines(&lines).expect("generic offsets");
    println!("denominator {}", d.denominator());
    for p in d.polytopes() {
        println!("  {:5} {:?}", p.color.name(), p.polygon.vertices());
    }
    println!("{}", validate(&d));

    let g = build_graph(&d).unwrap();
    let f = faces(&d).unwrap();
    println!("V={} E={} F={}", g.vertex_count(), g.edges.len(), f.len());
    for z in zigzag_paths(&d).unwrap() {
        println!("zigzag {} through {} polytopes", z.cls, z.segments.len());
    }
}
