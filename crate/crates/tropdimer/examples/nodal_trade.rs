//! Nodal trades on CP2 and the exchange from the outer torus to the inner one.

use tropdimer::almost_toric::{
    build_inner_torus, build_outer_torus, inner_torus_depth, nodal_trade, nodal_trade_exchange, BaseDiagram, CurveOnBase,
};
use tropdimer::catalog::DelPezzo;
use tropdimer::lattice_geom::rq;

fn describe(label: &str, c: &CurveOnBase) {
    let vs: Vec<String> = c.vertices.iter().map(|v| v.to_string()).collect();
    println!("{label}: vertices {} | {} edges, {} attached", vs.join(" "), c.edges.len(), c.attachment_count());
}

fn main() {
    let mut d = BaseDiagram::from_polygon(DelPezzo::CP2.polygon());
    for corner in 0..3 {
        d = nodal_trade(&d, corner).unwrap();
    }
    for (n, c) in d.nodes.iter().zip(&d.cuts) {
        println!("node at {} eigenray {} monodromy {:?}", n.position, n.eigenray, c.transition.matrix());
    }

    let outer = build_outer_torus(&d, rq(1, 6)).unwrap();
    describe("outer", &outer);
    let s = inner_torus_depth(&d).unwrap();
    let mut c = outer;
    for k in 0..d.nodes.len() {
        c = nodal_trade_exchange(&c, &d, k, s - d.node_depth(k).unwrap()).unwrap();
        describe(&format!("after node {k}"), &c);
    }
    println!("equals inner torus: {}", c == build_inner_torus(&d).unwrap());
}
