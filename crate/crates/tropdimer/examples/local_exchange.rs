//! The single-node model: a line through the cut becomes a pants curve with
//! a leg ending on the node, and back.

use tropdimer::almost_toric::{an_chain_curve, local_line, nodal_trade_exchange, nodal_trade_exchange_inverse, BaseDiagram};
use tropdimer::lattice_geom::ri;

fn main() {
    let d = BaseDiagram::local_model();
    let line = local_line();
    let pants = nodal_trade_exchange(&line, &d, 0, ri(1)).unwrap();
    println!("line vertex {}  ->  pants vertex {}", line.vertices[0], pants.vertices[0]);
    for e in &pants.edges {
        println!("  leg {} x{} to {:?}", e.dir, e.mult, e.to);
    }
    let back = nodal_trade_exchange_inverse(&pants, &d, 0, ri(1)).unwrap();
    println!("round trip: {}", back == line);

    for n in 1..=4 {
        let (chain, c) = an_chain_curve(n).unwrap();
        println!("A_{n}: {} nodes, balanced {}", chain.nodes.len(), c.is_balanced(&chain));
    }
}
