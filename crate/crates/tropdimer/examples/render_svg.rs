//! Writes SVG pictures of a dimer and a traded diagram to the temp dir.

use tropdimer::almost_toric::{build_inner_torus, build_outer_torus, trade_all};
use tropdimer::catalog::{self, DelPezzo};
use tropdimer::cli::render::{render_diagram, render_dimer, Layers};
use tropdimer::lattice_geom::rq;

fn main() -> std::io::Result<()> {
    let dir = std::env::temp_dir();
    let layers = Layers::parse("graph,zigzags").unwrap();
    let dimer = render_dimer(&catalog::dimer("bl2-seed").unwrap(), layers);
    std::fs::write(dir.join("bl2-seed.svg"), &dimer)?;

    let d = trade_all(DelPezzo::Bl3.polygon()).unwrap();
    let outer = build_outer_torus(&d, rq(1, 6)).unwrap();
    let inner = build_inner_torus(&d).unwrap();
    let diagram = render_diagram(&d, &[("outer", &outer), ("inner", &inner)]);
    std::fs::write(dir.join("bl3-diagram.svg"), &diagram)?;

    println!("wrote {} and {} bytes under {}", dimer.len(), diagram.len(), dir.display());
    Ok(())
}
