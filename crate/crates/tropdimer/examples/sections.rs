use tropdimer::almost_toric::{nodal_nonsection, two_chart_section, validate_section};
use tropdimer::lattice_geom::{UnimodularMap, Vec2};

fn main() {
    let good = two_chart_section();
    let bad = nodal_nonsection();
    println!("two charts: {}", validate_section(&good));
    println!("charts around a node: {}", validate_section(&bad));

    let m = UnimodularMap::new([[1, 1], [0, 1]], Vec2::frac(1, 2, 3)).unwrap();
    println!("after a shear: {} {}", validate_section(&good.apply_map(&m)), validate_section(&bad.apply_map(&m)));
}
