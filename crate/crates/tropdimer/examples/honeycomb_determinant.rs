//! Kasteleyn determinant of the honeycomb in several gauges.

use tropdimer::catalog;
use tropdimer::kasteleyn::{kasteleyn_matrix, partition_function, Gauge};

fn main() {
    let d = catalog::honeycomb();
    let k = kasteleyn_matrix(&d, Gauge::Paper).expect("honeycomb has signs");
    for row in &k.entries {
        let cells: Vec<String> = row.iter().map(|p| format!("{:>22}", p.to_string())).collect();
        println!("{}", cells.join(" "));
    }
    let z = partition_function(&d, Gauge::Paper).unwrap();
    println!("Z = {z}");

    for seed in [1, 2, 3] {
        let r = partition_function(&d, Gauge::Random(seed)).unwrap();
        println!("random:{seed}  {r}\n  normalized  {}", r.normalized());
    }
}
