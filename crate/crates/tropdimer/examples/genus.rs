use tropdimer::tropical::{dilated_triangle, genus_degree, genus_of};

fn main() {
    for d in 1..=12 {
        let g = genus_of(&dilated_triangle(d)).unwrap();
        assert_eq!(g, genus_degree(d as u64).unwrap());
        println!("degree {d:>2}: genus {g}");
    }
}
