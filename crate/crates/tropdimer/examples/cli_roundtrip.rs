//! Drives the command line in-process: print a catalog document, read it
//! back from a file, and ask for its fan as JSON.

use tropdimer::cli::run_with;

fn main() {
    let doc = run_with(["tropdimer", "catalog", "cp2-seed"], false);
    let path = std::env::temp_dir().join("cp2-seed.json");
    std::fs::write(&path, &doc.stdout).unwrap();
    let p = path.to_str().unwrap();

    for args in [vec!["tropdimer", "validate", p], vec!["tropdimer", "fan", p, "--json"], vec!["tropdimer", "euler", "catalog:immersed-hexagon"]] {
        let out = run_with(args.clone(), false);
        println!("$ {} -> exit {}", args[1..].join(" "), out.code);
        print!("{}{}", out.stdout, out.stderr);
    }
}
