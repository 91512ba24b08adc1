//! One line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tropdimer::almost_toric::{
    build_inner_torus, build_outer_torus, local_line, nodal_nonsection, nodal_trade_exchange, nodal_trade_exchange_inverse,
    admissible, inner_torus_depth, trade_all, two_chart_section, validate_section, BaseDiagram,
};
use tropdimer::catalog::{self, DelPezzo, DIMER_NAMES};
use tropdimer::cli::{self, doc};
use tropdimer::dimer::{build_graph, dimer_to_tropical_fan, faces, validate, zigzag_paths};
use tropdimer::kasteleyn::{enumerate_matchings, partition_function, Gauge, LaurentPolynomial};
use tropdimer::lattice_geom::{ri, rq, H1Class, UnimodularMap, Vec2};
use tropdimer::mutation::{compare_up_to_unimodular, euler_characteristic, exact_assignment, mutate_face, mutation_directions, seed_directions};
use tropdimer::tropical::{
    check_balancing, dilated_triangle, dual_function, fan_equal, fan_rays, genus_of, nonlinearity_locus,
};

type Check = Result<(), String>;
type CheckFn = fn() -> Check;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn determinant() -> Check {
    let d = catalog::honeycomb();
    let z = partition_function(&d, Gauge::Paper).map_err(|e| e.to_string())?;
    let want = LaurentPolynomial::from_terms([
        (Vec2::zero(), ri(3)),
        (Vec2::int(1, 0), ri(-1)),
        (Vec2::int(0, 1), ri(-1)),
        (Vec2::int(-1, -1), ri(-1)),
    ]);
    ensure(z == want, || format!("paper gauge gives {z}"))?;
    for seed in 0..10 {
        let r = partition_function(&d, Gauge::Random(seed)).map_err(|e| e.to_string())?;
        ensure(r.normalized() == want, || format!("random gauge {seed} normalizes to {}", r.normalized()))?;
    }
    Ok(())
}

fn fan_agreement() -> Check {
    let d = catalog::honeycomb();
    let loci: Vec<_> = d
        .polytopes()
        .iter()
        .map(|p| dual_function(&p.polygon, p.color).map(|f| nonlinearity_locus(&f)))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    ensure(loci.len() == 6, || format!("{} dual functions", loci.len()))?;
    for a in &loci {
        for b in &loci {
            ensure(fan_equal(a, b).map_err(|e| e.to_string())?, || "dual function loci differ".into())?;
        }
    }
    let fan = dimer_to_tropical_fan(&d).map_err(|e| e.to_string())?;
    let rays = fan_rays(&fan).map_err(|e| e.to_string())?;
    let dirs: Vec<Vec2> = fan_rays(&loci[0]).map_err(|e| e.to_string())?.into_keys().collect();
    ensure(rays.keys().copied().collect::<Vec<_>>() == dirs, || format!("dimer rays {rays:?}"))?;
    ensure(rays.values().all(|&m| m == 3), || format!("multiplicities {rays:?}"))?;
    ensure(check_balancing(&fan), || "dimer fan unbalanced".into())
}

fn zigzag_sum() -> Check {
    let mut dimers: Vec<_> = DIMER_NAMES.iter().map(|n| catalog::dimer(n).unwrap()).collect();
    dimers.extend(common::fuzz_dimers(7, 100));
    for (i, d) in dimers.iter().enumerate() {
        let s = zigzag_paths(d).map_err(|e| e.to_string())?.iter().fold(H1Class::new(0, 0), |a, z| a + z.cls);
        ensure(s.is_zero(), || format!("dimer {i} has zigzag sum {s}"))?;
    }
    Ok(())
}

fn euler() -> Check {
    let mut ds: Vec<_> = DelPezzo::ALL.iter().map(|s| (s.name(), s.seed_dimer())).collect();
    ds.push(("honeycomb", catalog::honeycomb()));
    for (name, d) in ds {
        let chi = euler_characteristic(&d).map_err(|e| e.to_string())?;
        ensure(chi == 0, || format!("{name}: chi = {chi}"))?;
    }
    let g = build_graph(&catalog::honeycomb()).map_err(|e| e.to_string())?;
    let f = faces(&catalog::honeycomb()).map_err(|e| e.to_string())?.len();
    ensure((g.vertex_count(), g.edges.len(), f) == (6, 9, 3), || "honeycomb is not 6-9+3".into())
}

fn mutation() -> Check {
    let d = catalog::honeycomb();
    let w = exact_assignment(&d).map_err(|e| e.to_string())?;
    let fan = dimer_to_tropical_fan(&d).map_err(|e| e.to_string())?;
    let hexagon = catalog::immersed_hexagon().with_denominator(6).map_err(|e| e.to_string())?.canonical();
    for f in 0..3 {
        let m = mutate_face(&d, f, &w).map_err(|e| e.to_string())?;
        ensure(m.immersed, || format!("face {f}: result embedded"))?;
        ensure(m.dimer.polytopes().len() == 2 && m.dimer.polytopes().iter().all(|p| p.polygon.len() == 3), || {
            format!("face {f}: not two triangles")
        })?;
        // the three results differ by translations off the half grid
        let anchor = |x: &tropdimer::dimer::DualDimer| x.polytopes()[0].polygon.vertices()[0];
        let t = UnimodularMap::new([[1, 0], [0, 1]], anchor(&hexagon) - anchor(&m.dimer)).map_err(|e| e.to_string())?;
        let moved = m.dimer.apply_map(&t).canonical();
        ensure(moved == hexagon, || format!("face {f}: hull vertices {:?}", m.dimer.polytopes()))?;
        let after = dimer_to_tropical_fan(&m.dimer).map_err(|e| e.to_string())?;
        ensure(fan_equal(&fan, &after).map_err(|e| e.to_string())?, || format!("face {f}: fan changed"))?;
    }
    Ok(())
}

fn matchings() -> Check {
    for name in DIMER_NAMES {
        let d = catalog::dimer(name).unwrap();
        if validate(&d).self_intersecting {
            continue;
        }
        let g = build_graph(&d).map_err(|e| e.to_string())?;
        let z = partition_function(&d, Gauge::Trivial).map_err(|e| e.to_string())?;
        let ms = enumerate_matchings(&g);
        ensure(z.abs_coefficient_sum() == ri(ms.len() as i64), || format!("{name}: {} matchings, det {z}", ms.len()))?;
        let mut terms: Vec<(Vec2, i64)> = Vec::new();
        for (e, c) in z.terms() {
            let k = c.abs().to_integer() as usize;
            terms.extend(std::iter::repeat_n((*e, 1), k));
        }
        let mut bolt: Vec<(Vec2, i64)> = ms.iter().map(|m| (m.boltzmann, 1)).collect();
        bolt.sort();
        ensure(terms == bolt, || format!("{name}: monomial multisets differ"))?;
        if name == "honeycomb" {
            ensure(ms.len() == 6, || format!("honeycomb has {} matchings", ms.len()))?;
        }
    }
    Ok(())
}

fn directions() -> Check {
    for s in DelPezzo::ALL {
        let md = mutation_directions(&s.seed_dimer()).map_err(|e| e.to_string())?;
        let found = compare_up_to_unimodular(&seed_directions(s), &md).map_err(|e| e.to_string())?;
        ensure(found.is_some(), || format!("{}: no map", s.name()))?;
    }
    Ok(())
}

fn genus() -> Check {
    for d in 1..=12i64 {
        let g = genus_of(&dilated_triangle(d)).map_err(|e| e.to_string())?;
        ensure(g as i64 == (d - 1) * (d - 2) / 2, || format!("degree {d}: genus {g}"))?;
    }
    Ok(())
}

fn exchange() -> Check {
    let d = BaseDiagram::local_model();
    let line = local_line();
    let pants = nodal_trade_exchange(&line, &d, 0, ri(1)).map_err(|e| e.to_string())?;
    ensure(pants.vertices == vec![Vec2::int(1, 1)] && pants.attachment_count() == 1, || format!("{pants:?}"))?;
    ensure(pants.is_balanced(&d) && admissible(&pants, &d), || "pants not balanced".into())?;
    ensure(check_balancing(&pants.to_tropical_curve()), || "pants curve unbalanced".into())?;
    let back = nodal_trade_exchange_inverse(&pants, &d, 0, ri(1)).map_err(|e| e.to_string())?;
    ensure(back == line, || "inverse does not recover the line".into())?;

    let cp2 = trade_all(DelPezzo::CP2.polygon()).map_err(|e| e.to_string())?;
    let s = inner_torus_depth(&cp2).map_err(|e| e.to_string())?;
    let mut c = build_outer_torus(&cp2, rq(1, 6)).map_err(|e| e.to_string())?;
    for k in 0..cp2.nodes.len() {
        let t = cp2.node_depth(k).ok_or("node without depth")?;
        c = nodal_trade_exchange(&c, &cp2, k, s - t).map_err(|e| e.to_string())?;
    }
    ensure(c == build_inner_torus(&cp2).map_err(|e| e.to_string())?, || "outer torus did not become inner".into())
}

fn sections() -> Check {
    ensure(validate_section(&two_chart_section()), || "two-chart example rejected".into())?;
    ensure(!validate_section(&nodal_nonsection()), || "nonexample accepted".into())
}

fn scratch_dir() -> PathBuf {
    let p = std::env::temp_dir().join(format!("tropdimer-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&p).unwrap();
    p
}

fn run_cli(args: &[&str]) -> Result<cli::Outcome, String> {
    let mut full = vec!["tropdimer"];
    full.extend_from_slice(args);
    catch_unwind(AssertUnwindSafe(|| cli::run_with(full.clone(), false))).map_err(|_| format!("panic on {args:?}"))
}

fn cli_robustness() -> Check {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../catalog");
    let shipped = cli::catalog_documents();
    for (stem, text) in &shipped {
        let on_disk = std::fs::read_to_string(dir.join(format!("{stem}.json"))).map_err(|e| format!("{stem}: {e}"))?;
        ensure(&on_disk == text, || format!("{stem}.json differs from the built-in catalog"))?;
        let again = if DIMER_NAMES.contains(&stem.as_str()) {
            doc::serialize_dimer(&doc::parse_dimer(&on_disk).map_err(|e| e.to_string())?)
        } else {
            doc::serialize_diagram(&doc::parse_diagram(&on_disk).map_err(|e| e.to_string())?)
        };
        ensure(again + "\n" == on_disk, || format!("{stem}.json does not round-trip"))?;
    }

    let tmp = scratch_dir();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let seeds: Vec<&String> = shipped.values().collect();
    let cmds = ["validate", "kasteleyn", "zigzags", "fan", "euler", "mutate", "render", "directions"];
    for i in 0..1000 {
        let bytes: Vec<u8> = if i % 2 == 0 {
            (0..rng.gen_range(0..200)).map(|_| rng.gen()).collect()
        } else {
            let mut b = seeds[rng.gen_range(0..seeds.len())].clone().into_bytes();
            for _ in 0..rng.gen_range(1..6) {
                let at = rng.gen_range(0..b.len());
                b[at] = b"0123456789-/,[]{}\": abz"[rng.gen_range(0..23)];
            }
            b
        };
        let path = tmp.join("fuzz.json");
        std::fs::write(&path, &bytes).unwrap();
        let p = path.to_str().unwrap();
        let cmd = cmds[i % cmds.len()];
        let out = run_cli(&[cmd, p])?;
        ensure(out.code <= 2, || format!("exit code {} for {cmd}", out.code))?;
        let junk: String = (0..rng.gen_range(1..12)).map(|_| rng.gen_range(b' '..b'~') as char).collect();
        run_cli(&[cmd, &junk])?;
        run_cli(&[&junk])?;
    }
    let _ = std::fs::remove_dir_all(&tmp);

    for args in [["render", "catalog:honeycomb", "--show", "graph,zigzags"], ["render", "cp2", "--show", "outer,inner"]] {
        let a = run_cli(&args)?;
        let b = run_cli(&args)?;
        ensure(a.code == 0 && a.stdout == b.stdout && a.stdout.starts_with("<svg"), || format!("{args:?} not deterministic"))?;
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, CheckFn); 11] = [
        ("kasteleyn determinant", determinant),
        ("fan agreement", fan_agreement),
        ("zigzag balancing", zigzag_sum),
        ("euler characteristic", euler),
        ("honeycomb mutation", mutation),
        ("matching oracle", matchings),
        ("mutation directions", directions),
        ("genus formula", genus),
        ("nodal trade exchange", exchange),
        ("section validation", sections),
        ("cli robustness", cli_robustness),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let res = catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        match res {
            Ok(()) => println!("criterion {:>2} {name}: PASS", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({e})", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
