use std::path::PathBuf;
use std::process::{Command, Output};

fn tropdimer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tropdimer"))
        .args(args)
        .env("TROPDIMER_COLOR", "0")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("tropdimer-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn honeycomb_determinant_text_and_json() {
    let o = tropdimer(&["kasteleyn", "catalog:honeycomb"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "3 - z1 - z2 - z1^-1*z2^-1");
    let j: serde_json::Value = serde_json::from_slice(&tropdimer(&["kasteleyn", "catalog:honeycomb", "--json"]).stdout).unwrap();
    assert_eq!(j["determinant"].as_array().unwrap().len(), 4);
}

#[test]
fn exit_codes() {
    assert_eq!(tropdimer(&["validate", "catalog:honeycomb"]).status.code(), Some(0));
    assert_eq!(tropdimer(&["euler", "catalog:immersed-hexagon"]).status.code(), Some(1));
    assert_eq!(tropdimer(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(tropdimer(&["validate", "catalog:nope"]).status.code(), Some(2));
    assert_eq!(tropdimer(&["validate", "/definitely/not/here.json"]).status.code(), Some(2));
    assert_eq!(tropdimer(&["--help"]).status.code(), Some(0));
}

#[test]
fn three_entry_vertex_is_a_schema_error() {
    let p = scratch(
        "bad.json",
        r#"{"schema":"tropdimer/1","denominator":2,"polytopes":[{"color":"white","vertices":[[1,1,12],[0,1],[1,0]]}]}"#,
    );
    let o = tropdimer(&["validate", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}

#[test]
fn unknown_fields_and_schemas_are_rejected() {
    let p = scratch("schema.json", r#"{"schema":"tropdimer/2","denominator":2,"polytopes":[]}"#);
    assert_eq!(tropdimer(&["validate", p.to_str().unwrap()]).status.code(), Some(2));
    let q = scratch("extra.json", r#"{"schema":"tropdimer/1","denominator":2,"polytopes":[],"colour":1}"#);
    assert_eq!(tropdimer(&["validate", q.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn honeycomb_svg_layers() {
    let svg = stdout(&tropdimer(&["render", "catalog:honeycomb"]));
    assert_eq!(svg.matches("<polygon").count(), 6);
    assert!(!svg.contains(r#"class="zigzag""#));
    let zz = stdout(&tropdimer(&["render", "catalog:honeycomb", "--show", "zigzags"]));
    assert_eq!(zz.matches(r#"<g class="zigzag""#).count(), 3);
    let g = stdout(&tropdimer(&["render", "catalog:honeycomb", "--show", "graph"]));
    assert_eq!(g.matches("<line").count(), 18);
    assert_eq!(tropdimer(&["render", "catalog:honeycomb", "--show", "sparkles"]).status.code(), Some(2));
}

#[test]
fn rendering_is_deterministic() {
    for args in [&["render", "catalog:bl2-seed", "--show", "graph,zigzags"][..], &["render", "bl3", "--show", "outer,inner"]] {
        let a = tropdimer(args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, tropdimer(args).stdout);
    }
}

#[test]
fn out_flag_writes_the_artifact() {
    let p = scratch("placeholder", "");
    let target = p.with_file_name("honeycomb.json");
    let o = tropdimer(&["catalog", "honeycomb", "--out", target.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&target).unwrap();
    let shipped = std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../catalog/honeycomb.json")).unwrap();
    assert_eq!(text, shipped);
    assert_eq!(tropdimer(&["validate", target.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn diagram_commands() {
    let o = tropdimer(&["atf", "exchange", "cp2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("equals inner torus: yes"));
    let o = tropdimer(&["atf", "exchange", "local"]);
    assert!(stdout(&o).contains("inverse recovers line: yes"));
    assert_eq!(tropdimer(&["atf", "outer", "cp2", "--radius", "1/2"]).status.code(), Some(1));
    assert_eq!(tropdimer(&["atf", "outer", "cp2", "--radius", "half"]).status.code(), Some(2));
    let o = tropdimer(&["atf", "trade", "p1p1", "--json"]);
    let j: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(j["nodes"].as_array().unwrap().len(), 4);
}

#[test]
fn genus_and_compare_seed() {
    assert_eq!(stdout(&tropdimer(&["genus", "12"])).trim(), "55");
    for s in ["cp2", "p1p1", "bl1", "bl2", "bl3"] {
        assert_eq!(tropdimer(&["compare-seed", s]).status.code(), Some(0), "{s}");
    }
    assert_eq!(tropdimer(&["compare-seed", "bl4"]).status.code(), Some(2));
}

#[test]
fn color_only_when_asked() {
    let plain = tropdimer(&["validate", "catalog:honeycomb"]);
    assert!(!stdout(&plain).contains('\x1b'));
    let colored = Command::new(env!("CARGO_BIN_EXE_tropdimer"))
        .args(["validate", "catalog:honeycomb"])
        .env("TROPDIMER_COLOR", "1")
        .output()
        .unwrap();
    assert!(String::from_utf8(colored.stdout).unwrap().contains("\x1b[32m"));
}
