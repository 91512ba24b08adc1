//! Command-line front end. [`run`] never exits the process; it returns the
//! exit code and both output streams.

pub mod doc;
pub mod render;

use std::collections::BTreeMap;
use std::fmt::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::almost_toric::{self, BaseDiagram, CurveOnBase};
use crate::catalog::{self, DelPezzo};
use crate::dimer::{build_graph, dimer_to_tropical_fan, edge_ids, validate, zigzag_paths, DualDimer};
use crate::kasteleyn::{enumerate_matchings, kasteleyn_matrix, partition_function, determinant, Gauge, LaurentPolynomial};
use crate::lattice_geom::{ri, H1Class, Rat};
use crate::mutation::{self, EdgeWeightAssignment};
use crate::tropical::{check_balancing, fan_rays, genus_of, dilated_triangle};
use doc::{DiagramDocument, DimerDocument, DocError};
use render::Layers;

/// Largest bipartite class handled by determinant and matching commands.
const MAX_SIDE: usize = 16;

#[derive(Parser, Debug)]
#[command(name = "tropdimer", version, about = "Dual dimers, tropical fans, Kasteleyn determinants and almost-toric diagrams")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the primary artifact to this path.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Extra layers: graph, zigzags (dimers); outer, inner (diagrams); matrix (kasteleyn).
    #[arg(long, global = true)]
    show: Option<String>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Check the dimer axioms and report self-intersections.
    Validate { input: String },
    /// List the bipartite graph.
    Graph { input: String },
    /// List zigzag paths and their classes.
    Zigzags { input: String },
    /// Print the tropical fan of the dimer.
    Fan { input: String },
    /// Print the Kasteleyn determinant.
    Kasteleyn {
        input: String,
        /// paper, trivial or random:<seed>
        #[arg(long, default_value = "paper")]
        gauge: String,
    },
    /// Enumerate perfect matchings.
    Matchings { input: String },
    /// Mutate at a face.
    Mutate {
        input: String,
        #[arg(long, default_value_t = 0)]
        face: usize,
    },
    /// Euler characteristic V - E + F.
    Euler { input: String },
    /// Classes of the face boundaries.
    Directions { input: String },
    /// Compare seed and dimer mutation directions of a del Pezzo surface.
    CompareSeed { surface: String },
    /// Almost-toric diagram operations.
    Atf {
        #[command(subcommand)]
        op: AtfCmd,
    },
    /// Genus of a smooth curve of the given degree.
    Genus { degree: u64 },
    /// Draw a dimer or diagram as SVG.
    Render { input: String },
    /// List catalog entries or print one.
    Catalog { name: Option<String> },
}

#[derive(Subcommand, Debug)]
enum AtfCmd {
    /// Trade one corner, or all of them.
    Trade {
        source: String,
        #[arg(long)]
        corner: Option<usize>,
    },
    /// The torus through the nodes.
    Inner { source: String },
    /// The torus near the boundary.
    Outer {
        source: String,
        #[arg(long, default_value = "1/6")]
        radius: String,
    },
    /// Exchange the outer torus into the inner one, or the local line into
    /// a pants curve when the source is `local`.
    Exchange {
        source: String,
        #[arg(long, default_value = "1/6")]
        radius: String,
    },
    /// Curve meeting a chain of `n` nodes on one eigenline.
    An { n: u64 },
}

/// Exit code with captured output.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Fail {
    Usage(String),
    Domain(String),
}

impl From<DocError> for Fail {
    fn from(e: DocError) -> Self {
        Fail::Usage(e.to_string())
    }
}

fn domain(e: impl std::fmt::Display) -> Fail {
    Fail::Domain(e.to_string())
}

struct Ctx {
    json: bool,
    out: Option<PathBuf>,
    show: Option<String>,
    color: bool,
    stdout: String,
}

impl Ctx {
    fn paint(&self, s: &str, code: &str) -> String {
        if self.color {
            format!("\x1b[{code}m{s}\x1b[0m")
        } else {
            s.to_string()
        }
    }

    fn emit_json(&mut self, v: Value) {
        self.stdout.push_str(&v.to_string());
        self.stdout.push('\n');
    }

    /// Writes `artifact` to `--out`, or to stdout when no path was given.
    fn artifact(&mut self, artifact: &str) -> Result<(), Fail> {
        match &self.out {
            Some(p) => std::fs::write(p, artifact).map_err(|e| Fail::Usage(format!("cannot write {}: {e}", p.display()))),
            None => {
                self.stdout.push_str(artifact);
                Ok(())
            }
        }
    }
}

/// Runs with `TROPDIMER_COLOR` deciding ANSI output.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let color = std::env::var("TROPDIMER_COLOR").map(|v| v == "1").unwrap_or(false);
    run_with(args, color)
}

pub fn run_with<I, S>(args: I, color: bool) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let mut ctx = Ctx { json: cli.json, out: cli.out, show: cli.show, color, stdout: String::new() };
    let res = dispatch(cli.cmd, &mut ctx);
    let (code, stderr) = match res {
        Ok(c) => (c, String::new()),
        Err(Fail::Usage(m)) => (2, format!("error: {m}\n")),
        Err(Fail::Domain(m)) => (1, format!("error: {m}\n")),
    };
    Outcome { code, stdout: ctx.stdout, stderr }
}

fn read_source(input: &str) -> Result<String, Fail> {
    let bytes = std::fs::read(input).map_err(|e| Fail::Usage(format!("cannot read {input}: {e}")))?;
    String::from_utf8(bytes).map_err(|_| Fail::Usage(format!("{input} is not UTF-8")))
}

/// Loads `catalog:<name>` or a dimer document path, without checking axioms.
fn load_dimer_doc(input: &str) -> Result<DimerDocument, Fail> {
    if let Some(name) = input.strip_prefix("catalog:") {
        let d = catalog::dimer(name).map_err(|e| Fail::Usage(e.to_string()))?;
        return Ok(doc::dimer_document(&d));
    }
    Ok(doc::parse_dimer(&read_source(input)?)?)
}

/// Loads a dimer and insists on the axioms, reporting them on failure.
fn load_valid(input: &str) -> Result<DimerDocument, Fail> {
    let d = load_dimer_doc(input)?;
    let r = validate(&d.dimer);
    if !r.axioms_pass() {
        return Err(Fail::Domain(format!("not a dimer\n{r}")));
    }
    Ok(d)
}

fn class_json(c: H1Class) -> Value {
    json!([c.a, c.b])
}

fn laurent_json(p: &LaurentPolynomial) -> Value {
    Value::Array(p.terms().iter().map(|(e, c)| json!([doc::exponent_json(*e), *c.numer() as i64, *c.denom() as i64])).collect())
}

fn dispatch(cmd: Cmd, ctx: &mut Ctx) -> Result<i32, Fail> {
    match cmd {
        Cmd::Validate { input } => cmd_validate(&input, ctx),
        Cmd::Graph { input } => cmd_graph(&input, ctx),
        Cmd::Zigzags { input } => cmd_zigzags(&input, ctx),
        Cmd::Fan { input } => cmd_fan(&input, ctx),
        Cmd::Kasteleyn { input, gauge } => cmd_kasteleyn(&input, &gauge, ctx),
        Cmd::Matchings { input } => cmd_matchings(&input, ctx),
        Cmd::Mutate { input, face } => cmd_mutate(&input, face, ctx),
        Cmd::Euler { input } => cmd_euler(&input, ctx),
        Cmd::Directions { input } => cmd_directions(&input, ctx),
        Cmd::CompareSeed { surface } => cmd_compare_seed(&surface, ctx),
        Cmd::Atf { op } => cmd_atf(op, ctx),
        Cmd::Genus { degree } => cmd_genus(degree, ctx),
        Cmd::Render { input } => cmd_render(&input, ctx),
        Cmd::Catalog { name } => cmd_catalog(name.as_deref(), ctx),
    }
}

fn cmd_validate(input: &str, ctx: &mut Ctx) -> Result<i32, Fail> {
    let d = load_dimer_doc(input)?;
    let r = validate(&d.dimer);
    let code = if r.axioms_pass() { 0 } else { 1 };
    if ctx.json {
        let pts = |v: &[crate::lattice_geom::TorusPoint]| v.iter().map(|p| p.to_string()).collect::<Vec<_>>();
        ctx.emit_json(json!({
            "valid": r.axioms_pass(),
            "repeated": pts(&r.repeated),
            "unmatched": pts(&r.unmatched),
            "not_opposite": pts(&r.not_opposite),
            "self_intersecting": r.self_intersecting,
        }));
    } else {
        for l in r.to_string().lines() {
            let l = l.replace(": pass", &format!(": {}", ctx.paint("pass", "32"))).replace(": FAIL", &format!(": {}", ctx.paint("FAIL", "31")));
            let _ = writeln!(ctx.stdout, "{l}");
        }
    }
    Ok(code)
}

fn cmd_graph(input: &str, ctx: &mut Ctx) -> Result<i32, Fail> {
    let d = load_valid(input)?.dimer;
    let g = build_graph(&d).map_err(domain)?;
    let ids = edge_ids(&d, &g);
    let nw = d.count(crate::tropical::Color::White);
    let nb = d.count(crate::tropical::Color::Black);
    if ctx.json {
        let edges: Vec<Value> = g
            .edges
            .iter()
            .zip(&ids)
            .map(|(e, id)| json!({"id": id, "displacement": doc::exponent_json(e.displacement)}))
            .collect();
        ctx.emit_json(json!({"white": nw, "black": nb, "edges": edges}));
    } else {
        let _ = writeln!(ctx.stdout, "vertices: {nw} white, {nb} black\nedges: {}", g.edges.len());
        for (e, id) in g.edges.iter().zip(&ids) {
            let _ = writeln!(ctx.stdout, "  {id}  {}", LaurentPolynomial::monomial(e.displacement, ri(1)));
        }
    }
    Ok(0)
}

fn cmd_zigzags(input: &str, ctx: &mut Ctx) -> Result<i32, Fail> {
    let d = load_valid(input)?.dimer;
    let zz = zigzag_paths(&d).map_err(domain)?;
    let total = zz.iter().fold(H1Class::new(0, 0), |a, z| a + z.cls);
    if ctx.json {
        let list: Vec<Value> = zz.iter().map(|z| json!({"class": class_json(z.cls), "length": z.edges.len()})).collect();
        ctx.emit_json(json!({"zigzags": list, "sum": class_json(total)}));
    } else {
        for z in &zz {
            let _ = writeln!(ctx.stdout, "{}  length {}", z.cls, z.edges.len());
        }
        let _ = writeln!(ctx.stdout, "sum: {total}");
    }
    Ok(0)
}

fn cmd_fan(input: &str, ctx: &mut Ctx) -> Result<i32, Fail> {
    let d = load_valid(input)?.dimer;
    let fan = dimer_to_tropical_fan(&d).map_err(domain)?;
    let rays = fan_rays(&fan).map_err(domain)?;
    let balanced = check_balancing(&fan);
    if ctx.json {
        let list: Vec<Value> = rays.iter().map(|(r, m)| json!({"ray": [r.x.to_integer() as i64, r.y.to_integer() as i64], "multiplicity": m})).collect();
        ctx.emit_json(json!({"rays": list, "balanced": balanced}));
    } else {
        for (r, m) in &rays {
            let _ = writeln!(ctx.stdout, "ray {r} x{m}");
        }
        let _ = writeln!(ctx.stdout, "balanced: {}", if balanced { "yes" } else { "no" });
    }
    Ok(0)
}

fn check_size(d: &DualDimer) -> Result<(), Fail> {
    let w = d.count(crate::tropical::Color::White);
    let b = d.count(crate::tropical::Color::Black);
    if w.max(b) > MAX_SIDE {
        return Err(Fail::Domain(format!("dimer too large for exact expansion ({w} white, {b} black; limit {MAX_SIDE})")));
    }
    Ok(())
}

fn cmd_kasteleyn(input: &str, gauge: &str, ctx: &mut Ctx) -> Result<i32, Fail> {
    let gauge: Gauge = gauge.parse().map_err(|e: crate::kasteleyn::KasteleynError| Fail::Usage(e.to_string()))?;
    let d = load_valid(input)?.dimer;
    check_size(&d)?;
    let m = kasteleyn_matrix(&d, gauge).map_err(domain)?;
    let det = determinant(&m);
    let show_matrix = ctx.show.as_deref().is_some_and(|s| s.split(',').any(|x| x == "matrix"));
    if ctx.json {
        let mut v = json!({"determinant": laurent_json(&det), "square": m.is_square()});
        if show_matrix {
            v["matrix"] = Value::Array(m.entries.iter().map(|r| Value::Array(r.iter().map(laurent_json).collect())).collect());
        }
        ctx.emit_json(v);
    } else {
        if show_matrix {
            for r in &m.entries {
                let cells: Vec<String> = r.iter().map(|p| p.to_string()).collect();
                let _ = writeln!(ctx.stdout, "[ {} ]", cells.join(" | "));
            }
        }
        if !m.is_square() {
            let _ = writeln!(ctx.stdout, "non-square matrix ({} x {}): determinant 0", m.rows.len(), m.cols.len());
        } else {
            let _ = writeln!(ctx.stdout, "{det}");
        }
    }
    Ok(0)
}

fn cmd_matchings(input: &str, ctx: &mut Ctx) -> Result<i32, Fail> {
    let d = load_valid(input)?.dimer;
    check_size(&d)?;
    let g = build_graph(&d).map_err(domain)?;
    let ids = edge_ids(&d, &g);
    let ms = enumerate_matchings(&g);
    let det = partition_function(&d, Gauge::Trivial).map_err(domain)?;
    let agree = crate::kasteleyn::det_matches_matchings(&d).map_err(domain)?;
    if ctx.json {
        let list: Vec<Value> = ms
            .iter()
            .map(|m| json!({"edges": m.edges.iter().map(|&e| ids[e].clone()).collect::<Vec<_>>(), "weight": doc::exponent_json(m.boltzmann)}))
            .collect();
        ctx.emit_json(json!({"count": ms.len(), "matchings": list, "determinant_agrees": agree}));
    } else {
        let _ = writeln!(ctx.stdout, "count: {}", ms.len());
        for m in &ms {
            let es: Vec<&str> = m.edges.iter().map(|&e| ids[e].as_str()).collect();
            let _ = writeln!(ctx.stdout, "  {}  {}", es.join(" "), LaurentPolynomial::monomial(m.boltzmann, ri(1)));
        }
        let _ = writeln!(ctx.stdout, "sum of |coefficients| of det: {}", det.abs_coefficient_sum());
        let _ = writeln!(ctx.stdout, "determinant agrees: {}", if agree { "yes" } else { "no" });
    }
    Ok(if agree { 0 } else { 1 })
}

fn weights_for(docu: &DimerDocument) -> Result<EdgeWeightAssignment, Fail> {
    let g = build_graph(&docu.dimer).map_err(domain)?;
    let ids = edge_ids(&docu.dimer, &g);
    let mut w = vec![ri(1); ids.len()];
    for (k, v) in &docu.weights {
        let i = ids.iter().position(|x| x == k).ok_or_else(|| Fail::Domain(format!("weight for unknown edge {k}")))?;
        if *v < Rat::from_integer(0) {
            return Err(Fail::Domain(format!("weight for {k} is negative")));
        }
        w[i] = *v;
    }
    Ok(EdgeWeightAssignment(w))
}

fn cmd_mutate(input: &str, face: usize, ctx: &mut Ctx) -> Result<i32, Fail> {
    let docu = load_valid(input)?;
    let w = weights_for(&docu)?;
    let r = mutation::mutate_face(&docu.dimer, face, &w).map_err(domain)?;
    let text = doc::serialize_dimer(&doc::dimer_document(&r.dimer)) + "\n";
    if ctx.json {
        let v: Value = serde_json::from_str(&text).expect("own output");
        ctx.emit_json(json!({"immersed": r.immersed, "removed": r.removed, "dimer": v}));
        if let Some(p) = &ctx.out {
            std::fs::write(p, &text).map_err(|e| Fail::Usage(format!("cannot write {}: {e}", p.display())))?;
        }
    } else {
        let _ = writeln!(ctx.stdout, "face {face}: {} polytopes replaced by 2", r.removed.len());
        let _ = writeln!(ctx.stdout, "immersed: {}", r.immersed);
        ctx.artifact(&text)?;
    }
    Ok(0)
}

fn cmd_euler(input: &str, ctx: &mut Ctx) -> Result<i32, Fail> {
    let d = load_valid(input)?.dimer;
    let chi = mutation::euler_characteristic(&d).map_err(domain)?;
    let g = build_graph(&d).map_err(domain)?;
    let f = (chi - g.vertex_count() as i64 + g.edges.len() as i64) as usize;
    if ctx.json {
        ctx.emit_json(json!({"V": g.vertex_count(), "E": g.edges.len(), "F": f, "chi": chi}));
    } else {
        let _ = writeln!(ctx.stdout, "V - E + F = {} - {} + {} = {chi}", g.vertex_count(), g.edges.len(), f);
    }
    Ok(0)
}

fn cmd_directions(input: &str, ctx: &mut Ctx) -> Result<i32, Fail> {
    let d = load_valid(input)?.dimer;
    let dirs = mutation::mutation_directions(&d).map_err(domain)?;
    if ctx.json {
        ctx.emit_json(json!({"directions": dirs.iter().map(|c| class_json(*c)).collect::<Vec<_>>()}));
    } else {
        for c in &dirs {
            let _ = writeln!(ctx.stdout, "{c}");
        }
    }
    Ok(0)
}

fn surface(name: &str) -> Result<DelPezzo, Fail> {
    let n = name.strip_prefix("catalog:").unwrap_or(name);
    let n = n.strip_suffix("-seed").unwrap_or(n);
    DelPezzo::from_name(n).ok_or_else(|| Fail::Usage(format!("unknown surface `{name}` (expected cp2, p1p1, bl1, bl2, bl3)")))
}

fn cmd_compare_seed(name: &str, ctx: &mut Ctx) -> Result<i32, Fail> {
    let s = surface(name)?;
    let seed = mutation::seed_directions(s);
    let dirs = mutation::mutation_directions(&s.seed_dimer()).map_err(domain)?;
    let m = mutation::compare_up_to_unimodular(&dirs, &seed).map_err(domain)?;
    if ctx.json {
        ctx.emit_json(json!({
            "seed": seed.iter().map(|c| class_json(*c)).collect::<Vec<_>>(),
            "dimer": dirs.iter().map(|c| class_json(*c)).collect::<Vec<_>>(),
            "map": m.map(|m| json!(m.matrix())),
        }));
    } else {
        let show = |v: &[H1Class]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ");
        let _ = writeln!(ctx.stdout, "seed:  {}", show(&seed));
        let _ = writeln!(ctx.stdout, "dimer: {}", show(&dirs));
        match m {
            Some(m) => {
                let _ = writeln!(ctx.stdout, "map: {:?}", m.matrix());
            }
            None => {
                let _ = writeln!(ctx.stdout, "map: none");
            }
        }
    }
    Ok(if m.is_some() { 0 } else { 1 })
}

/// A del Pezzo name (untraded unless `traded`), `catalog:<name>` (traded)
/// or a diagram document path.
fn load_diagram(source: &str, traded: bool) -> Result<DiagramDocument, Fail> {
    if let Some(name) = source.strip_prefix("catalog:") {
        let s = surface(name)?;
        return Ok(DiagramDocument { diagram: almost_toric::trade_all(s.polygon()).map_err(domain)?, curve: None });
    }
    if let Some(s) = DelPezzo::from_name(source) {
        let diagram = if traded { almost_toric::trade_all(s.polygon()).map_err(domain)? } else { BaseDiagram::from_polygon(s.polygon()) };
        return Ok(DiagramDocument { diagram, curve: None });
    }
    Ok(doc::parse_diagram(&read_source(source)?)?)
}

fn parse_rat(s: &str) -> Result<Rat, Fail> {
    let bad = || Fail::Usage(format!("cannot parse `{s}` as a rational"));
    let (a, b) = s.split_once('/').unwrap_or((s, "1"));
    let a: i64 = a.trim().parse().map_err(|_| bad())?;
    let b: i64 = b.trim().parse().map_err(|_| bad())?;
    if b == 0 || a.abs() > 1_000_000 || b.abs() > 1_000_000 {
        return Err(bad());
    }
    Ok(Rat::new(a as i128, b as i128))
}

fn curve_summary(c: &CurveOnBase, d: &BaseDiagram) -> String {
    format!(
        "vertices: {}\nedges: {}\nattachments: {}\nbalanced: {}\nadmissible: {}\n",
        c.vertices.len(),
        c.edges.len(),
        c.attachments.len(),
        if c.is_balanced(d) { "yes" } else { "no" },
        if almost_toric::admissible(c, d) { "yes" } else { "no" }
    )
}

fn emit_diagram(ctx: &mut Ctx, d: &BaseDiagram, curve: Option<&CurveOnBase>, summary: String) -> Result<(), Fail> {
    let text = doc::serialize_diagram(&DiagramDocument { diagram: d.clone(), curve: curve.cloned() }) + "\n";
    if ctx.json {
        ctx.stdout.push_str(&text);
        if let Some(p) = &ctx.out {
            std::fs::write(p, &text).map_err(|e| Fail::Usage(format!("cannot write {}: {e}", p.display())))?;
        }
        return Ok(());
    }
    ctx.stdout.push_str(&summary);
    if ctx.out.is_some() {
        ctx.artifact(&text)?;
    }
    Ok(())
}

fn cmd_atf(op: AtfCmd, ctx: &mut Ctx) -> Result<i32, Fail> {
    match op {
        AtfCmd::Trade { source, corner } => {
            let mut d = load_diagram(&source, false)?.diagram;
            match corner {
                Some(c) => d = almost_toric::nodal_trade(&d, c).map_err(domain)?,
                None => {
                    let n = d.boundary.as_ref().map_or(0, |b| b.len());
                    for c in 0..n {
                        if !d.traded().contains(&c) {
                            d = almost_toric::nodal_trade(&d, c).map_err(domain)?;
                        }
                    }
                }
            }
            let mut s = format!("nodes: {}\n", d.nodes.len());
            for n in &d.nodes {
                let _ = writeln!(s, "  node at {} eigenray {} x{}", n.position, n.eigenray, n.multiplicity);
            }
            emit_diagram(ctx, &d, None, s)?;
        }
        AtfCmd::Inner { source } => {
            let d = load_diagram(&source, true)?.diagram;
            let c = almost_toric::build_inner_torus(&d).map_err(domain)?;
            emit_diagram(ctx, &d, Some(&c), curve_summary(&c, &d))?;
        }
        AtfCmd::Outer { source, radius } => {
            let r = parse_rat(&radius)?;
            let d = load_diagram(&source, true)?.diagram;
            let c = almost_toric::build_outer_torus(&d, r).map_err(domain)?;
            emit_diagram(ctx, &d, Some(&c), curve_summary(&c, &d))?;
        }
        AtfCmd::Exchange { source, radius } => {
            if source == "local" {
                let d = BaseDiagram::local_model();
                let line = almost_toric::local_line();
                let pants = almost_toric::nodal_trade_exchange(&line, &d, 0, ri(1)).map_err(domain)?;
                let back = almost_toric::nodal_trade_exchange_inverse(&pants, &d, 0, ri(1)).map_err(domain)?;
                let s = format!("{}inverse recovers line: {}\n", curve_summary(&pants, &d), if back == line { "yes" } else { "no" });
                emit_diagram(ctx, &d, Some(&pants), s)?;
                return Ok(if back == line { 0 } else { 1 });
            }
            let r = parse_rat(&radius)?;
            let d = load_diagram(&source, true)?.diagram;
            let mut c = almost_toric::build_outer_torus(&d, r).map_err(domain)?;
            let s_depth = almost_toric::inner_torus_depth(&d).map_err(domain)?;
            for k in 0..d.nodes.len() {
                let node = &d.nodes[k];
                let corner = node.corner.ok_or_else(|| Fail::Domain(format!("node {k} is not a traded corner")))?;
                let p = d.boundary.as_ref().expect("traded diagram").vertices()[corner];
                let off = node.position - p;
                let t = if node.eigenray.x == ri(0) { off.y / node.eigenray.y } else { off.x / node.eigenray.x };
                c = almost_toric::nodal_trade_exchange(&c, &d, k, s_depth - t).map_err(domain)?;
            }
            let inner = almost_toric::build_inner_torus(&d).map_err(domain)?;
            let same = c == inner;
            let s = format!("{}equals inner torus: {}\n", curve_summary(&c, &d), if same { "yes" } else { "no" });
            emit_diagram(ctx, &d, Some(&c), s)?;
            return Ok(if same { 0 } else { 1 });
        }
        AtfCmd::An { n } => {
            if n > 32 {
                return Err(Fail::Usage("chain length is limited to 32".into()));
            }
            let (d, c) = almost_toric::an_chain_curve(n).map_err(domain)?;
            emit_diagram(ctx, &d, Some(&c), curve_summary(&c, &d))?;
        }
    }
    Ok(0)
}

fn cmd_genus(degree: u64, ctx: &mut Ctx) -> Result<i32, Fail> {
    if degree == 0 || degree > 10_000 {
        return Err(Fail::Usage("degree must lie in 1..=10000".into()));
    }
    let g = genus_of(&dilated_triangle(degree as i64)).map_err(domain)?;
    if ctx.json {
        ctx.emit_json(json!({"degree": degree, "genus": g}));
    } else {
        let _ = writeln!(ctx.stdout, "{g}");
    }
    Ok(0)
}

fn cmd_render(input: &str, ctx: &mut Ctx) -> Result<i32, Fail> {
    let layers = Layers::parse(ctx.show.as_deref().unwrap_or("")).map_err(Fail::Usage)?;
    let is_diagram = match input.strip_prefix("catalog:") {
        Some(name) => surface(name).is_ok(),
        None => DelPezzo::from_name(input).is_some() || read_source(input).map(|t| t.contains(doc::DIAGRAM_SCHEMA)).unwrap_or(false),
    };
    let svg = if is_diagram {
        let docu = load_diagram(input, true)?;
        let d = &docu.diagram;
        let mut curves: Vec<(String, CurveOnBase)> = Vec::new();
        if let Some(c) = &docu.curve {
            curves.push(("curve".into(), c.clone()));
        }
        if layers.outer {
            curves.push(("outer".into(), almost_toric::build_outer_torus(d, Rat::new(1, 6)).map_err(domain)?));
        }
        if layers.inner {
            curves.push(("inner".into(), almost_toric::build_inner_torus(d).map_err(domain)?));
        }
        let refs: Vec<(&str, &CurveOnBase)> = curves.iter().map(|(n, c)| (n.as_str(), c)).collect();
        render::render_diagram(d, &refs)
    } else {
        let d = load_valid(input)?.dimer;
        render::render_dimer(&d, layers)
    };
    ctx.artifact(&svg)?;
    Ok(0)
}

/// Names of the diagram documents shipped next to the dimers.
pub fn diagram_names() -> Vec<&'static str> {
    DelPezzo::ALL.iter().map(|s| s.name()).collect()
}

/// The shipped catalog documents by file stem.
pub fn catalog_documents() -> BTreeMap<String, String> {
    let mut m = BTreeMap::new();
    for name in catalog::DIMER_NAMES {
        let d = catalog::dimer(name).expect("catalog entry");
        m.insert(name.to_string(), doc::serialize_dimer(&doc::dimer_document(&d)) + "\n");
    }
    for s in DelPezzo::ALL {
        let d = almost_toric::trade_all(s.polygon()).expect("smooth polygon");
        m.insert(s.name().to_string(), doc::serialize_diagram(&DiagramDocument { diagram: d, curve: None }) + "\n");
    }
    m
}

fn cmd_catalog(name: Option<&str>, ctx: &mut Ctx) -> Result<i32, Fail> {
    let docs = catalog_documents();
    match name {
        None => {
            if ctx.json {
                ctx.emit_json(json!({"dimers": catalog::DIMER_NAMES, "diagrams": diagram_names()}));
            } else {
                let _ = writeln!(ctx.stdout, "dimers: {}", catalog::DIMER_NAMES.join(" "));
                let _ = writeln!(ctx.stdout, "diagrams: {}", diagram_names().join(" "));
            }
        }
        Some(n) => {
            let n = n.strip_prefix("catalog:").unwrap_or(n);
            let text = docs.get(n).ok_or_else(|| Fail::Usage(format!("unknown catalog entry `{n}`")))?.clone();
            ctx.artifact(&text)?;
        }
    }
    Ok(0)
}
