use std::fmt::Write as _;
use std::path::Path;

use anyhow::{Context as _, Result};
use gph_core::dynamics::{
    cayley_graph, classify_nset_map, nset_fibrancy, periodic_part, zset_is_acyclic, FinNSet, FinZSet, NSetMap,
};
use gph_core::graph::Graph;
use gph_core::homotopy::{explore as run_explore, homotopy_equivalent, signature, ExploreConfig, Family};
use gph_core::json::bigints;
use gph_core::model::{classify as classify_morphism, cofibrant_replacement, find_lift, LiftingProblem};
use gph_core::search::Budget;
use gph_core::spectral::{adjacency_matrix, cycle_counts, zeta_series};
use gph_core::witt::{ghost_to_witt, AlmostFiniteZSet, WittTable};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::{input, Output};

pub struct Context {
    pub budget: u64,
    pub json: bool,
}

impl Context {
    fn budget(&self) -> Budget {
        Budget::new(self.budget)
    }

    fn emit(&self, value: Value, text: String) -> Output {
        if self.json {
            Output::ok(pretty(&value))
        } else {
            Output::ok(text)
        }
    }
}

fn pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values serialize");
    s.push('\n');
    s
}

fn default_order(g: &Graph, upto: Option<usize>) -> usize {
    upto.unwrap_or_else(|| (2 * g.node_count()).max(1))
}

pub fn charpoly(ctx: &Context, arg: &str) -> Result<Output> {
    let g = input::graph(arg)?;
    let a = adjacency_matrix(&g);
    let p = a.char_poly();
    let r = a.reversed_char_poly();
    let value = json!({
        "char_poly": p.to_json_coeffs(),
        "char_poly_text": p.display("x").to_string(),
        "reversed": r.to_json_coeffs(),
        "reversed_text": r.display("u").to_string(),
    });
    Ok(ctx.emit(value, format!("{}\n{}\n", p.display("x"), r.display("u"))))
}

pub fn zeta(ctx: &Context, arg: &str, upto: Option<usize>) -> Result<Output> {
    let g = input::graph(arg)?;
    let z = zeta_series(&g, default_order(&g, upto))?;
    Ok(ctx.emit(z.to_json_value(), format!("{}\n{}\n", z.rational_text(), z.series_text())))
}

pub fn census(ctx: &Context, arg: &str, upto: Option<usize>) -> Result<Output> {
    let g = input::graph(arg)?;
    let n = default_order(&g, upto);
    let counts = cycle_counts(&g, n);
    let mut text = String::from("n  c_n\n");
    for (k, c) in counts.iter().enumerate() {
        writeln!(text, "{}  {}", k + 1, c).unwrap();
    }
    Ok(ctx.emit(json!({ "upto": n, "counts": bigints(&counts) }), text))
}

fn parse_ghost(text: &str) -> Result<Vec<BigInt>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| gph_core::Error::InvalidArgument(format!("`{}` is not an integer", t.trim())))
                .map_err(anyhow::Error::from)
        })
        .collect()
}

pub fn witt(ctx: &Context, arg: Option<&str>, ghost: Option<&str>, upto: Option<usize>) -> Result<Output> {
    let table = match (arg, ghost) {
        (_, Some(seq)) => {
            let c = parse_ghost(seq)?;
            let n = upto.unwrap_or(c.len());
            let witt = (1..=n).map(|k| ghost_to_witt(&c, k)).collect::<gph_core::Result<Vec<_>>>()?;
            WittTable { upto: n, ghost: c[..n].to_vec(), witt }
        }
        (Some(arg), None) => {
            let g = input::graph(arg)?;
            AlmostFiniteZSet::from_graph(&g).table(default_order(&g, upto))?
        }
        (None, None) => {
            return Err(gph_core::Error::InvalidArgument("give a graph or --ghost".into()).into());
        }
    };
    Ok(ctx.emit(table.to_json_value(), table.to_string()))
}

pub fn classify(ctx: &Context, path: &Path, upto: Option<usize>) -> Result<Output> {
    let f = input::morphism(path)?;
    let flags = classify_morphism(&f, upto, &mut ctx.budget())?;
    Ok(ctx.emit(flags.to_json_value(), flags.to_string()))
}

pub fn lift(ctx: &Context, paths: [&Path; 4]) -> Result<Output> {
    let [l, r, t, b] = paths.map(input::morphism);
    let problem = LiftingProblem::new(l?, r?, t?, b?)?;
    match find_lift(&problem, &mut ctx.budget())? {
        Some(h) => {
            let value = h.to_json_value();
            Ok(ctx.emit(json!({ "lift": value.clone() }), pretty(&value)))
        }
        None => {
            let mut out = ctx.emit(json!({ "lift": null }), "NO-LIFT\n".into());
            out.code = 1;
            Ok(out)
        }
    }
}

pub fn cofibrant_replace(ctx: &Context, arg: &str, upto: Option<usize>) -> Result<Output> {
    let g = input::graph(arg)?;
    let n = default_order(&g, upto);
    let rep = cofibrant_replacement(&g, n, &mut ctx.budget())?;
    let text = format!("{}\n{}", pretty(&rep.graph.to_json_value()), rep.necklace_table());
    Ok(ctx.emit(rep.to_json_value(), text))
}

pub fn homotopy_eq(ctx: &Context, a: &str, b: &str) -> Result<Output> {
    let (x, y) = (input::graph(a)?, input::graph(b)?);
    let same = homotopy_equivalent(&x, &y)?;
    let (sx, sy) = (signature(&x), signature(&y));
    let verdict = if same { "homotopy equivalent" } else { "not homotopy equivalent" };
    let value = json!({
        "equivalent": same,
        "signatures": [sx.to_string(), sy.to_string()],
    });
    let mut out = ctx.emit(value, format!("{verdict}\n{a}: {sx}\n{b}: {sy}\n"));
    out.code = if same { 0 } else { 1 };
    Ok(out)
}

pub fn explore(ctx: &Context, nodes: usize, arcs: usize, family: Family, out: Option<&Path>) -> Result<Output> {
    let report = run_explore(ExploreConfig { max_nodes: nodes, max_arcs: arcs, family, budget: ctx.budget })?;
    let value = report.to_json_value();
    if let Some(path) = out {
        std::fs::write(path, pretty(&value)).with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(ctx.emit(value, report.summary()))
}

fn yn(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn describe_set(ctx: &Context, s: &FinNSet) -> Output {
    let fib = nset_fibrancy(s);
    let periodic = periodic_part(s);
    let g: Graph = cayley_graph(s);
    let value = json!({
        "elements": s.len(),
        "bijective": s.is_bijective(),
        "fibrant": fib.fibrant,
        "cofibrant": fib.cofibrant,
        "periodic": periodic.as_nset().elements(),
        "orbit_lengths": periodic.orbit_lengths(),
        "cayley_graph": g.to_json_value(),
    });
    let mut text = String::new();
    writeln!(text, "elements     {}", s.len()).unwrap();
    writeln!(text, "bijective    {}", yn(s.is_bijective())).unwrap();
    writeln!(text, "fibrant      {}", yn(fib.fibrant)).unwrap();
    writeln!(text, "cofibrant    {}", yn(fib.cofibrant)).unwrap();
    writeln!(text, "periodic     {}", periodic.as_nset().elements().join(" ")).unwrap();
    let lengths: Vec<String> = periodic.orbit_lengths().iter().map(|l| l.to_string()).collect();
    writeln!(text, "orbits       {}", lengths.join(" ")).unwrap();
    ctx.emit(value, text)
}

fn describe_map(ctx: &Context, f: &NSetMap, zset: bool) -> Result<Output> {
    let flags = classify_nset_map(f, None);
    let mut value = json!({
        "surjecting": flags.surjecting,
        "whiskering": flags.whiskering,
        "acyclic": flags.acyclic,
        "acyclic_bound": flags.bound,
    });
    let mut text = String::new();
    writeln!(text, "surjecting   {}", yn(flags.surjecting)).unwrap();
    writeln!(text, "whiskering   {}", yn(flags.whiskering)).unwrap();
    writeln!(text, "acyclic      {} (up to {})", yn(flags.acyclic), flags.bound).unwrap();
    if zset {
        let acyclic = zset_is_acyclic(f)?;
        value["zset_acyclic"] = json!(acyclic);
        writeln!(text, "Z-acyclic    {}", yn(acyclic)).unwrap();
    }
    Ok(ctx.emit(value, text))
}

/// A set `{"elements", "sigma"}` or a map `{"source", "target", "map"}`.
pub fn nset(ctx: &Context, path: &Path, zset: bool) -> Result<Output> {
    let text = input::text(path)?;
    let parsed: Value = serde_json::from_str(&text)
        .map_err(gph_core::Error::from)
        .with_context(|| format!("{}", path.display()))?;
    let located = |e: serde_json::Error| anyhow::Error::from(gph_core::Error::from(e)).context(path.display().to_string());
    if parsed.get("map").is_some() {
        let f: NSetMap = serde_json::from_str(&text).map_err(located)?;
        if zset {
            FinZSet::new(f.source().clone()).context("source")?;
            FinZSet::new(f.target().clone()).context("target")?;
        }
        describe_map(ctx, &f, zset)
    } else if zset {
        let z: FinZSet = serde_json::from_str(&text).map_err(located)?;
        Ok(describe_set(ctx, z.as_nset()))
    } else {
        let s: FinNSet = serde_json::from_str(&text).map_err(located)?;
        Ok(describe_set(ctx, &s))
    }
}
