//! Morphism classes, generators, lifting and replacement on finite graphs.
//!
//! A morphism `f: X -> Y` is
//! * Surjecting if each `X(x, *) -> Y(f x, *)` (arcs out of a node) is onto;
//! * a Whiskering if `Y` is `X` with rooted trees attached, arcs pointing away
//!   from `X`;
//! * Acyclic if `C_n(f): Hom(C_n, X) -> Hom(C_n, Y)` is bijective for all
//!   `n > 0`. Only `n <= N` can be checked, so that verdict is a
//!   semi-decision.
//!
//! A finite graph is cofibrant exactly when every node has indegree 1:
//! following the unique incoming arc backwards from any node must repeat a
//! node, so each component is a cycle with trees hanging off it.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::ops::ControlFlow;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{arrow, coproduct, cycle_graph, dot, fresh_id, same_graph, Graph, GraphMorphism};
use crate::search::{search_morphisms, Budget, Constraints};
use crate::spectral::cycle_count;
use crate::witt::AlmostFiniteZSet;

fn cycle_node(c: &Graph, i: usize) -> usize {
    c.node_position(&i.to_string()).expect("cycle node")
}

fn cycle_arc(c: &Graph, i: usize) -> usize {
    c.arc_position(&i.to_string()).expect("cycle arc")
}

/// Every arc leaving `f(x)` is the image of an arc leaving `x`.
pub fn is_surjecting(f: &GraphMorphism) -> bool {
    let (x, y) = (f.source(), f.target());
    let mut hit = vec![false; y.arc_count()];
    (0..x.node_count()).all(|v| {
        for &a in x.out_arcs(v) {
            hit[f.arc(a)] = true;
        }
        let ok = y.out_arcs(f.node(v)).iter().all(|&b| hit[b]);
        for &a in x.out_arcs(v) {
            hit[f.arc(a)] = false;
        }
        ok
    })
}

/// Injective, closed under incoming arcs, and the complement is a forest of
/// trees hanging off the image with arcs pointing away from it.
pub fn is_whiskering(f: &GraphMorphism) -> bool {
    if !f.is_injective() {
        return false;
    }
    let y = f.target();
    let in_nodes = f.node_image();
    let in_arcs = f.arc_image();
    if (0..y.arc_count()).any(|b| in_nodes[y.tgt(b)] && !in_arcs[b]) {
        return false;
    }
    (0..y.node_count()).filter(|&v| !in_nodes[v]).all(|v| {
        let mut z = v;
        for _ in 0..=y.node_count() {
            if in_nodes[z] {
                return true;
            }
            match y.in_arcs(z) {
                [a] => z = y.src(*a),
                _ => return false,
            }
        }
        false
    })
}

/// `C_n(f)` is a bijection for every `1 <= n <= bound`.
///
/// Closed walks in `X` are enumerated and pushed forward; the image must be
/// duplicate-free and as large as `Hom(C_n, Y)`.
pub fn is_acyclic_bounded(f: &GraphMorphism, bound: usize, budget: &mut Budget) -> Result<bool> {
    for n in 1..=bound {
        let c = cycle_graph(n)?;
        let expected = cycle_count(f.target(), n)?;
        if cycle_count(f.source(), n)? != expected {
            return Ok(false);
        }
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut injective = true;
        let constraints = Constraints::unconstrained(&c, f.source());
        let _ = search_morphisms(&c, f.source(), &constraints, budget, |_, arcs| {
            let image: Vec<usize> = arcs.iter().map(|&a| f.arc(a)).collect();
            if seen.insert(image) {
                ControlFlow::Continue(())
            } else {
                injective = false;
                ControlFlow::Break(())
            }
        })?;
        if !injective {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Default truncation for acyclicity: the larger node count, at least 1.
pub fn default_acyclic_bound(f: &GraphMorphism) -> usize {
    f.source().node_count().max(f.target().node_count()).max(1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MorphismFlags {
    pub injective: bool,
    pub isomorphism: bool,
    pub surjecting: bool,
    pub whiskering: bool,
    /// Acyclic up to `acyclic_bound`.
    pub acyclic: bool,
    pub acyclic_bound: usize,
}

impl MorphismFlags {
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "injective": self.injective,
            "isomorphism": self.isomorphism,
            "surjecting": self.surjecting,
            "whiskering": self.whiskering,
            "acyclic": self.acyclic,
            "acyclic_bound": self.acyclic_bound,
        })
    }
}

impl fmt::Display for MorphismFlags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yn = |b: bool| if b { "yes" } else { "no" };
        writeln!(f, "injective    {}", yn(self.injective))?;
        writeln!(f, "isomorphism  {}", yn(self.isomorphism))?;
        writeln!(f, "surjecting   {}", yn(self.surjecting))?;
        writeln!(f, "whiskering   {}", yn(self.whiskering))?;
        writeln!(f, "acyclic      {} (up to {})", yn(self.acyclic), self.acyclic_bound)
    }
}

pub fn classify(f: &GraphMorphism, bound: Option<usize>, budget: &mut Budget) -> Result<MorphismFlags> {
    let acyclic_bound = bound.unwrap_or_else(|| default_acyclic_bound(f));
    Ok(MorphismFlags {
        injective: f.is_injective(),
        isomorphism: f.is_isomorphism(),
        surjecting: is_surjecting(f),
        whiskering: is_whiskering(f),
        acyclic: is_acyclic_bounded(f, acyclic_bound, budget)?,
        acyclic_bound,
    })
}

/// `s: D -> A`, the dot onto the source of the arrow.
pub fn source_inclusion() -> GraphMorphism {
    let d = Arc::new(dot());
    let a = Arc::new(arrow());
    let zero = a.node_position("0").expect("arrow has node 0");
    GraphMorphism::new(d, a, vec![zero], Vec::new()).expect("s is a morphism")
}

/// `i_n: 0 -> C_n`.
pub fn initial_cycle(n: usize) -> Result<GraphMorphism> {
    Ok(GraphMorphism::initial(&Arc::new(cycle_graph(n)?)))
}

/// `j_n: C_n + C_n -> C_n`, the identity on each summand.
pub fn cycle_fold(n: usize) -> Result<GraphMorphism> {
    let c = Arc::new(cycle_graph(n)?);
    let sum = coproduct(&c, &c);
    let strip = |id: &str| id[2..].to_owned();
    let nodes: BTreeMap<String, String> = sum.graph.nodes().iter().map(|v| (v.clone(), strip(v))).collect();
    let arcs: BTreeMap<String, String> = sum.graph.arcs().iter().map(|a| (a.id.clone(), strip(&a.id))).collect();
    GraphMorphism::from_id_maps(Arc::clone(&sum.graph), c, &nodes, &arcs)
}

/// `pi_{n,k}: C_{nk} -> C_n`, `i -> i mod n` on nodes and arcs.
pub fn cycle_cover(n: usize, k: usize) -> Result<GraphMorphism> {
    if k == 0 {
        return Err(Error::InvalidArgument("cycle cover needs k >= 1".into()));
    }
    let big = Arc::new(cycle_graph(n * k)?);
    let small = Arc::new(cycle_graph(n)?);
    let node_map = (0..n * k).map(|i| (i.to_string(), (i % n).to_string())).collect();
    GraphMorphism::from_id_maps(big, small, &node_map, &node_map)
}

/// `pi_{n,k}` rebuilt as the pushout of `j_{nk}` along
/// `f: C_{nk} + C_{nk} -> C_{nk}`, `f(i, 0) = i + n`, `f(i, 1) = i`.
///
/// Returns the pushout leg out of the target of `f`; its target is a graph
/// isomorphic to `C_n` with pushout ids.
pub fn cycle_cover_via_pushout(n: usize, k: usize) -> Result<GraphMorphism> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidArgument("cycle cover needs n, k >= 1".into()));
    }
    let m = n * k;
    let j = cycle_fold(m)?;
    let sum = Arc::clone(j.source());
    let shift = |id: &str| {
        let i: usize = id[2..].parse().expect("cycle id");
        if id.starts_with("0:") {
            ((i + n) % m).to_string()
        } else {
            i.to_string()
        }
    };
    let nodes: BTreeMap<String, String> = sum.nodes().iter().map(|v| (v.clone(), shift(v))).collect();
    let arcs: BTreeMap<String, String> = sum.arcs().iter().map(|a| (a.id.clone(), shift(&a.id))).collect();
    let f = GraphMorphism::from_id_maps(Arc::clone(&sum), Arc::clone(j.target()), &nodes, &arcs)?;
    Ok(crate::graph::pushout(&f, &j)?.left)
}

/// `J = {s}`, `K = {i_n, j_n : n <= bound}`; `I` is their union.
#[derive(Clone)]
pub struct GeneratorSet {
    pub bound: usize,
    pub s: GraphMorphism,
    pub i: Vec<GraphMorphism>,
    pub j: Vec<GraphMorphism>,
}

impl GeneratorSet {
    pub fn new(bound: usize) -> Result<GeneratorSet> {
        Ok(GeneratorSet {
            bound,
            s: source_inclusion(),
            i: (1..=bound).map(initial_cycle).collect::<Result<_>>()?,
            j: (1..=bound).map(cycle_fold).collect::<Result<_>>()?,
        })
    }

    pub fn j_set(&self) -> Vec<(String, &GraphMorphism)> {
        vec![("s".to_owned(), &self.s)]
    }

    pub fn k_set(&self) -> Vec<(String, &GraphMorphism)> {
        let is = self.i.iter().enumerate().map(|(k, m)| (format!("i_{}", k + 1), m));
        let js = self.j.iter().enumerate().map(|(k, m)| (format!("j_{}", k + 1), m));
        is.chain(js).collect()
    }

    pub fn i_set(&self) -> Vec<(String, &GraphMorphism)> {
        let mut all = self.j_set();
        all.extend(self.k_set());
        all
    }
}

/// A commuting square `r . f = g . l`; a lift is `h: Y -> A` with
/// `h . l = f` and `r . h = g`.
#[derive(Clone)]
pub struct LiftingProblem {
    left: GraphMorphism,
    right: GraphMorphism,
    top: GraphMorphism,
    bottom: GraphMorphism,
}

impl LiftingProblem {
    pub fn new(
        left: GraphMorphism,
        right: GraphMorphism,
        top: GraphMorphism,
        bottom: GraphMorphism,
    ) -> Result<LiftingProblem> {
        let checks = [
            (left.source(), top.source(), "left and top must share their source"),
            (top.target(), right.source(), "top must land in the source of right"),
            (left.target(), bottom.source(), "bottom must start at the target of left"),
            (bottom.target(), right.target(), "bottom and right must share their target"),
        ];
        for (a, b, msg) in checks {
            if !same_graph(a, b) {
                return Err(Error::Incompatible(msg.into()));
            }
        }
        let rf = top.then(&right)?;
        let gl = left.then(&bottom)?;
        if rf.node_map() != gl.node_map() || rf.arc_map() != gl.arc_map() {
            return Err(Error::Incompatible("square does not commute".into()));
        }
        Ok(LiftingProblem { left, right, top, bottom })
    }

    pub fn left(&self) -> &GraphMorphism {
        &self.left
    }

    pub fn right(&self) -> &GraphMorphism {
        &self.right
    }

    pub fn top(&self) -> &GraphMorphism {
        &self.top
    }

    pub fn bottom(&self) -> &GraphMorphism {
        &self.bottom
    }
}

/// A diagonal filler, or `None` after exhausting the search.
pub fn find_lift(p: &LiftingProblem, budget: &mut Budget) -> Result<Option<GraphMorphism>> {
    let (l, r, f, g) = (&p.left, &p.right, &p.top, &p.bottom);
    let y = l.target();
    let a = r.source();
    let mut c = Constraints::unconstrained(y, a);
    for v in 0..y.node_count() {
        for w in 0..a.node_count() {
            c.node_ok[v][w] = r.node(w) == g.node(v);
        }
    }
    for b in 0..y.arc_count() {
        c.arc_candidates[b] = (0..a.arc_count()).filter(|&e| r.arc(e) == g.arc(b)).collect();
    }
    for x in 0..l.source().node_count() {
        c.fix_node(l.node(x), f.node(x));
    }
    for e in 0..l.source().arc_count() {
        c.fix_arc(l.arc(e), f.arc(e));
    }
    let mut lift = None;
    let _ = search_morphisms(y, a, &c, budget, |nodes, arcs| {
        lift = Some(GraphMorphism::new_unchecked(
            Arc::clone(y),
            Arc::clone(a),
            nodes.to_vec(),
            arcs.to_vec(),
        ));
        ControlFlow::Break(())
    })?;
    Ok(lift)
}

/// `f = p . w` with `w` a Whiskering.
#[derive(Clone)]
pub struct Factorization {
    pub w: GraphMorphism,
    pub p: GraphMorphism,
    /// `p` is Surjecting.
    pub complete: bool,
    /// Rounds that attached at least one whisker.
    pub rounds: usize,
}

/// Bounded small-object argument against `J = {s}`.
///
/// Each round collects every defect `(z, b)`, a node `z` of the middle graph
/// and an arc `b` leaving `p(z)` that no arc leaving `z` hits, and fixes it
/// by attaching a fresh arc `z -> z'` over `b`. Fresh ids are `w<round>.<k>`.
pub fn factorize_bounded(f: &GraphMorphism, depth: usize) -> Result<Factorization> {
    let x = f.source();
    let y = f.target();
    let mut nodes: Vec<String> = x.nodes().to_vec();
    let mut arcs: Vec<(String, usize, usize)> = x.arcs().iter().map(|a| (a.id.clone(), a.src, a.tgt)).collect();
    let mut p_node: Vec<usize> = f.node_map().to_vec();
    let mut p_arc: Vec<usize> = f.arc_map().to_vec();
    let mut out: Vec<Vec<usize>> = (0..x.node_count()).map(|v| x.out_arcs(v).to_vec()).collect();
    let mut taken_nodes: HashSet<String> = nodes.iter().cloned().collect();
    let mut taken_arcs: HashSet<String> = arcs.iter().map(|a| a.0.clone()).collect();

    let defects = |out: &[Vec<usize>], p_node: &[usize], p_arc: &[usize]| {
        let mut found = Vec::new();
        for (z, outs) in out.iter().enumerate() {
            for &b in y.out_arcs(p_node[z]) {
                if !outs.iter().any(|&e| p_arc[e] == b) {
                    found.push((z, b));
                }
            }
        }
        found
    };

    let mut rounds = 0;
    for round in 1..=depth {
        let todo = defects(&out, &p_node, &p_arc);
        if todo.is_empty() {
            break;
        }
        rounds = round;
        for (k, (z, b)) in todo.into_iter().enumerate() {
            let stem = format!("w{round}.{k}");
            let node_id = fresh_id(&stem, &taken_nodes);
            let arc_id = fresh_id(&stem, &taken_arcs);
            taken_nodes.insert(node_id.clone());
            taken_arcs.insert(arc_id.clone());
            let v = nodes.len();
            nodes.push(node_id);
            p_node.push(y.tgt(b));
            out.push(Vec::new());
            out[z].push(arcs.len());
            arcs.push((arc_id, z, v));
            p_arc.push(b);
        }
    }
    let complete = defects(&out, &p_node, &p_arc).is_empty();

    let z = Arc::new(Graph::from_indexed(nodes.clone(), arcs.clone())?);
    let node_pos: Vec<usize> = nodes.iter().map(|id| z.node_position(id).expect("middle node")).collect();
    let arc_pos: Vec<usize> = arcs.iter().map(|a| z.arc_position(&a.0).expect("middle arc")).collect();
    let w = GraphMorphism::new(
        Arc::clone(x),
        Arc::clone(&z),
        node_pos[..x.node_count()].to_vec(),
        arc_pos[..x.arc_count()].to_vec(),
    )?;
    let mut pn = vec![0; z.node_count()];
    for (i, &pos) in node_pos.iter().enumerate() {
        pn[pos] = p_node[i];
    }
    let mut pa = vec![0; z.arc_count()];
    for (i, &pos) in arc_pos.iter().enumerate() {
        pa[pos] = p_arc[i];
    }
    let p = GraphMorphism::new(z, Arc::clone(y), pn, pa)?;
    Ok(Factorization { w, p, complete, rounds })
}

/// No dead-ends.
pub fn is_fibrant(x: &Graph) -> bool {
    (0..x.node_count()).all(|v| x.outdegree(v) >= 1)
}

/// Every node has exactly one incoming arc.
pub fn is_cofibrant(x: &Graph) -> bool {
    (0..x.node_count()).all(|v| x.indegree(v) == 1)
}

/// Aperiodic closed walks of one length, one per rotation class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NecklaceRow {
    pub n: usize,
    /// Each representative lists the arc ids hit by arcs `0..n` of `C_n`.
    pub representatives: Vec<Vec<String>>,
}

/// The cycle resolution truncated at `bound`: one copy of `C_n` per
/// aperiodic closed walk of length `n` up to rotation.
#[derive(Clone)]
pub struct CofibrantReplacement {
    pub bound: usize,
    /// Disjoint union of the copies; copy `k` of `C_n` has ids `n.k:i`.
    pub graph: Arc<Graph>,
    /// `C_n -> X` for each copy, in the order of `graph`'s copies.
    pub counits: Vec<GraphMorphism>,
    /// The combined map `graph -> X`.
    pub counit: GraphMorphism,
    pub necklaces: Vec<NecklaceRow>,
}

impl CofibrantReplacement {
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "upto": self.bound,
            "graph": self.graph.to_json_value(),
            "counit": self.counit.to_json_value(),
            "necklaces": self.necklaces.iter().map(|row| serde_json::json!({
                "n": row.n,
                "count": row.representatives.len(),
                "representatives": row.representatives,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn necklace_table(&self) -> String {
        let mut s = String::from("n  s_n  representatives\n");
        for row in &self.necklaces {
            let reps: Vec<String> = row.representatives.iter().map(|r| format!("[{}]", r.join(" "))).collect();
            s.push_str(&format!("{}  {}  {}\n", row.n, row.representatives.len(), reps.join(" ")));
        }
        s
    }
}

/// Arc sequences `w` with `w[i + 1]` entering the source of `w[i]`,
/// cyclically, that are aperiodic and lexicographically least among their
/// rotations.
fn necklace_representatives(x: &Graph, n: usize, budget: &mut Budget) -> Result<Vec<Vec<usize>>> {
    fn extend(x: &Graph, n: usize, walk: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, budget: &mut Budget) -> Result<()> {
        if walk.len() == n {
            if x.tgt(walk[0]) == x.src(walk[n - 1]) && is_least_aperiodic(walk) {
                out.push(walk.clone());
            }
            return Ok(());
        }
        let last = *walk.last().expect("walk starts non-empty");
        for &a in x.in_arcs(x.src(last)) {
            if a < walk[0] {
                continue;
            }
            budget.tick()?;
            walk.push(a);
            extend(x, n, walk, out, budget)?;
            walk.pop();
        }
        Ok(())
    }
    let mut out = Vec::new();
    for a in 0..x.arc_count() {
        budget.tick()?;
        extend(x, n, &mut vec![a], &mut out, budget)?;
    }
    Ok(out)
}

fn is_least_aperiodic(w: &[usize]) -> bool {
    let n = w.len();
    (1..n).all(|r| {
        let rotated = w[r..].iter().chain(&w[..r]);
        w.iter().lt(rotated)
    })
}

/// Cycle resolution of `x` truncated at `bound`, with explicit counits.
///
/// The number of copies of `C_n` is checked against the Witt coordinate
/// `s_n` of `x`; disagreement is an internal error.
pub fn cofibrant_replacement(x: &Arc<Graph>, bound: usize, budget: &mut Budget) -> Result<CofibrantReplacement> {
    let witt = AlmostFiniteZSet::from_graph(x).witts(bound)?;
    let mut necklaces = Vec::new();
    let mut copies: Vec<(usize, Vec<usize>)> = Vec::new();
    for n in 1..=bound {
        let reps = necklace_representatives(x, n, budget)?;
        if num_bigint::BigInt::from(reps.len()) != witt[n - 1] {
            return Err(Error::InternalInconsistency(format!(
                "found {} necklaces of length {n}, expected {}",
                reps.len(),
                witt[n - 1]
            )));
        }
        necklaces.push(NecklaceRow {
            n,
            representatives: reps
                .iter()
                .map(|w| w.iter().map(|&a| x.arc_id(a).to_owned()).collect())
                .collect(),
        });
        copies.extend(reps.into_iter().map(|w| (n, w)));
    }

    let mut nodes = Vec::new();
    let mut arcs = Vec::new();
    let mut node_images = Vec::new();
    let mut arc_images = Vec::new();
    let mut counits = Vec::new();
    let mut seen_per_n = BTreeMap::<usize, usize>::new();
    for (n, w) in &copies {
        let k = seen_per_n.entry(*n).or_default();
        let prefix = format!("{n}.{k}:");
        *k += 1;
        let base = nodes.len();
        for (i, &a) in w.iter().enumerate() {
            nodes.push(format!("{prefix}{i}"));
            node_images.push(x.tgt(a));
            arcs.push((format!("{prefix}{i}"), base + (i + 1) % n, base + i));
            arc_images.push(a);
        }
        let c = Arc::new(cycle_graph(*n)?);
        let mut nm = vec![0; *n];
        let mut am = vec![0; *n];
        for i in 0..*n {
            nm[cycle_node(&c, i)] = x.tgt(w[i]);
            am[cycle_arc(&c, i)] = w[i];
        }
        counits.push(GraphMorphism::new(c, Arc::clone(x), nm, am)?);
    }
    let graph = Arc::new(Graph::from_indexed(nodes.clone(), arcs.clone())?);
    let mut nm = vec![0; graph.node_count()];
    for (id, img) in nodes.iter().zip(&node_images) {
        nm[graph.node_position(id).expect("copy node")] = *img;
    }
    let mut am = vec![0; graph.arc_count()];
    for ((id, _, _), img) in arcs.iter().zip(&arc_images) {
        am[graph.arc_position(id).expect("copy arc")] = *img;
    }
    let counit = GraphMorphism::new(Arc::clone(&graph), Arc::clone(x), nm, am)?;
    Ok(CofibrantReplacement { bound, graph, counits, counit, necklaces })
}
