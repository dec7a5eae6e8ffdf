//! Finite directed multigraphs and their morphisms.
//!
//! A [`Graph`] is a set of nodes, a set of arcs and the two incidence maps
//! `src, tgt: arcs -> nodes`. Loops and parallel arcs are allowed. Node and
//! arc ids are opaque strings; a graph always keeps both sets sorted by id,
//! which is also the order used for serialization and for adjacency matrices.
//!
//! Limits and colimits in this category are computed separately on nodes and
//! arcs, which is how [`product`], [`coproduct`] and [`pushout`] work.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::unionfind::UnionFind;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GraphArc {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct Graph {
    nodes: Vec<String>,
    arcs: Vec<GraphArc>,
    node_index: HashMap<String, usize>,
    arc_index: HashMap<String, usize>,
    out_arcs: Vec<Vec<usize>>,
    in_arcs: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from node ids and `(arc id, source id, target id)` triples.
    pub fn new<N, A>(nodes: N, arcs: A) -> Result<Graph>
    where
        N: IntoIterator,
        N::Item: Into<String>,
        A: IntoIterator<Item = (String, String, String)>,
    {
        let nodes: Vec<String> = nodes.into_iter().map(Into::into).collect();
        let mut position = HashMap::with_capacity(nodes.len());
        for (i, n) in nodes.iter().enumerate() {
            if position.insert(n.clone(), i).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate node id `{n}`")));
            }
        }
        let mut indexed = Vec::new();
        for (id, s, t) in arcs {
            let lookup = |end: &str| {
                position.get(end).copied().ok_or_else(|| {
                    Error::InvalidGraph(format!("arc `{id}` refers to unknown node `{end}`"))
                })
            };
            let (s, t) = (lookup(&s)?, lookup(&t)?);
            indexed.push((id, s, t));
        }
        Graph::from_indexed(nodes, indexed)
    }

    /// Builds a graph whose arc endpoints are positions in `nodes`.
    pub fn from_indexed(nodes: Vec<String>, arcs: Vec<(String, usize, usize)>) -> Result<Graph> {
        let mut order: Vec<usize> = (0..nodes.len()).collect();
        order.sort_by(|&a, &b| nodes[a].cmp(&nodes[b]));
        let mut rank = vec![0; nodes.len()];
        for (new, &old) in order.iter().enumerate() {
            rank[old] = new;
        }
        let mut sorted_nodes: Vec<String> = Vec::with_capacity(nodes.len());
        let mut node_index = HashMap::with_capacity(nodes.len());
        for &old in &order {
            let id = nodes[old].clone();
            if node_index.insert(id.clone(), sorted_nodes.len()).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate node id `{id}`")));
            }
            sorted_nodes.push(id);
        }

        let mut sorted_arcs: Vec<GraphArc> = Vec::with_capacity(arcs.len());
        for (id, s, t) in arcs {
            if s >= nodes.len() || t >= nodes.len() {
                return Err(Error::InvalidGraph(format!("arc `{id}` has an endpoint out of range")));
            }
            sorted_arcs.push(GraphArc { id, src: rank[s], tgt: rank[t] });
        }
        sorted_arcs.sort_by(|a, b| a.id.cmp(&b.id));
        let mut arc_index = HashMap::with_capacity(sorted_arcs.len());
        for (i, a) in sorted_arcs.iter().enumerate() {
            if arc_index.insert(a.id.clone(), i).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate arc id `{}`", a.id)));
            }
        }

        let mut out_arcs = vec![Vec::new(); sorted_nodes.len()];
        let mut in_arcs = vec![Vec::new(); sorted_nodes.len()];
        for (i, a) in sorted_arcs.iter().enumerate() {
            out_arcs[a.src].push(i);
            in_arcs[a.tgt].push(i);
        }
        Ok(Graph {
            nodes: sorted_nodes,
            arcs: sorted_arcs,
            node_index,
            arc_index,
            out_arcs,
            in_arcs,
        })
    }

    /// The initial graph 0.
    pub fn empty() -> Graph {
        Graph::from_indexed(Vec::new(), Vec::new()).expect("empty graph is valid")
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn arcs(&self) -> &[GraphArc] {
        &self.arcs
    }

    pub fn node_id(&self, v: usize) -> &str {
        &self.nodes[v]
    }

    pub fn arc_id(&self, a: usize) -> &str {
        &self.arcs[a].id
    }

    pub fn node_position(&self, id: &str) -> Option<usize> {
        self.node_index.get(id).copied()
    }

    pub fn arc_position(&self, id: &str) -> Option<usize> {
        self.arc_index.get(id).copied()
    }

    pub fn src(&self, a: usize) -> usize {
        self.arcs[a].src
    }

    pub fn tgt(&self, a: usize) -> usize {
        self.arcs[a].tgt
    }

    /// Arcs leaving `v`, in arc order.
    pub fn out_arcs(&self, v: usize) -> &[usize] {
        &self.out_arcs[v]
    }

    /// Arcs entering `v`, in arc order.
    pub fn in_arcs(&self, v: usize) -> &[usize] {
        &self.in_arcs[v]
    }

    pub fn outdegree(&self, v: usize) -> usize {
        self.out_arcs[v].len()
    }

    pub fn indegree(&self, v: usize) -> usize {
        self.in_arcs[v].len()
    }

    pub fn loop_count(&self) -> usize {
        self.arcs.iter().filter(|a| a.src == a.tgt).count()
    }

    /// Renames every node and arc; the renaming must stay injective.
    pub fn relabel(
        &self,
        node: impl Fn(&str) -> String,
        arc: impl Fn(&str) -> String,
    ) -> Result<Graph> {
        Graph::from_indexed(
            self.nodes.iter().map(|n| node(n)).collect(),
            self.arcs.iter().map(|a| (arc(&a.id), a.src, a.tgt)).collect(),
        )
    }

    /// The subgraph on `nodes` with every arc between them, plus its inclusion.
    pub fn induced_subgraph(self: &Arc<Self>, nodes: &[usize]) -> Result<GraphMorphism> {
        let mut keep = vec![usize::MAX; self.node_count()];
        for (i, &v) in nodes.iter().enumerate() {
            keep[v] = i;
        }
        let mut arc_map = Vec::new();
        let mut arcs = Vec::new();
        for (i, a) in self.arcs.iter().enumerate() {
            if keep[a.src] != usize::MAX && keep[a.tgt] != usize::MAX {
                arcs.push((a.id.clone(), keep[a.src], keep[a.tgt]));
                arc_map.push(i);
            }
        }
        let sub = Arc::new(Graph::from_indexed(
            nodes.iter().map(|&v| self.nodes[v].clone()).collect(),
            arcs,
        )?);
        // from_indexed re-sorts, so recover the maps through the ids.
        let node_map = sub.nodes.iter().map(|id| self.node_index[id]).collect();
        let arc_map = sub.arcs.iter().map(|a| self.arc_index[&a.id]).collect();
        GraphMorphism::new(sub, Arc::clone(self), node_map, arc_map)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("graph serializes")
    }

    pub fn from_json_str(text: &str) -> Result<Graph> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("graph serializes")
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.nodes == other.nodes && self.arcs == other.arcs
    }
}

impl Eq for Graph {}

impl Hash for Graph {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.nodes.hash(state);
        self.arcs.hash(state);
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph {{ nodes: {:?}, arcs: [", self.nodes)?;
        for (i, a) in self.arcs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}: {}->{}", a.id, self.nodes[a.src], self.nodes[a.tgt])?;
        }
        f.write_str("] }")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ArcJson {
    id: String,
    src: String,
    tgt: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    nodes: Vec<String>,
    arcs: Vec<ArcJson>,
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(g: GraphJson) -> Result<Graph> {
        Graph::new(g.nodes, g.arcs.into_iter().map(|a| (a.id, a.src, a.tgt)))
    }
}

impl From<Graph> for GraphJson {
    fn from(g: Graph) -> GraphJson {
        GraphJson {
            arcs: g
                .arcs
                .iter()
                .map(|a| ArcJson {
                    id: a.id.clone(),
                    src: g.nodes[a.src].clone(),
                    tgt: g.nodes[a.tgt].clone(),
                })
                .collect(),
            nodes: g.nodes,
        }
    }
}

/// A pair of maps on nodes and arcs commuting with source and target.
///
/// Maps are stored by position in the (sorted) source and target graphs.
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "MorphismJson", into = "MorphismJson")]
pub struct GraphMorphism {
    source: Arc<Graph>,
    target: Arc<Graph>,
    node_map: Vec<usize>,
    arc_map: Vec<usize>,
}

impl GraphMorphism {
    pub fn new(
        source: Arc<Graph>,
        target: Arc<Graph>,
        node_map: Vec<usize>,
        arc_map: Vec<usize>,
    ) -> Result<GraphMorphism> {
        if node_map.len() != source.node_count() {
            return Err(Error::InvalidMorphism(format!(
                "node map has {} entries for {} source nodes",
                node_map.len(),
                source.node_count()
            )));
        }
        if arc_map.len() != source.arc_count() {
            return Err(Error::InvalidMorphism(format!(
                "arc map has {} entries for {} source arcs",
                arc_map.len(),
                source.arc_count()
            )));
        }
        if let Some((v, _)) = node_map.iter().enumerate().find(|(_, &w)| w >= target.node_count()) {
            return Err(Error::InvalidMorphism(format!(
                "node `{}` is sent outside the target",
                source.node_id(v)
            )));
        }
        for (a, &b) in arc_map.iter().enumerate() {
            if b >= target.arc_count() {
                return Err(Error::InvalidMorphism(format!(
                    "arc `{}` is sent outside the target",
                    source.arc_id(a)
                )));
            }
            if node_map[source.src(a)] != target.src(b) {
                return Err(Error::InvalidMorphism(format!(
                    "source square fails at arc `{}` -> `{}`",
                    source.arc_id(a),
                    target.arc_id(b)
                )));
            }
            if node_map[source.tgt(a)] != target.tgt(b) {
                return Err(Error::InvalidMorphism(format!(
                    "target square fails at arc `{}` -> `{}`",
                    source.arc_id(a),
                    target.arc_id(b)
                )));
            }
        }
        Ok(GraphMorphism { source, target, node_map, arc_map })
    }

    /// Skips validation; callers construct maps that commute by design.
    pub(crate) fn new_unchecked(
        source: Arc<Graph>,
        target: Arc<Graph>,
        node_map: Vec<usize>,
        arc_map: Vec<usize>,
    ) -> GraphMorphism {
        debug_assert!(
            GraphMorphism::new(source.clone(), target.clone(), node_map.clone(), arc_map.clone())
                .is_ok()
        );
        GraphMorphism { source, target, node_map, arc_map }
    }

    /// Builds a morphism from id-to-id maps; both maps must be total.
    pub fn from_id_maps(
        source: Arc<Graph>,
        target: Arc<Graph>,
        node_map: &BTreeMap<String, String>,
        arc_map: &BTreeMap<String, String>,
    ) -> Result<GraphMorphism> {
        let resolve = |kind: &str,
                       ids: &mut dyn Iterator<Item = &String>,
                       map: &BTreeMap<String, String>,
                       lookup: &dyn Fn(&str) -> Option<usize>|
         -> Result<Vec<usize>> {
            let mut out = Vec::new();
            for id in ids {
                let image = map.get(id).ok_or_else(|| {
                    Error::InvalidMorphism(format!("{kind} map is missing source {kind} `{id}`"))
                })?;
                out.push(lookup(image).ok_or_else(|| {
                    Error::InvalidMorphism(format!("{kind} `{id}` maps to unknown {kind} `{image}`"))
                })?);
            }
            Ok(out)
        };
        for id in node_map.keys() {
            if source.node_position(id).is_none() {
                return Err(Error::InvalidMorphism(format!("node map names unknown source node `{id}`")));
            }
        }
        for id in arc_map.keys() {
            if source.arc_position(id).is_none() {
                return Err(Error::InvalidMorphism(format!("arc map names unknown source arc `{id}`")));
            }
        }
        let nodes = resolve("node", &mut source.nodes().iter(), node_map, &|id| target.node_position(id))?;
        let arcs = resolve(
            "arc",
            &mut source.arcs().iter().map(|a| &a.id),
            arc_map,
            &|id| target.arc_position(id),
        )?;
        GraphMorphism::new(source, target, nodes, arcs)
    }

    pub fn identity(graph: &Arc<Graph>) -> GraphMorphism {
        GraphMorphism {
            source: Arc::clone(graph),
            target: Arc::clone(graph),
            node_map: (0..graph.node_count()).collect(),
            arc_map: (0..graph.arc_count()).collect(),
        }
    }

    /// The unique morphism out of the empty graph.
    pub fn initial(target: &Arc<Graph>) -> GraphMorphism {
        GraphMorphism {
            source: Arc::new(Graph::empty()),
            target: Arc::clone(target),
            node_map: Vec::new(),
            arc_map: Vec::new(),
        }
    }

    pub fn source(&self) -> &Arc<Graph> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Graph> {
        &self.target
    }

    pub fn node_map(&self) -> &[usize] {
        &self.node_map
    }

    pub fn arc_map(&self) -> &[usize] {
        &self.arc_map
    }

    pub fn node(&self, v: usize) -> usize {
        self.node_map[v]
    }

    pub fn arc(&self, a: usize) -> usize {
        self.arc_map[a]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &GraphMorphism) -> Result<GraphMorphism> {
        if !same_graph(&self.target, &next.source) {
            return Err(Error::Incompatible(
                "composite: target of the first morphism is not the source of the second".into(),
            ));
        }
        Ok(GraphMorphism {
            source: Arc::clone(&self.source),
            target: Arc::clone(&next.target),
            node_map: self.node_map.iter().map(|&v| next.node_map[v]).collect(),
            arc_map: self.arc_map.iter().map(|&a| next.arc_map[a]).collect(),
        })
    }

    pub fn is_node_injective(&self) -> bool {
        all_distinct(&self.node_map, self.target.node_count())
    }

    pub fn is_arc_injective(&self) -> bool {
        all_distinct(&self.arc_map, self.target.arc_count())
    }

    pub fn is_injective(&self) -> bool {
        self.is_node_injective() && self.is_arc_injective()
    }

    /// Bijective on nodes and arcs, i.e. an isomorphism.
    pub fn is_isomorphism(&self) -> bool {
        self.source.node_count() == self.target.node_count()
            && self.source.arc_count() == self.target.arc_count()
            && self.is_injective()
    }

    pub fn node_image(&self) -> Vec<bool> {
        let mut hit = vec![false; self.target.node_count()];
        for &v in &self.node_map {
            hit[v] = true;
        }
        hit
    }

    pub fn arc_image(&self) -> Vec<bool> {
        let mut hit = vec![false; self.target.arc_count()];
        for &a in &self.arc_map {
            hit[a] = true;
        }
        hit
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("morphism serializes")
    }

    pub fn from_json_str(text: &str) -> Result<GraphMorphism> {
        Ok(serde_json::from_str(text)?)
    }
}

impl PartialEq for GraphMorphism {
    fn eq(&self, other: &Self) -> bool {
        same_graph(&self.source, &other.source)
            && same_graph(&self.target, &other.target)
            && self.node_map == other.node_map
            && self.arc_map == other.arc_map
    }
}

impl Eq for GraphMorphism {}

impl fmt::Debug for GraphMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nodes: Vec<String> = self
            .node_map
            .iter()
            .enumerate()
            .map(|(v, &w)| format!("{}->{}", self.source.node_id(v), self.target.node_id(w)))
            .collect();
        let arcs: Vec<String> = self
            .arc_map
            .iter()
            .enumerate()
            .map(|(a, &b)| format!("{}->{}", self.source.arc_id(a), self.target.arc_id(b)))
            .collect();
        f.debug_struct("GraphMorphism")
            .field("nodes", &nodes)
            .field("arcs", &arcs)
            .finish()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MorphismJson {
    source: Graph,
    target: Graph,
    node_map: BTreeMap<String, String>,
    arc_map: BTreeMap<String, String>,
}

impl TryFrom<MorphismJson> for GraphMorphism {
    type Error = Error;

    fn try_from(m: MorphismJson) -> Result<GraphMorphism> {
        GraphMorphism::from_id_maps(Arc::new(m.source), Arc::new(m.target), &m.node_map, &m.arc_map)
    }
}

impl From<GraphMorphism> for MorphismJson {
    fn from(m: GraphMorphism) -> MorphismJson {
        let node_map = m
            .node_map
            .iter()
            .enumerate()
            .map(|(v, &w)| (m.source.node_id(v).to_owned(), m.target.node_id(w).to_owned()))
            .collect();
        let arc_map = m
            .arc_map
            .iter()
            .enumerate()
            .map(|(a, &b)| (m.source.arc_id(a).to_owned(), m.target.arc_id(b).to_owned()))
            .collect();
        MorphismJson {
            source: (*m.source).clone(),
            target: (*m.target).clone(),
            node_map,
            arc_map,
        }
    }
}

pub(crate) fn same_graph(a: &Arc<Graph>, b: &Arc<Graph>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn all_distinct(values: &[usize], range: usize) -> bool {
    let mut seen = vec![false; range];
    values.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
}

/// Escapes the separators used in composite ids so pairing stays injective.
fn escape_component(id: &str) -> String {
    let mut out = String::with_capacity(id.len());
    for ch in id.chars() {
        if matches!(ch, '\\' | ',' | '(' | ')') {
            out.push('\\');
        }
        out.push(ch);
    }
    out
}

pub(crate) fn pair_id(a: &str, b: &str) -> String {
    format!("({},{})", escape_component(a), escape_component(b))
}

/// An id with the given stem that is not in `taken`.
pub(crate) fn fresh_id(stem: &str, taken: &HashSet<String>) -> String {
    if !taken.contains(stem) {
        return stem.to_owned();
    }
    (1..)
        .map(|k| format!("{stem}'{k}"))
        .find(|c| !taken.contains(c))
        .expect("unbounded search")
}

/// `C_n`: nodes and arcs are the integers mod n, arc `i` runs from `i+1` to `i`.
pub fn cycle_graph(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidArgument("cycle graph needs n >= 1".into()));
    }
    Graph::from_indexed(
        (0..n).map(|i| i.to_string()).collect(),
        (0..n).map(|i| (i.to_string(), (i + 1) % n, i)).collect(),
    )
}

/// `P_n`: nodes `0..=n`, arc `a<k>` from `k` to `k+1`.
pub fn path_graph(n: usize) -> Graph {
    Graph::from_indexed(
        (0..=n).map(|i| i.to_string()).collect(),
        (0..n).map(|k| (format!("a{k}"), k, k + 1)).collect(),
    )
    .expect("path graph is valid")
}

/// The dot `D`: one node `0`, no arcs.
pub fn dot() -> Graph {
    path_graph(0)
}

/// The arrow `A`: nodes `0`, `1` and one arc `a` from `0` to `1`.
pub fn arrow() -> Graph {
    Graph::new(["0", "1"], [("a".into(), "0".into(), "1".into())]).expect("arrow is valid")
}

/// Categorical product: node pairs and arc pairs, incidence componentwise.
pub fn product(x: &Graph, y: &Graph) -> Graph {
    let ny = y.node_count();
    let mut nodes = Vec::with_capacity(x.node_count() * ny);
    for u in x.nodes() {
        for v in y.nodes() {
            nodes.push(pair_id(u, v));
        }
    }
    let mut arcs = Vec::with_capacity(x.arc_count() * y.arc_count());
    for a in x.arcs() {
        for b in y.arcs() {
            arcs.push((pair_id(&a.id, &b.id), a.src * ny + b.src, a.tgt * ny + b.tgt));
        }
    }
    Graph::from_indexed(nodes, arcs).expect("pair ids are unique")
}

pub struct Coproduct {
    pub graph: Arc<Graph>,
    pub left: GraphMorphism,
    pub right: GraphMorphism,
}

/// Disjoint union; ids are prefixed `0:` and `1:`.
pub fn coproduct(x: &Arc<Graph>, y: &Arc<Graph>) -> Coproduct {
    let nx = x.node_count();
    let nodes = x
        .nodes()
        .iter()
        .map(|n| format!("0:{n}"))
        .chain(y.nodes().iter().map(|n| format!("1:{n}")))
        .collect();
    let arcs = x
        .arcs()
        .iter()
        .map(|a| (format!("0:{}", a.id), a.src, a.tgt))
        .chain(y.arcs().iter().map(|a| (format!("1:{}", a.id), nx + a.src, nx + a.tgt)))
        .collect();
    let graph = Arc::new(Graph::from_indexed(nodes, arcs).expect("prefixed ids are unique"));
    let left = injection(x, &graph, "0:");
    let right = injection(y, &graph, "1:");
    Coproduct { graph, left, right }
}

fn injection(part: &Arc<Graph>, whole: &Arc<Graph>, prefix: &str) -> GraphMorphism {
    let node_map = part
        .nodes()
        .iter()
        .map(|n| whole.node_position(&format!("{prefix}{n}")).expect("injected node"))
        .collect();
    let arc_map = part
        .arcs()
        .iter()
        .map(|a| whole.arc_position(&format!("{prefix}{}", a.id)).expect("injected arc"))
        .collect();
    GraphMorphism::new_unchecked(Arc::clone(part), Arc::clone(whole), node_map, arc_map)
}

pub struct Pushout {
    pub graph: Arc<Graph>,
    /// From the target of the first leg.
    pub left: GraphMorphism,
    /// From the target of the second leg.
    pub right: GraphMorphism,
}

/// Pushout of `f: R -> X` and `g: R -> Y`.
///
/// The coproduct `X + Y` is quotiented by `f(r) ~ g(r)` with one union-find
/// over nodes and one over arcs. Each class is named by its least member id
/// in the coproduct.
pub fn pushout(f: &GraphMorphism, g: &GraphMorphism) -> Result<Pushout> {
    if !same_graph(f.source(), g.source()) {
        return Err(Error::Incompatible("pushout legs must share their source".into()));
    }
    let sum = coproduct(f.target(), g.target());
    let whole = &sum.graph;

    let mut nodes_uf = UnionFind::new(whole.node_count());
    for r in 0..f.source().node_count() {
        nodes_uf.union(sum.left.node(f.node(r)), sum.right.node(g.node(r)));
    }
    let mut arcs_uf = UnionFind::new(whole.arc_count());
    for r in 0..f.source().arc_count() {
        arcs_uf.union(sum.left.arc(f.arc(r)), sum.right.arc(g.arc(r)));
    }

    let node_classes = nodes_uf.classes();
    let mut node_class = vec![0; whole.node_count()];
    for (c, members) in node_classes.iter().enumerate() {
        for &m in members {
            node_class[m] = c;
        }
    }
    let arc_classes = arcs_uf.classes();
    let mut arc_class = vec![0; whole.arc_count()];
    for (c, members) in arc_classes.iter().enumerate() {
        for &m in members {
            arc_class[m] = c;
        }
    }

    // Members are ascending positions in a sorted graph, so the first member
    // carries the least id.
    let nodes: Vec<String> = node_classes.iter().map(|m| whole.node_id(m[0]).to_owned()).collect();
    let arcs: Vec<(String, usize, usize)> = arc_classes
        .iter()
        .map(|m| {
            let a = m[0];
            (whole.arc_id(a).to_owned(), node_class[whole.src(a)], node_class[whole.tgt(a)])
        })
        .collect();
    let graph = Arc::new(Graph::from_indexed(nodes, arcs)?);

    let quotient_node = |v: usize| graph.node_position(whole.node_id(node_classes[node_class[v]][0])).unwrap();
    let quotient_arc = |a: usize| graph.arc_position(whole.arc_id(arc_classes[arc_class[a]][0])).unwrap();
    let leg = |inj: &GraphMorphism| {
        GraphMorphism::new(
            Arc::clone(inj.source()),
            Arc::clone(&graph),
            inj.node_map().iter().map(|&v| quotient_node(v)).collect(),
            inj.arc_map().iter().map(|&a| quotient_arc(a)).collect(),
        )
    };
    let left = leg(&sum.left)?;
    let right = leg(&sum.right)?;
    Ok(Pushout { graph, left, right })
}

/// Connected components (ignoring direction), as ascending node positions.
pub fn connected_components(x: &Graph) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(x.node_count());
    for a in x.arcs() {
        uf.union(a.src, a.tgt);
    }
    uf.classes()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(id: &str, s: &str, t: &str) -> (String, String, String) {
        (id.into(), s.into(), t.into())
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Graph::new(["a", "a"], []).is_err());
        assert!(Graph::new(["a"], [arc("x", "a", "b")]).is_err());
        assert!(Graph::new(["a"], [arc("x", "a", "a"), arc("x", "a", "a")]).is_err());
        assert!(Graph::new(["a"], [arc("x", "a", "a"), arc("y", "a", "a")]).is_ok());
    }

    #[test]
    fn nodes_and_arcs_are_sorted() {
        let g = Graph::new(["b", "a"], [arc("z", "b", "a"), arc("y", "a", "a")]).unwrap();
        assert_eq!(g.nodes(), &["a".to_string(), "b".to_string()]);
        assert_eq!(g.arc_id(0), "y");
        assert_eq!(g.src(1), 1);
        assert_eq!(g.tgt(1), 0);
    }

    #[test]
    fn cycle_graph_shape() {
        assert!(cycle_graph(0).is_err());
        let c1 = cycle_graph(1).unwrap();
        assert_eq!((c1.node_count(), c1.arc_count(), c1.loop_count()), (1, 1, 1));
        let c3 = cycle_graph(3).unwrap();
        assert_eq!((c3.node_count(), c3.arc_count()), (3, 3));
        for v in 0..3 {
            assert_eq!(c3.indegree(v), 1);
            assert_eq!(c3.outdegree(v), 1);
        }
        // arc i runs from i+1 to i
        let a = c3.arc_position("2").unwrap();
        assert_eq!(c3.node_id(c3.src(a)), "0");
        assert_eq!(c3.node_id(c3.tgt(a)), "2");
    }

    #[test]
    fn path_graph_shape() {
        let p0 = path_graph(0);
        assert_eq!((p0.node_count(), p0.arc_count()), (1, 0));
        let p4 = path_graph(4);
        assert_eq!((p4.node_count(), p4.arc_count()), (5, 4));
        assert_eq!(arrow().node_count(), 2);
    }

    #[test]
    fn product_counts() {
        let c2 = cycle_graph(2).unwrap();
        let c3 = cycle_graph(3).unwrap();
        let p = product(&c2, &c3);
        assert_eq!(p.node_count(), 6);
        assert_eq!(p.arc_count(), 6);
        for v in 0..6 {
            assert_eq!(p.indegree(v), 1);
        }
    }

    #[test]
    fn pair_ids_are_injective() {
        assert_ne!(pair_id("a,b", "c"), pair_id("a", "b,c"));
        assert_ne!(pair_id("(a", "b)"), pair_id("(a,b)", ""));
    }

    #[test]
    fn coproduct_and_components() {
        let c2 = Arc::new(cycle_graph(2).unwrap());
        let c3 = Arc::new(cycle_graph(3).unwrap());
        let s = coproduct(&c2, &c3);
        assert_eq!((s.graph.node_count(), s.graph.arc_count()), (5, 5));
        assert_eq!(connected_components(&s.graph).len(), 2);
        assert!(s.left.is_injective() && s.right.is_injective());
        assert_eq!(connected_components(&Graph::empty()).len(), 0);
        assert_eq!(connected_components(&arrow()).len(), 1);
    }

    #[test]
    fn pushout_attaches_whisker() {
        // D -> A at 0 and D -> C_3 at node 1
        let d = Arc::new(dot());
        let a = Arc::new(arrow());
        let c3 = Arc::new(cycle_graph(3).unwrap());
        let s = GraphMorphism::new(d.clone(), a.clone(), vec![0], vec![]).unwrap();
        let at1 = GraphMorphism::new(d.clone(), c3.clone(), vec![1], vec![]).unwrap();
        let p = pushout(&s, &at1).unwrap();
        assert_eq!(p.graph.node_count(), 4);
        assert_eq!(p.graph.arc_count(), 4);
        // cocone commutes
        assert_eq!(s.then(&p.left).unwrap(), at1.then(&p.right).unwrap());
        // the fresh arc leaves the image of node 1
        let fresh = p.left.arc(0);
        assert_eq!(p.graph.src(fresh), p.right.node(1));
        assert!(p.right.is_injective());
    }

    #[test]
    fn pushout_of_identities() {
        let x = Arc::new(cycle_graph(4).unwrap());
        let id = GraphMorphism::identity(&x);
        let p = pushout(&id, &id).unwrap();
        assert_eq!(p.graph.node_count(), 4);
        assert!(p.left.is_isomorphism());
        assert_eq!(p.left, p.right);
    }

    #[test]
    fn pushout_requires_shared_source() {
        let x = Arc::new(cycle_graph(2).unwrap());
        let y = Arc::new(cycle_graph(3).unwrap());
        assert!(pushout(&GraphMorphism::identity(&x), &GraphMorphism::identity(&y)).is_err());
    }

    #[test]
    fn morphism_validation() {
        let c2 = Arc::new(cycle_graph(2).unwrap());
        let c1 = Arc::new(cycle_graph(1).unwrap());
        assert!(GraphMorphism::new(c2.clone(), c1.clone(), vec![0, 0], vec![0, 0]).is_ok());
        // C_1 -> C_2 cannot commute
        assert!(GraphMorphism::new(c1.clone(), c2.clone(), vec![0], vec![0]).is_err());
        assert!(GraphMorphism::new(c2.clone(), c1.clone(), vec![0], vec![0, 0]).is_err());
    }

    #[test]
    fn json_round_trip_and_strictness() {
        let g = cycle_graph(3).unwrap();
        let text = g.to_json_string();
        assert_eq!(Graph::from_json_str(&text).unwrap(), g);
        assert!(Graph::from_json_str(r#"{"nodes":[],"arcs":[],"extra":1}"#).is_err());
        assert!(Graph::from_json_str(r#"{"nodes":["a"],"arcs":[{"id":"x","src":"a","tgt":"b"}]}"#).is_err());

        let c2 = Arc::new(cycle_graph(2).unwrap());
        let c1 = Arc::new(cycle_graph(1).unwrap());
        let fold = GraphMorphism::new(c2, c1, vec![0, 0], vec![0, 0]).unwrap();
        let back = GraphMorphism::from_json_str(&fold.to_json_value().to_string()).unwrap();
        assert_eq!(back, fold);
    }

    #[test]
    fn induced_subgraph_inclusion() {
        let x = Arc::new(Graph::new(["a", "b", "c"], [arc("p", "a", "b"), arc("q", "b", "c"), arc("r", "a", "a")]).unwrap());
        let inc = x.induced_subgraph(&[0, 1]).unwrap();
        assert_eq!(inc.source().arc_count(), 2);
        assert!(inc.is_injective());
    }
}
