//! Exhaustive morphism search.
//!
//! Morphisms are found by backtracking over arc assignments. Once an arc is
//! placed its endpoints are fixed, so node images follow from arcs; nodes
//! without arcs are assigned last. With parallel arcs the arc map carries the
//! real information, so searching over node maps alone would undercount.
//!
//! Every candidate tried costs one unit of a [`Budget`]; running out is an
//! error rather than a hang.

use std::ops::ControlFlow;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphMorphism};

pub const DEFAULT_SEARCH_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug)]
pub struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, used: 0 }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::BudgetExceeded { limit: self.limit })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_SEARCH_BUDGET)
    }
}

/// Restrictions on where each source element may go.
///
/// `node_ok[v][w]` says whether source node `v` may map to target node `w`;
/// `arc_candidates[a]` lists the admissible images of source arc `a` in the
/// order they are tried.
#[derive(Clone, Debug)]
pub struct Constraints {
    pub node_ok: Vec<Vec<bool>>,
    pub arc_candidates: Vec<Vec<usize>>,
    /// Require injectivity on nodes and arcs.
    pub injective: bool,
}

impl Constraints {
    pub fn unconstrained(source: &Graph, target: &Graph) -> Self {
        Constraints {
            node_ok: vec![vec![true; target.node_count()]; source.node_count()],
            arc_candidates: vec![(0..target.arc_count()).collect(); source.arc_count()],
            injective: false,
        }
    }

    /// Pins source node `v` to target node `w`.
    pub fn fix_node(&mut self, v: usize, w: usize) {
        for (k, ok) in self.node_ok[v].iter_mut().enumerate() {
            *ok &= k == w;
        }
    }

    pub fn fix_arc(&mut self, a: usize, b: usize) {
        self.arc_candidates[a].retain(|&c| c == b);
    }
}

struct Search<'a, F> {
    source: &'a Graph,
    target: &'a Graph,
    constraints: &'a Constraints,
    arc_order: Vec<usize>,
    free_nodes: Vec<usize>,
    node_img: Vec<Option<usize>>,
    arc_img: Vec<usize>,
    node_used: Vec<bool>,
    arc_used: Vec<bool>,
    budget: &'a mut Budget,
    visit: F,
}

impl<F> Search<'_, F>
where
    F: FnMut(&[usize], &[usize]) -> ControlFlow<()>,
{
    fn can_place_node(&self, v: usize, w: usize) -> bool {
        match self.node_img[v] {
            Some(cur) => cur == w,
            None => self.constraints.node_ok[v][w] && !(self.constraints.injective && self.node_used[w]),
        }
    }

    fn place_node(&mut self, v: usize, w: usize) -> bool {
        if self.node_img[v].is_some() {
            return false;
        }
        self.node_img[v] = Some(w);
        self.node_used[w] = true;
        true
    }

    fn unplace_node(&mut self, v: usize) {
        if let Some(w) = self.node_img[v].take() {
            self.node_used[w] = false;
        }
    }

    fn arcs(&mut self, k: usize) -> Result<ControlFlow<()>> {
        if k == self.arc_order.len() {
            return self.nodes(0);
        }
        let a = self.arc_order[k];
        let (u, v) = (self.source.src(a), self.source.tgt(a));
        for i in 0..self.constraints.arc_candidates[a].len() {
            let b = self.constraints.arc_candidates[a][i];
            self.budget.tick()?;
            if self.constraints.injective && self.arc_used[b] {
                continue;
            }
            let (bs, bt) = (self.target.src(b), self.target.tgt(b));
            if !self.can_place_node(u, bs) {
                continue;
            }
            let placed_u = self.place_node(u, bs);
            if !self.can_place_node(v, bt) {
                if placed_u {
                    self.unplace_node(u);
                }
                continue;
            }
            let placed_v = self.place_node(v, bt);
            self.arc_img[a] = b;
            self.arc_used[b] = true;
            let flow = self.arcs(k + 1);
            self.arc_used[b] = false;
            if placed_v {
                self.unplace_node(v);
            }
            if placed_u {
                self.unplace_node(u);
            }
            if flow?.is_break() {
                return Ok(ControlFlow::Break(()));
            }
        }
        Ok(ControlFlow::Continue(()))
    }

    fn nodes(&mut self, k: usize) -> Result<ControlFlow<()>> {
        if k == self.free_nodes.len() {
            let nodes: Vec<usize> = self.node_img.iter().map(|w| w.expect("all nodes placed")).collect();
            return Ok((self.visit)(&nodes, &self.arc_img));
        }
        let v = self.free_nodes[k];
        for w in 0..self.target.node_count() {
            self.budget.tick()?;
            if !self.can_place_node(v, w) {
                continue;
            }
            self.place_node(v, w);
            let flow = self.nodes(k + 1);
            self.unplace_node(v);
            if flow?.is_break() {
                return Ok(ControlFlow::Break(()));
            }
        }
        Ok(ControlFlow::Continue(()))
    }
}

/// Places arcs so that each one after the first in its component touches an
/// already-placed node, which keeps the candidate lists short.
fn arc_order(g: &Graph) -> Vec<usize> {
    let mut placed_node = vec![false; g.node_count()];
    let mut placed_arc = vec![false; g.arc_count()];
    let mut order = Vec::with_capacity(g.arc_count());
    let mut queue = std::collections::VecDeque::new();
    for start in 0..g.arc_count() {
        if placed_arc[start] {
            continue;
        }
        queue.push_back(start);
        placed_arc[start] = true;
        while let Some(a) = queue.pop_front() {
            order.push(a);
            for v in [g.src(a), g.tgt(a)] {
                if std::mem::replace(&mut placed_node[v], true) {
                    continue;
                }
                for &b in g.out_arcs(v).iter().chain(g.in_arcs(v)) {
                    if !placed_arc[b] {
                        placed_arc[b] = true;
                        queue.push_back(b);
                    }
                }
            }
        }
    }
    order
}

/// Visits every morphism `source -> target` satisfying `constraints`, in a
/// deterministic order, until the visitor breaks.
pub fn search_morphisms<F>(
    source: &Graph,
    target: &Graph,
    constraints: &Constraints,
    budget: &mut Budget,
    visit: F,
) -> Result<ControlFlow<()>>
where
    F: FnMut(&[usize], &[usize]) -> ControlFlow<()>,
{
    let free_nodes = (0..source.node_count())
        .filter(|&v| source.outdegree(v) == 0 && source.indegree(v) == 0)
        .collect();
    let mut search = Search {
        source,
        target,
        constraints,
        arc_order: arc_order(source),
        free_nodes,
        node_img: vec![None; source.node_count()],
        arc_img: vec![0; source.arc_count()],
        node_used: vec![false; target.node_count()],
        arc_used: vec![false; target.arc_count()],
        budget,
        visit,
    };
    search.arcs(0)
}

/// Every graph morphism `x -> y`, without duplicates, in search order.
pub fn enumerate_morphisms(x: &Arc<Graph>, y: &Arc<Graph>, budget: &mut Budget) -> Result<Vec<GraphMorphism>> {
    let mut out = Vec::new();
    let constraints = Constraints::unconstrained(x, y);
    let _ = search_morphisms(x, y, &constraints, budget, |nodes, arcs| {
        out.push(GraphMorphism::new_unchecked(
            Arc::clone(x),
            Arc::clone(y),
            nodes.to_vec(),
            arcs.to_vec(),
        ));
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

pub fn count_morphisms(x: &Graph, y: &Graph, budget: &mut Budget) -> Result<u64> {
    let mut count = 0u64;
    let constraints = Constraints::unconstrained(x, y);
    let _ = search_morphisms(x, y, &constraints, budget, |_, _| {
        count += 1;
        ControlFlow::Continue(())
    })?;
    Ok(count)
}

fn degree_profile(g: &Graph, v: usize) -> (usize, usize, usize) {
    let loops = g.out_arcs(v).iter().filter(|&&a| g.tgt(a) == v).count();
    (g.indegree(v), g.outdegree(v), loops)
}

/// An isomorphism `x -> y` if one exists.
pub fn is_isomorphic(x: &Arc<Graph>, y: &Arc<Graph>, budget: &mut Budget) -> Result<Option<GraphMorphism>> {
    if x.node_count() != y.node_count() || x.arc_count() != y.arc_count() {
        return Ok(None);
    }
    let mut constraints = Constraints::unconstrained(x, y);
    constraints.injective = true;
    for v in 0..x.node_count() {
        let p = degree_profile(x, v);
        for w in 0..y.node_count() {
            constraints.node_ok[v][w] = degree_profile(y, w) == p;
        }
    }
    let mut witness = None;
    let _ = search_morphisms(x, y, &constraints, budget, |nodes, arcs| {
        witness = Some(GraphMorphism::new_unchecked(
            Arc::clone(x),
            Arc::clone(y),
            nodes.to_vec(),
            arcs.to_vec(),
        ));
        ControlFlow::Break(())
    })?;
    Ok(witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{arrow, coproduct, cycle_graph, dot, product};
    use crate::named::{cross, figure_eight, uc4};

    fn arc_g(g: Graph) -> Arc<Graph> {
        Arc::new(g)
    }

    #[test]
    fn loops_into_figure_eight() {
        let c1 = arc_g(cycle_graph(1).unwrap());
        let f8 = arc_g(figure_eight());
        let ms = enumerate_morphisms(&c1, &f8, &mut Budget::default()).unwrap();
        assert_eq!(ms.len(), 2);
        assert_ne!(ms[0], ms[1]);
    }

    #[test]
    fn arrow_endomorphisms() {
        let a = arc_g(arrow());
        let ms = enumerate_morphisms(&a, &a, &mut Budget::default()).unwrap();
        assert_eq!(ms, vec![GraphMorphism::identity(&a)]);
    }

    #[test]
    fn cycles_into_cycles() {
        // |Hom(C_n, C_m)| = m when m | n, else 0
        for n in 1..=6 {
            for m in 1..=6 {
                let cn = cycle_graph(n).unwrap();
                let cm = cycle_graph(m).unwrap();
                let count = count_morphisms(&cn, &cm, &mut Budget::default()).unwrap();
                let expected = if n % m == 0 { m as u64 } else { 0 };
                assert_eq!(count, expected, "C_{n} -> C_{m}");
            }
        }
    }

    #[test]
    fn isolated_nodes_map_anywhere() {
        let d = dot();
        let c3 = cycle_graph(3).unwrap();
        assert_eq!(count_morphisms(&d, &c3, &mut Budget::default()).unwrap(), 3);
        assert_eq!(count_morphisms(&Graph::empty(), &c3, &mut Budget::default()).unwrap(), 1);
        assert_eq!(count_morphisms(&d, &Graph::empty(), &mut Budget::default()).unwrap(), 0);
    }

    #[test]
    fn budget_guard_fires() {
        let c6 = cycle_graph(6).unwrap();
        let f8 = figure_eight();
        // 2^6 closed walks need more than 10 candidate tries
        let err = count_morphisms(&c6, &f8, &mut Budget::new(10)).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { limit: 10 }));
    }

    #[test]
    fn isomorphism_checks() {
        let c3 = arc_g(cycle_graph(3).unwrap());
        let w = is_isomorphic(&c3, &c3, &mut Budget::default()).unwrap().unwrap();
        assert!(w.is_isomorphism());

        let cr = arc_g(cross());
        let u = arc_g(uc4());
        assert!(is_isomorphic(&cr, &u, &mut Budget::default()).unwrap().is_none());

        let c6 = arc_g(cycle_graph(6).unwrap());
        let p = arc_g(product(&cycle_graph(2).unwrap(), &cycle_graph(3).unwrap()));
        let w = is_isomorphic(&c6, &p, &mut Budget::default()).unwrap().unwrap();
        assert!(w.is_isomorphism());

        let c2 = arc_g(cycle_graph(2).unwrap());
        let sum = coproduct(&c2, &c3).graph;
        assert!(is_isomorphic(&c6, &sum, &mut Budget::default()).unwrap().is_none());
    }

    #[test]
    fn parallel_arcs_are_distinguished() {
        // two parallel arcs a->b: two automorphisms (swap the arcs)
        let g = arc_g(
            Graph::new(
                ["a", "b"],
                [("x".into(), "a".into(), "b".into()), ("y".into(), "a".into(), "b".into())],
            )
            .unwrap(),
        );
        assert_eq!(enumerate_morphisms(&g, &g, &mut Budget::default()).unwrap().len(), 4);
        let mut auts = 0;
        let mut c = Constraints::unconstrained(&g, &g);
        c.injective = true;
        let _ = search_morphisms(&g, &g, &c, &mut Budget::default(), |_, _| {
            auts += 1;
            ControlFlow::Continue(())
        })
        .unwrap();
        assert_eq!(auts, 2);
    }
}
