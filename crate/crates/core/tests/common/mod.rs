#![allow(dead_code)]

use std::sync::Arc;

use gph_core::graph::{pushout, Graph, GraphMorphism};
use gph_core::homotopy::all_digraphs;
use gph_core::model::source_inclusion;
use gph_core::named::from_multiplicities;
use gph_core::search::Budget;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every adjacency multiplicity matrix with `<= max_nodes` nodes and
/// `<= max_arcs` arcs, labeled (not reduced up to isomorphism).
pub fn labeled_corpus(max_nodes: usize, max_arcs: usize) -> Vec<Graph> {
    fn fill(cells: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == cells {
            out.push(cur.clone());
            return;
        }
        for k in 0..=left {
            cur.push(k);
            fill(cells, left - k, cur, out);
            cur.pop();
        }
    }
    let mut graphs = Vec::new();
    for n in 0..=max_nodes {
        let mut flat = Vec::new();
        fill(n * n, max_arcs, &mut Vec::new(), &mut flat);
        for f in flat {
            let m: Vec<Vec<usize>> = f.chunks(n.max(1)).take(n).map(<[usize]>::to_vec).collect();
            graphs.push(from_multiplicities(&m));
        }
    }
    graphs
}

/// One graph per isomorphism class.
pub fn iso_corpus(max_nodes: usize, max_arcs: usize) -> Vec<Graph> {
    all_digraphs(max_nodes, max_arcs, &mut Budget::default())
        .expect("small corpus fits the budget")
        .into_iter()
        .map(|(_, g)| g)
        .collect()
}

/// Between 1 and `max_nodes` nodes, up to `max_arcs` arcs with uniform
/// endpoints; loops and parallel arcs allowed.
pub fn random_graph(rng: &mut ChaCha8Rng, max_nodes: usize, max_arcs: usize) -> Graph {
    let n = rng.gen_range(1..=max_nodes);
    let m = rng.gen_range(0..=max_arcs);
    let arcs: Vec<(String, usize, usize)> = (0..m)
        .map(|k| (format!("e{k}"), rng.gen_range(0..n), rng.gen_range(0..n)))
        .collect();
    Graph::from_indexed((0..n).map(|i| format!("v{i}")).collect(), arcs).expect("random graph is valid")
}

pub fn random_graphs(seed: u64, count: usize, max_nodes: usize, max_arcs: usize) -> Vec<Graph> {
    let mut r = rng(seed);
    (0..count).map(|_| random_graph(&mut r, max_nodes, max_arcs)).collect()
}

/// Attaches `k` whiskers one at a time, each by a pushout of `s: D -> A`
/// at a random node, and returns the composite inclusion.
pub fn random_whiskering(rng: &mut ChaCha8Rng, x: &Arc<Graph>, k: usize) -> GraphMorphism {
    let s = source_inclusion();
    let mut w = GraphMorphism::identity(x);
    for _ in 0..k {
        let y = Arc::clone(w.target());
        if y.node_count() == 0 {
            break;
        }
        let at = rng.gen_range(0..y.node_count());
        let pick = GraphMorphism::new(Arc::clone(s.source()), Arc::clone(&y), vec![at], vec![]).expect("dot picks a node");
        let po = pushout(&pick, &s).expect("pushout along s");
        w = w.then(&po.left).expect("composable");
    }
    w
}

pub fn mobius_oracle(n: u64) -> i64 {
    let mut primes = 0;
    let mut m = n;
    let mut p = 2;
    while m > 1 {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return 0;
            }
            primes += 1;
        }
        p += 1;
    }
    if primes % 2 == 0 {
        1
    } else {
        -1
    }
}
