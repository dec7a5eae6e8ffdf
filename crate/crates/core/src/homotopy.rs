//! Homotopy classes of finite graphs.
//!
//! Two finite graphs are homotopy equivalent exactly when they have the same
//! reversed characteristic polynomial `det(I - uA)`, equivalently the same
//! closed-walk counts `c_n` for every `n`. The power sums `c_1..c_d` fix a
//! degree-`d` polynomial through Newton's identities, so comparing counts up
//! to the larger node count is a complete second check.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::named::{builtin_family, from_multiplicities};
use crate::search::{is_isomorphic, Budget};
use crate::spectral::{adjacency_matrix, cycle_counts};
use crate::witt::AlmostFiniteZSet;
use crate::IntPolynomial;

/// `det(I - uA)`, the complete homotopy invariant of a finite graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomotopySignature(IntPolynomial);

impl HomotopySignature {
    pub fn polynomial(&self) -> &IntPolynomial {
        &self.0
    }

    pub fn is_trivial(&self) -> bool {
        self.0 == IntPolynomial::one()
    }
}

impl fmt::Display for HomotopySignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.display("u"))
    }
}

pub fn signature(x: &Graph) -> HomotopySignature {
    HomotopySignature(adjacency_matrix(x).reversed_char_poly())
}

/// Compares signatures and, independently, closed-walk counts up to the
/// larger node count; the two must agree.
pub fn homotopy_equivalent(x: &Graph, y: &Graph) -> Result<bool> {
    let by_poly = signature(x) == signature(y);
    let bound = x.node_count().max(y.node_count());
    let by_counts = cycle_counts(x, bound) == cycle_counts(y, bound);
    if by_poly != by_counts {
        return Err(Error::InternalInconsistency(format!(
            "signature comparison says {by_poly}, cycle counts up to {bound} say {by_counts}"
        )));
    }
    Ok(by_poly)
}

/// Equivariant maps from the orbits of period at most `bound` in the
/// bi-infinite walks of `x` to the periodic walks of `y`:
/// `prod_{n <= bound} c_n(y)^{s_n(x)}`.
pub fn hom_count_bounded(x: &Graph, y: &Graph, bound: usize) -> Result<BigInt> {
    if bound == 0 {
        return Err(Error::InvalidArgument("hom count needs a bound >= 1".into()));
    }
    let s = AlmostFiniteZSet::from_graph(x).witts(bound)?;
    let c = cycle_counts(y, bound);
    let mut total = BigInt::one();
    for (sn, cn) in s.iter().zip(&c) {
        if sn.is_zero() || cn.is_one() {
            continue;
        }
        if cn.is_zero() {
            return Ok(BigInt::zero());
        }
        let e = sn.to_u32().ok_or_else(|| {
            Error::InvalidArgument(format!("exponent {sn} is too large to evaluate exactly"))
        })?;
        total *= num_traits::pow(cn.clone(), e as usize);
    }
    Ok(total)
}

/// Components of the truncated cycle resolution: `sum_{n <= bound} s_n`.
pub fn derived_components(x: &Graph, bound: usize) -> Result<BigInt> {
    Ok(AlmostFiniteZSet::from_graph(x).witts(bound)?.into_iter().sum())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// The named example graphs.
    Builtin,
    /// Every digraph up to isomorphism.
    All,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Builtin => "builtin",
            Family::All => "all",
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ExploreConfig {
    pub max_nodes: usize,
    pub max_arcs: usize,
    pub family: Family,
    /// Search budget for enumeration and for each isomorphism test.
    pub budget: u64,
}

#[derive(Clone, Debug)]
pub struct BucketMember {
    pub name: String,
    pub graph: Arc<Graph>,
}

#[derive(Clone, Debug)]
pub struct PairVerdict {
    pub a: usize,
    pub b: usize,
    pub isomorphic: bool,
}

/// Graphs sharing one signature, with pairwise isomorphism verdicts.
#[derive(Clone, Debug)]
pub struct Bucket {
    pub signature: HomotopySignature,
    pub members: Vec<BucketMember>,
    pub pairs: Vec<PairVerdict>,
}

impl Bucket {
    pub fn has_non_isomorphic_pair(&self) -> bool {
        self.pairs.iter().any(|p| !p.isomorphic)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.members.iter().any(|m| m.name == name)
    }
}

#[derive(Clone, Debug)]
pub struct ExploreReport {
    pub config: ExploreConfig,
    pub graphs_examined: usize,
    /// Buckets with at least two members, in order of first appearance.
    pub buckets: Vec<Bucket>,
}

impl ExploreReport {
    pub fn bucket_of(&self, name: &str) -> Option<&Bucket> {
        self.buckets.iter().find(|b| b.contains(name))
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let buckets: Vec<serde_json::Value> = self
            .buckets
            .iter()
            .map(|b| {
                serde_json::json!({
                    "signature": b.signature.to_string(),
                    "signature_coeffs": b.signature.polynomial().to_json_coeffs(),
                    "nontrivial": !b.signature.is_trivial(),
                    "non_isomorphic": b.has_non_isomorphic_pair(),
                    "members": b.members.iter().map(|m| serde_json::json!({
                        "name": m.name,
                        "graph": m.graph.to_json_value(),
                    })).collect::<Vec<_>>(),
                    "pairs": b.pairs.iter().map(|p| serde_json::json!({
                        "a": b.members[p.a].name,
                        "b": b.members[p.b].name,
                        "isomorphic": p.isomorphic,
                    })).collect::<Vec<_>>(),
                })
            })
            .collect();
        serde_json::json!({
            "family": self.config.family.name(),
            "max_nodes": self.config.max_nodes,
            "max_arcs": self.config.max_arcs,
            "graphs": self.graphs_examined,
            "buckets": buckets,
        })
    }

    pub fn summary(&self) -> String {
        let mut s = format!(
            "{} graphs, {} shared signatures\n",
            self.graphs_examined,
            self.buckets.len()
        );
        for b in &self.buckets {
            let names: Vec<&str> = b.members.iter().map(|m| m.name.as_str()).collect();
            let tag = if b.has_non_isomorphic_pair() { "non-isomorphic" } else { "all isomorphic" };
            s.push_str(&format!("{}: {} [{}]\n", b.signature, names.join(", "), tag));
        }
        s
    }
}

/// Lexicographically least row-major form over all node permutations.
fn canonical_form(m: &[Vec<usize>]) -> Vec<usize> {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let flatten = |p: &[usize]| -> Vec<usize> { (0..n * n).map(|k| m[p[k / n]][p[k % n]]).collect() };
    let mut best = flatten(&perm);
    while next_permutation(&mut perm) {
        let cand = flatten(&perm);
        if cand < best {
            best = cand;
        }
    }
    best
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = p.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = p.iter().rposition(|&x| x > p[i]).expect("a larger element exists");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// Every adjacency multiplicity matrix with at most `max_nodes` nodes and
/// `max_arcs` arcs, one per isomorphism class.
pub fn all_digraphs(max_nodes: usize, max_arcs: usize, budget: &mut Budget) -> Result<Vec<(String, Graph)>> {
    fn fill(
        cells: usize,
        left: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        budget: &mut Budget,
    ) -> Result<()> {
        if cur.len() == cells {
            budget.tick()?;
            out.push(cur.clone());
            return Ok(());
        }
        for k in 0..=left {
            cur.push(k);
            fill(cells, left - k, cur, out, budget)?;
            cur.pop();
        }
        Ok(())
    }

    let mut graphs = Vec::new();
    for n in 0..=max_nodes {
        let mut flat = Vec::new();
        fill(n * n, max_arcs, &mut Vec::new(), &mut flat, budget)?;
        let mut seen = HashSet::new();
        for f in flat {
            let m: Vec<Vec<usize>> = f.chunks(n.max(1)).take(n).map(<[usize]>::to_vec).collect();
            if canonical_form(&m) != f || !seen.insert(f) {
                continue;
            }
            let rows: Vec<String> = m
                .iter()
                .map(|r| r.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(","))
                .collect();
            graphs.push((format!("adj:{}", rows.join(";")), from_multiplicities(&m)));
        }
    }
    Ok(graphs)
}

/// Buckets graphs by signature and certifies (non-)isomorphism inside each
/// bucket. Signatures and isomorphism tests run in parallel.
pub fn explore(config: ExploreConfig) -> Result<ExploreReport> {
    let graphs = match config.family {
        Family::Builtin => builtin_family(config.max_nodes, config.max_arcs),
        Family::All => all_digraphs(config.max_nodes, config.max_arcs, &mut Budget::new(config.budget))?,
    };
    let signatures: Vec<HomotopySignature> = graphs.par_iter().map(|(_, g)| signature(g)).collect();

    let mut index: HashMap<HomotopySignature, usize> = HashMap::new();
    let mut groups: Vec<(HomotopySignature, Vec<BucketMember>)> = Vec::new();
    for ((name, g), sig) in graphs.iter().zip(signatures) {
        let slot = *index.entry(sig.clone()).or_insert_with(|| {
            groups.push((sig, Vec::new()));
            groups.len() - 1
        });
        groups[slot].1.push(BucketMember {
            name: name.clone(),
            graph: Arc::new(g.clone()),
        });
    }

    let buckets = groups
        .into_iter()
        .filter(|(_, members)| members.len() >= 2)
        .map(|(signature, members)| {
            let idx: Vec<(usize, usize)> = (0..members.len())
                .flat_map(|a| (a + 1..members.len()).map(move |b| (a, b)))
                .collect();
            let pairs = idx
                .par_iter()
                .map(|&(a, b)| {
                    let mut budget = Budget::new(config.budget);
                    let iso = is_isomorphic(&members[a].graph, &members[b].graph, &mut budget)?;
                    Ok(PairVerdict { a, b, isomorphic: iso.is_some() })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Bucket { signature, members, pairs })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(ExploreReport {
        config,
        graphs_examined: graphs.len(),
        buckets,
    })
}
