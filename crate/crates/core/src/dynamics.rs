//! Finite N-sets and Z-sets.
//!
//! An N-set is a set with an endofunction `sigma`; a Z-set is one where
//! `sigma` is a bijection. The Cayley graph of `(S, sigma)` has `S` as both
//! nodes and arcs, with arc `x` running from `sigma(x)` to `x`. This
//! identifies N-sets with graphs in which every node has exactly one
//! incoming arc, and the classifiers here are the graph classifiers read
//! through that identification.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphMorphism};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "NSetJson", into = "NSetJson")]
pub struct FinNSet {
    elements: Vec<String>,
    sigma: Vec<usize>,
}

impl FinNSet {
    /// Builds from element ids and `(x, sigma(x))` pairs; `sigma` must be total.
    pub fn new<E, P>(elements: E, sigma: P) -> Result<FinNSet>
    where
        E: IntoIterator,
        E::Item: Into<String>,
        P: IntoIterator<Item = (String, String)>,
    {
        let mut elements: Vec<String> = elements.into_iter().map(Into::into).collect();
        elements.sort();
        if let Some(w) = elements.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidNSet(format!("duplicate element `{}`", w[0])));
        }
        let index: HashMap<&str, usize> =
            elements.iter().enumerate().map(|(i, e)| (e.as_str(), i)).collect();
        let mut image = vec![None; elements.len()];
        for (x, y) in sigma {
            let xi = *index
                .get(x.as_str())
                .ok_or_else(|| Error::InvalidNSet(format!("sigma is given on unknown element `{x}`")))?;
            let yi = *index
                .get(y.as_str())
                .ok_or_else(|| Error::InvalidNSet(format!("sigma(`{x}`) = unknown element `{y}`")))?;
            if image[xi].replace(yi).is_some() {
                return Err(Error::InvalidNSet(format!("sigma given twice on `{x}`")));
            }
        }
        let sigma = image
            .iter()
            .enumerate()
            .map(|(i, s)| s.ok_or_else(|| Error::InvalidNSet(format!("sigma undefined on `{}`", elements[i]))))
            .collect::<Result<Vec<_>>>()?;
        Ok(FinNSet { elements, sigma })
    }

    /// From positions: `sigma[i]` is the position of the image of element `i`.
    ///
    /// `elements` must already be sorted and distinct.
    pub fn from_indexed(elements: Vec<String>, sigma: Vec<usize>) -> Result<FinNSet> {
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidNSet("elements must be sorted and distinct".into()));
        }
        if sigma.len() != elements.len() || sigma.iter().any(|&s| s >= elements.len()) {
            return Err(Error::InvalidNSet("sigma must be a total map into the set".into()));
        }
        Ok(FinNSet { elements, sigma })
    }

    /// `Z/n` with `sigma(i) = i + 1 mod n`.
    pub fn cyclic(n: usize) -> FinNSet {
        let elements: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let pairs = (0..n).map(|i| (i.to_string(), ((i + 1) % n).to_string()));
        FinNSet::new(elements, pairs).expect("cyclic set is valid")
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn position(&self, id: &str) -> Option<usize> {
        self.elements.binary_search_by(|e| e.as_str().cmp(id)).ok()
    }

    pub fn iterate(&self, x: usize, times: usize) -> usize {
        (0..times).fold(x, |y, _| self.sigma[y])
    }

    pub fn is_bijective(&self) -> bool {
        let mut hit = vec![false; self.len()];
        self.sigma.iter().all(|&y| !std::mem::replace(&mut hit[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        self.is_bijective()
    }

    /// Elements `x` with `sigma^n(x) = x`.
    pub fn fixed_points_of_power(&self, n: usize) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.iterate(x, n) == x).collect()
    }

    /// Preimages `sigma^{-1}(x)` for every `x`.
    pub fn preimages(&self) -> Vec<Vec<usize>> {
        let mut pre = vec![Vec::new(); self.len()];
        for (x, &y) in self.sigma.iter().enumerate() {
            pre[y].push(x);
        }
        pre
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("N-set serializes")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NSetJson {
    elements: Vec<String>,
    sigma: BTreeMap<String, String>,
}

impl TryFrom<NSetJson> for FinNSet {
    type Error = Error;

    fn try_from(j: NSetJson) -> Result<FinNSet> {
        FinNSet::new(j.elements, j.sigma)
    }
}

impl From<FinNSet> for NSetJson {
    fn from(s: FinNSet) -> NSetJson {
        let sigma = s
            .sigma
            .iter()
            .enumerate()
            .map(|(x, &y)| (s.elements[x].clone(), s.elements[y].clone()))
            .collect();
        NSetJson { elements: s.elements, sigma }
    }
}

/// A finite N-set whose `sigma` is a bijection.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FinNSet", into = "FinNSet")]
pub struct FinZSet(FinNSet);

impl FinZSet {
    pub fn new(set: FinNSet) -> Result<FinZSet> {
        if set.is_bijective() {
            Ok(FinZSet(set))
        } else {
            Err(Error::InvalidNSet("sigma is not a bijection".into()))
        }
    }

    pub fn as_nset(&self) -> &FinNSet {
        &self.0
    }

    pub fn into_nset(self) -> FinNSet {
        self.0
    }

    /// Orbit sizes, ascending by smallest member.
    pub fn orbit_lengths(&self) -> Vec<usize> {
        let s = &self.0;
        let mut seen = vec![false; s.len()];
        let mut out = Vec::new();
        for x in 0..s.len() {
            if seen[x] {
                continue;
            }
            let mut len = 0;
            let mut y = x;
            while !seen[y] {
                seen[y] = true;
                len += 1;
                y = s.sigma[y];
            }
            out.push(len);
        }
        out
    }
}

impl TryFrom<FinNSet> for FinZSet {
    type Error = Error;

    fn try_from(s: FinNSet) -> Result<FinZSet> {
        FinZSet::new(s)
    }
}

impl From<FinZSet> for FinNSet {
    fn from(z: FinZSet) -> FinNSet {
        z.0
    }
}

/// An equivariant map `f` with `sigma' . f = f . sigma`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "NSetMapJson", into = "NSetMapJson")]
pub struct NSetMap {
    source: FinNSet,
    target: FinNSet,
    map: Vec<usize>,
}

impl NSetMap {
    pub fn new(source: FinNSet, target: FinNSet, map: Vec<usize>) -> Result<NSetMap> {
        if map.len() != source.len() || map.iter().any(|&y| y >= target.len()) {
            return Err(Error::InvalidNSet("map must be total into the target".into()));
        }
        for x in 0..source.len() {
            if target.sigma[map[x]] != map[source.sigma[x]] {
                return Err(Error::InvalidNSet(format!(
                    "map does not commute with sigma at `{}`",
                    source.elements[x]
                )));
            }
        }
        Ok(NSetMap { source, target, map })
    }

    pub fn identity(s: &FinNSet) -> NSetMap {
        NSetMap {
            source: s.clone(),
            target: s.clone(),
            map: (0..s.len()).collect(),
        }
    }

    pub fn source(&self) -> &FinNSet {
        &self.source
    }

    pub fn target(&self) -> &FinNSet {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.target.len()];
        self.map.iter().all(|&y| !std::mem::replace(&mut hit[y], true))
    }

    pub fn is_bijective(&self) -> bool {
        self.source.len() == self.target.len() && self.is_injective()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NSetMapJson {
    source: FinNSet,
    target: FinNSet,
    map: BTreeMap<String, String>,
}

impl TryFrom<NSetMapJson> for NSetMap {
    type Error = Error;

    fn try_from(j: NSetMapJson) -> Result<NSetMap> {
        let mut map = Vec::with_capacity(j.source.len());
        for x in j.source.elements() {
            let y = j
                .map
                .get(x)
                .ok_or_else(|| Error::InvalidNSet(format!("map undefined on `{x}`")))?;
            map.push(
                j.target
                    .position(y)
                    .ok_or_else(|| Error::InvalidNSet(format!("`{x}` maps to unknown element `{y}`")))?,
            );
        }
        if j.map.len() != j.source.len() {
            return Err(Error::InvalidNSet("map names elements outside the source".into()));
        }
        NSetMap::new(j.source, j.target, map)
    }
}

impl From<NSetMap> for NSetMapJson {
    fn from(f: NSetMap) -> NSetMapJson {
        let map = f
            .map
            .iter()
            .enumerate()
            .map(|(x, &y)| (f.source.elements[x].clone(), f.target.elements[y].clone()))
            .collect();
        NSetMapJson { source: f.source, target: f.target, map }
    }
}

/// Nodes and arcs are the elements; arc `x` runs from `sigma(x)` to `x`.
pub fn cayley_graph(s: &FinNSet) -> Graph {
    Graph::from_indexed(
        s.elements.clone(),
        s.elements
            .iter()
            .enumerate()
            .map(|(x, id)| (id.clone(), s.sigma[x], x))
            .collect(),
    )
    .expect("element ids are unique")
}

/// The map on Cayley graphs induced by an N-set map (the same function on
/// nodes and on arcs).
pub fn cayley_morphism(f: &NSetMap) -> GraphMorphism {
    GraphMorphism::new_unchecked(
        Arc::new(cayley_graph(&f.source)),
        Arc::new(cayley_graph(&f.target)),
        f.map.clone(),
        f.map.clone(),
    )
}

/// Inverse of [`cayley_graph`]: `sigma(x)` is the source of the unique arc
/// entering `x`.
pub fn graph_to_nset(x: &Graph) -> Result<FinNSet> {
    let mut sigma = Vec::with_capacity(x.node_count());
    for v in 0..x.node_count() {
        match x.in_arcs(v) {
            [a] => sigma.push(x.src(*a)),
            other => {
                return Err(Error::NotAnNGraph {
                    node: x.node_id(v).to_owned(),
                    indegree: other.len(),
                })
            }
        }
    }
    FinNSet::from_indexed(x.nodes().to_vec(), sigma)
}

/// The periodic elements, `{x : sigma^n(x) = x for some n > 0}`.
///
/// In a finite set these are exactly the image of `sigma^{|S|}`.
pub fn periodic_part(s: &FinNSet) -> FinZSet {
    let n = s.len();
    let mut periodic = vec![false; n];
    for x in 0..n {
        periodic[s.iterate(x, n)] = true;
    }
    let keep: Vec<usize> = (0..n).filter(|&x| periodic[x]).collect();
    let mut rank = vec![usize::MAX; n];
    for (i, &x) in keep.iter().enumerate() {
        rank[x] = i;
    }
    let set = FinNSet {
        elements: keep.iter().map(|&x| s.elements[x].clone()).collect(),
        sigma: keep.iter().map(|&x| rank[s.sigma[x]]).collect(),
    };
    FinZSet::new(set).expect("sigma permutes the periodic elements")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NSetMapFlags {
    /// Bijective on `n`-periodic points for every `n <= bound`.
    pub acyclic: bool,
    pub bound: usize,
    pub surjecting: bool,
    pub whiskering: bool,
}

/// Classifies an N-set map. `bound` defaults to `max(|S|, |T|)`, which
/// covers every period that occurs.
pub fn classify_nset_map(f: &NSetMap, bound: Option<usize>) -> NSetMapFlags {
    let (s, t) = (&f.source, &f.target);
    let bound = bound.unwrap_or(s.len().max(t.len()));

    let s_pre = s.preimages();
    let t_pre = t.preimages();
    let surjecting = (0..s.len()).all(|x| {
        let mut hit = vec![false; t.len()];
        for &y in &s_pre[x] {
            hit[f.map[y]] = true;
        }
        t_pre[f.map[x]].iter().all(|&z| hit[z])
    });

    let whiskering = f.is_injective() && {
        let mut in_image = vec![false; t.len()];
        for &y in &f.map {
            in_image[y] = true;
        }
        (0..t.len()).all(|y| {
            let mut z = y;
            for _ in 0..=t.len() {
                if in_image[z] {
                    return true;
                }
                z = t.sigma[z];
            }
            false
        })
    };

    let acyclic = (1..=bound).all(|n| {
        let fixed_s = s.fixed_points_of_power(n);
        let fixed_t = t.fixed_points_of_power(n);
        let mut hit = vec![false; t.len()];
        let injective = fixed_s.iter().all(|&x| !std::mem::replace(&mut hit[f.map[x]], true));
        injective && fixed_s.len() == fixed_t.len()
    });

    NSetMapFlags { acyclic, bound, surjecting, whiskering }
}

/// For a map of finite Z-sets: bijective on periodic parts, which for finite
/// Z-sets is bijectivity of the map itself.
pub fn zset_is_acyclic(f: &NSetMap) -> Result<bool> {
    if !f.source.is_bijective() || !f.target.is_bijective() {
        return Err(Error::InvalidNSet("zset_is_acyclic needs Z-sets on both sides".into()));
    }
    let js = periodic_part(&f.source);
    let jt = periodic_part(&f.target);
    debug_assert_eq!(js.as_nset().len(), f.source.len());
    Ok(js.as_nset().len() == jt.as_nset().len() && f.is_injective())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fibrancy {
    pub fibrant: bool,
    pub cofibrant: bool,
}

/// Fibrant iff `sigma` is surjective. Cofibrant iff every trajectory is
/// finite, which holds for every finite N-set.
pub fn nset_fibrancy(s: &FinNSet) -> Fibrancy {
    Fibrancy {
        fibrant: s.is_surjective(),
        cofibrant: true,
    }
}
