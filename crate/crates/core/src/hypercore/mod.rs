//! Uniform hypergraphs over dense integer vertex ids, plus the combinatorial
//! primitives every other module builds on: links, ℓ-degrees, clique
//! enumeration, induced subhypergraphs, gluing and the 3-path distance.
//!
//! Vertices are always `0..n`. Constructions that merge or drop vertices
//! renumber densely and carry the history in free-form labels.

mod cliques;
mod glue;
mod json;
mod path;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use glue::{glue, GlueMap, Glued};
pub use json::{HypergraphDoc, Tags};
pub use path::Distance;

pub type Vertex = u32;

/// A strictly increasing tuple of distinct vertices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vertex>", into = "Vec<Vertex>")]
pub struct Edge(Vec<Vertex>);

impl Edge {
    /// Sorts the vertices; fails if any vertex repeats.
    pub fn new(mut verts: Vec<Vertex>) -> Result<Self> {
        verts.sort_unstable();
        if verts.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::RepeatedVertex(verts));
        }
        Ok(Edge(verts))
    }

    /// Panics on repeated vertices. Intended for literals in builders and tests.
    pub fn of(verts: &[Vertex]) -> Self {
        Edge::new(verts.to_vec()).expect("edge with repeated vertex")
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn contains_all(&self, s: &[Vertex]) -> bool {
        s.iter().all(|&v| self.contains(v))
    }

    pub fn intersection(&self, other: &Edge) -> Vec<Vertex> {
        self.0
            .iter()
            .copied()
            .filter(|&v| other.contains(v))
            .collect()
    }

    pub fn without(&self, v: Vertex) -> Edge {
        Edge(self.0.iter().copied().filter(|&u| u != v).collect())
    }

    /// Applies a vertex map; fails if the image collapses two vertices.
    pub fn map(&self, f: impl Fn(Vertex) -> Vertex) -> Result<Edge> {
        Edge::new(self.0.iter().map(|&v| f(v)).collect())
    }
}

impl TryFrom<Vec<Vertex>> for Edge {
    type Error = Error;
    fn try_from(v: Vec<Vertex>) -> Result<Self> {
        Edge::new(v)
    }
}

impl From<Edge> for Vec<Vertex> {
    fn from(e: Edge) -> Self {
        e.0
    }
}

impl std::borrow::Borrow<[Vertex]> for Edge {
    fn borrow(&self) -> &[Vertex] {
        &self.0
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().join(","))
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// An r-uniform hypergraph on the vertex set `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Hypergraph {
    r: usize,
    n: usize,
    edges: BTreeSet<Edge>,
    labels: BTreeMap<Vertex, String>,
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Hypergraph")
            .field("r", &self.r)
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

impl Hypergraph {
    /// Edgeless hypergraph; uniformity 1 is allowed only to represent links of graphs.
    pub fn new(r: usize, n: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::BadUniformity(r));
        }
        Ok(Hypergraph {
            r,
            n,
            edges: BTreeSet::new(),
            labels: BTreeMap::new(),
        })
    }

    pub fn from_edges<I, E>(r: usize, n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[Vertex]>,
    {
        let mut h = Hypergraph::new(r, n)?;
        for e in edges {
            h.add_edge(Edge::new(e.as_ref().to_vec())?)?;
        }
        Ok(h)
    }

    /// `K_n^(r)`.
    pub fn complete(r: usize, n: usize) -> Result<Self> {
        let mut h = Hypergraph::new(r, n)?;
        for c in (0..n as Vertex).combinations(r) {
            h.edges.insert(Edge(c));
        }
        Ok(h)
    }

    pub fn uniformity(&self) -> usize {
        self.r
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n as Vertex
    }

    /// Edges in ascending lexicographic order.
    pub fn edges(&self) -> impl ExactSizeIterator<Item = &Edge> + Clone {
        self.edges.iter()
    }

    pub fn edge_set(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn has_vertex(&self, v: Vertex) -> bool {
        (v as usize) < self.n
    }

    pub fn contains_edge(&self, e: &[Vertex]) -> bool {
        self.edges.contains(e)
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if self.has_vertex(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    /// Adds an edge; returns false when it was already present.
    pub fn add_edge(&mut self, e: Edge) -> Result<bool> {
        if e.len() != self.r {
            return Err(Error::WrongEdgeSize {
                got: e.len(),
                edge: e.0,
                expected: self.r,
            });
        }
        if let Some(&v) = e.0.iter().find(|&&v| !self.has_vertex(v)) {
            return Err(Error::UnknownVertex(v));
        }
        Ok(self.edges.insert(e))
    }

    pub fn remove_edge(&mut self, e: &[Vertex]) -> bool {
        self.edges.remove(e)
    }

    pub fn without_edge(&self, e: &[Vertex]) -> Hypergraph {
        let mut h = self.clone();
        h.edges.remove(e);
        h
    }

    /// Appends a fresh isolated vertex and returns its id.
    pub fn add_vertex(&mut self, label: Option<String>) -> Vertex {
        let v = self.n as Vertex;
        self.n += 1;
        if let Some(l) = label {
            self.labels.insert(v, l);
        }
        v
    }

    pub fn label(&self, v: Vertex) -> Option<&str> {
        self.labels.get(&v).map(String::as_str)
    }

    pub fn labels(&self) -> &BTreeMap<Vertex, String> {
        &self.labels
    }

    pub fn set_label(&mut self, v: Vertex, label: impl Into<String>) {
        self.labels.insert(v, label.into());
    }

    /// Prefixes every label (or the bare id when unlabelled) with `prefix`.
    pub fn prefix_labels(&mut self, prefix: &str) {
        for v in self.vertices() {
            let l = match self.labels.get(&v) {
                Some(old) => format!("{prefix}{old}"),
                None => format!("{prefix}{v}"),
            };
            self.labels.insert(v, l);
        }
    }

    /// Edges containing `v`, minus `v`; uniformity drops by one.
    pub fn link(&self, v: Vertex) -> Result<Hypergraph> {
        self.check_vertex(v)?;
        let mut link = Hypergraph::new(self.r - 1, self.n)?;
        link.edges = self
            .edges
            .iter()
            .filter(|e| e.contains(v))
            .map(|e| e.without(v))
            .collect();
        Ok(link)
    }

    /// Vertices actually covered by the edges of `link(v)`.
    pub fn link_vertices(&self, v: Vertex) -> Result<BTreeSet<Vertex>> {
        Ok(self
            .link(v)?
            .edges
            .iter()
            .flat_map(|e| e.0.iter().copied())
            .collect())
    }

    /// Number of edges containing the set `s`; requires `1 <= |s| <= r-1`.
    pub fn degree(&self, s: &[Vertex]) -> Result<usize> {
        let set = Edge::new(s.to_vec())?;
        if set.is_empty() || set.len() >= self.r {
            return Err(Error::OutOfRange {
                what: "degree set (need 1 <= |S| <= r-1)",
                size: set.len(),
            });
        }
        for &v in set.vertices() {
            self.check_vertex(v)?;
        }
        Ok(self
            .edges
            .iter()
            .filter(|e| e.contains_all(set.vertices()))
            .count())
    }

    pub fn codegree(&self, u: Vertex, v: Vertex) -> Result<usize> {
        self.degree(&[u, v])
    }

    /// Third vertices `w` with `{u, v, w}` an edge (3-uniform only).
    pub fn common_neighbours(&self, u: Vertex, v: Vertex) -> Result<Vec<Vertex>> {
        if self.r != 3 {
            return Err(Error::UniformityMismatch {
                expected: 3,
                got: self.r,
            });
        }
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self
            .edges
            .iter()
            .filter(|e| e.contains(u) && e.contains(v))
            .map(|e| e.0.iter().copied().find(|&w| w != u && w != v).unwrap())
            .collect())
    }

    fn ell_degree_counts(&self, ell: usize) -> Result<HashMap<Vec<Vertex>, usize>> {
        if ell == 0 || ell >= self.r {
            return Err(Error::OutOfRange {
                what: "ell (need 1 <= ell <= r-1)",
                size: ell,
            });
        }
        let mut counts = HashMap::new();
        for e in &self.edges {
            for s in e.0.iter().copied().combinations(ell) {
                *counts.entry(s).or_insert(0) += 1;
            }
        }
        Ok(counts)
    }

    /// `δ_ℓ(H)`: the minimum degree over all ℓ-subsets of the vertex set.
    pub fn min_ell_degree(&self, ell: usize) -> Result<usize> {
        let counts = self.ell_degree_counts(ell)?;
        let subsets = binomial(self.n as u64, ell as u64);
        if subsets == 0 {
            return Err(Error::OutOfRange {
                what: "ell exceeds vertex count",
                size: ell,
            });
        }
        if (counts.len() as u128) < subsets {
            return Ok(0);
        }
        Ok(counts.values().copied().min().unwrap_or(0))
    }

    /// Minimum degree over ℓ-sets of positive degree; `None` if there is none.
    pub fn min_positive_degree(&self, ell: usize) -> Result<Option<usize>> {
        Ok(self.ell_degree_counts(ell)?.values().copied().min())
    }

    pub fn min_positive_codegree(&self) -> Result<Option<usize>> {
        self.min_positive_degree(2)
    }

    /// Number of edges through each covered pair, keyed `(u, v)` with `u < v`.
    pub fn pair_degrees(&self) -> HashMap<(Vertex, Vertex), usize> {
        let mut counts = HashMap::new();
        for e in &self.edges {
            for pair in e.0.iter().copied().tuple_combinations::<(Vertex, Vertex)>() {
                *counts.entry(pair).or_insert(0) += 1;
            }
        }
        counts
    }

    /// Edges containing both `u` and `v`, for any uniformity.
    pub fn pair_degree(&self, u: Vertex, v: Vertex) -> usize {
        self.edges
            .iter()
            .filter(|e| e.contains(u) && e.contains(v))
            .count()
    }

    /// Induced subhypergraph on `s`, renumbered in ascending order of `s`.
    pub fn induced(&self, s: &[Vertex]) -> Result<Hypergraph> {
        let keep: BTreeSet<Vertex> = s.iter().copied().collect();
        for &v in &keep {
            self.check_vertex(v)?;
        }
        let index: HashMap<Vertex, Vertex> = keep
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i as Vertex))
            .collect();
        let mut h = Hypergraph::new(self.r, keep.len())?;
        for e in &self.edges {
            if e.0.iter().all(|v| keep.contains(v)) {
                h.edges.insert(e.map(|v| index[&v])?);
            }
        }
        for (&old, &new) in &index {
            if let Some(l) = self.labels.get(&old) {
                h.labels.insert(new, l.clone());
            }
        }
        Ok(h)
    }

    /// Edges lying inside `s`, in original ids.
    pub fn edges_within(&self, s: &[Vertex]) -> Vec<Edge> {
        let keep: BTreeSet<Vertex> = s.iter().copied().collect();
        self.edges
            .iter()
            .filter(|e| e.0.iter().all(|v| keep.contains(v)))
            .cloned()
            .collect()
    }

    /// Girth at least 3: distinct edges share at most one vertex.
    pub fn is_linear(&self) -> bool {
        if self.r < 2 {
            return true;
        }
        let mut seen = std::collections::HashSet::new();
        for e in &self.edges {
            for pair in e.0.iter().copied().tuple_combinations::<(Vertex, Vertex)>() {
                if !seen.insert(pair) {
                    return false;
                }
            }
        }
        true
    }

    /// Drops isolated vertices and renumbers the rest in ascending order.
    pub fn without_isolated(&self) -> Hypergraph {
        let used: Vec<Vertex> = self
            .edges
            .iter()
            .flat_map(|e| e.0.iter().copied())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        self.induced(&used).expect("covered vertices exist")
    }

    /// Degrees of all vertices.
    pub fn vertex_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            for &v in &e.0 {
                deg[v as usize] += 1;
            }
        }
        deg
    }

    /// Edge-disjoint check against another hypergraph on the same ids.
    pub fn shares_edge_with(&self, other: &Hypergraph) -> bool {
        let (small, large) = if self.edges.len() <= other.edges.len() {
            (self, other)
        } else {
            (other, self)
        };
        small.edges.iter().any(|e| large.edges.contains(e))
    }

    /// Edge set difference; vertex set unchanged.
    pub fn minus_edges<'a>(&self, remove: impl IntoIterator<Item = &'a Edge>) -> Hypergraph {
        let mut h = self.clone();
        for e in remove {
            h.edges.remove(e);
        }
        h
    }
}

/// `C(n, k)` as u128, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(r: usize, n: usize) -> Hypergraph {
        Hypergraph::complete(r, n).unwrap()
    }

    #[test]
    fn link_of_single_edge() {
        let h = Hypergraph::from_edges(3, 3, [[0, 1, 2]]).unwrap();
        let l = h.link(0).unwrap();
        assert_eq!(l.uniformity(), 2);
        assert_eq!(
            l.edges().cloned().collect::<Vec<_>>(),
            vec![Edge::of(&[1, 2])]
        );
    }

    #[test]
    fn link_in_k4_is_triangle() {
        let l = k(3, 4).link(3).unwrap();
        let expected: Vec<Edge> = [[0, 1], [0, 2], [1, 2]]
            .iter()
            .map(|e| Edge::of(e))
            .collect();
        assert_eq!(l.edges().cloned().collect::<Vec<_>>(), expected);
        assert!(matches!(k(3, 4).link(9), Err(Error::UnknownVertex(9))));
    }

    #[test]
    fn degree_and_codegree() {
        let h = k(3, 4);
        assert_eq!(h.degree(&[0, 1]).unwrap(), 2);
        assert!(h.degree(&[0, 7]).is_err());
        assert!(h.degree(&[0, 1, 2]).is_err());
        for v in h.vertices() {
            assert_eq!(h.degree(&[v]).unwrap(), h.link(v).unwrap().edge_count());
        }
    }

    #[test]
    fn min_degrees_of_k5() {
        let h = k(3, 5);
        assert_eq!(h.min_ell_degree(1).unwrap(), 6);
        assert_eq!(h.min_ell_degree(2).unwrap(), 3);
        assert!(h.min_ell_degree(3).is_err());
        let mut g = h.clone();
        g.add_vertex(None);
        assert_eq!(g.min_ell_degree(2).unwrap(), 0);
        assert_eq!(g.min_positive_codegree().unwrap(), Some(3));
    }

    #[test]
    fn induced_subhypergraphs() {
        let h = k(3, 5);
        assert_eq!(
            h.induced(&[0, 2, 3, 4]).unwrap().edge_set(),
            k(3, 4).edge_set()
        );
        let empty = h.induced(&[]).unwrap();
        assert_eq!((empty.vertex_count(), empty.edge_count()), (0, 0));
    }

    #[test]
    fn linearity() {
        assert!(Hypergraph::from_edges(3, 3, [[0, 1, 2]])
            .unwrap()
            .is_linear());
        assert!(!Hypergraph::from_edges(3, 4, [[0, 1, 2], [1, 2, 3]])
            .unwrap()
            .is_linear());
        let fano = [
            [0, 1, 2],
            [0, 3, 4],
            [0, 5, 6],
            [1, 3, 5],
            [1, 4, 6],
            [2, 3, 6],
            [2, 4, 5],
        ];
        assert!(Hypergraph::from_edges(3, 7, fano).unwrap().is_linear());
    }

    #[test]
    fn edge_validation() {
        let mut h = Hypergraph::new(3, 4).unwrap();
        assert!(h.add_edge(Edge::of(&[0, 1])).is_err());
        assert!(h.add_edge(Edge::of(&[0, 1, 9])).is_err());
        assert!(Edge::new(vec![1, 1, 2]).is_err());
        assert!(h.add_edge(Edge::of(&[2, 0, 1])).unwrap());
        assert!(!h.add_edge(Edge::of(&[0, 1, 2])).unwrap());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(12, 3), 220);
        assert_eq!(binomial(5, 7), 0);
        assert_eq!(binomial(64, 32), 1_832_624_140_942_590_534);
    }
}
