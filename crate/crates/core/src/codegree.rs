//! The partition host with its prescribed red/blue coloring, the apex-pair
//! augmentation, and both directions of the codegree bound at small `t`.

use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::colorengine::{
    check_free, find_free_coloring, Color, EdgeColoring, Outcome, SearchOptions,
};
use crate::error::{Error, Result};
use crate::hypercore::{binomial, Edge, Hypergraph, Vertex};

pub const RED: Color = 1;
pub const BLUE: Color = 2;

/// Exhaustive completion checks refuse more free edges than this.
pub const MAX_FREE_EDGES: usize = 24;

/// `K_{(t-2)^2 + 2}^(3)` on `parts ∪ {a, b}` minus the edges through `{a, b}`
/// and minus the non-apex edges meeting exactly two parts.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PartitionHost {
    pub t: usize,
    pub graph: Hypergraph,
    /// `V_1, ..., V_{t-2}`: consecutive blocks of `0..(t-2)^2`.
    pub parts: Vec<Vec<Vertex>>,
    pub a: Vertex,
    pub b: Vertex,
    /// Blue inside some `V_i ∪ {a}` or `V_i ∪ {b}`, red elsewhere.
    pub coloring: EdgeColoring,
}

pub fn build_partition_host(t: usize) -> Result<PartitionHost> {
    if t < 4 {
        return Err(Error::OutOfRange {
            what: "t (need t >= 4)",
            size: t,
        });
    }
    let s = t - 2;
    let a = (s * s) as Vertex;
    let b = a + 1;
    let part_of = |v: Vertex| v as usize / s;
    let parts: Vec<Vec<Vertex>> = (0..s)
        .map(|i| ((i * s) as Vertex..((i + 1) * s) as Vertex).collect())
        .collect();

    let mut graph = Hypergraph::new(3, s * s + 2)?;
    graph.set_label(a, "a");
    graph.set_label(b, "b");
    let mut coloring = EdgeColoring::new(2)?;
    for tri in (0..b + 1).combinations(3) {
        let apexes = tri.iter().filter(|&&v| v >= a).count();
        let inner: Vec<usize> = tri
            .iter()
            .filter(|&&v| v < a)
            .map(|&v| part_of(v))
            .collect();
        let distinct = inner.iter().unique().count();
        let color = match (apexes, distinct, inner.len()) {
            (2, _, _) => None,
            (_, 1, _) => Some(BLUE),
            (_, d, n) if d == n => Some(RED),
            _ => None,
        };
        if let Some(color) = color {
            let e = Edge::new(tri)?;
            graph.add_edge(e.clone())?;
            coloring.set(e, color)?;
        }
    }
    let host = PartitionHost {
        t,
        graph,
        parts,
        a,
        b,
        coloring,
    };
    let bad = check_free(&host.graph, &host.coloring, t)?;
    if !bad.is_empty() {
        return Err(Error::Postcondition(format!(
            "host coloring has {} monochromatic cliques",
            bad.len()
        )));
    }
    Ok(host)
}

impl PartitionHost {
    /// The `(t-2)^2` edges `{a, b, u}`.
    pub fn apex_edges(&self) -> Vec<Edge> {
        (0..self.a)
            .map(|u| Edge::of(&[u, self.a, self.b]))
            .collect()
    }

    pub fn augmented(&self) -> Hypergraph {
        augment_apex_pair(self)
    }
}

pub fn augment_apex_pair(host: &PartitionHost) -> Hypergraph {
    let mut h = host.graph.clone();
    for e in host.apex_edges() {
        h.add_edge(e).expect("apex edge lies in the host");
    }
    h
}

/// `(t-2) + (t-2)^(t-2)`.
pub fn expected_host_cliques(t: usize) -> u128 {
    let s = t as u128 - 2;
    s + s.pow(s as u32)
}

pub fn count_host_cliques(h: &Hypergraph, t: usize) -> Result<usize> {
    h.clique_count(t)
}

/// Outcome of [`forced_pattern_check`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForcingReport {
    /// Every completion has a monochromatic clique.
    pub forced: bool,
    pub free_edges: Vec<Edge>,
    pub assignments: u64,
    /// A completion (colors of `free_edges`) with no monochromatic clique.
    pub counterexample: Option<Vec<Color>>,
}

/// With the host edges fixed to the prescribed coloring, checks every
/// red/blue assignment of the remaining edges of `augmented` for a
/// monochromatic `t`-clique.
pub fn forced_pattern_check(
    host: &PartitionHost,
    augmented: &Hypergraph,
    t: usize,
) -> Result<ForcingReport> {
    for e in augmented.edges() {
        if !host.graph.contains_edge(e.vertices()) && !e.contains_all(&[host.a, host.b]) {
            return Err(Error::InvalidParameter(format!(
                "{e} is neither a host edge nor an apex-pair edge"
            )));
        }
    }
    let free_edges: Vec<Edge> = augmented
        .edges()
        .filter(|e| !host.graph.contains_edge(e.vertices()))
        .cloned()
        .collect();
    if free_edges.len() > MAX_FREE_EDGES {
        return Err(Error::TooLarge(format!("{} free edges", free_edges.len())));
    }
    let free_index: HashMap<&[Vertex], usize> = free_edges
        .iter()
        .enumerate()
        .map(|(i, e)| (e.vertices(), i))
        .collect();

    // Each clique becomes (fixed color or None if mixed, masks of its free edges).
    struct Clique {
        fixed: Option<Color>,
        free: u64,
    }
    let mut cliques = Vec::new();
    for c in augmented.cliques(t)? {
        let mut fixed: BTreeSet<Color> = BTreeSet::new();
        let mut free = 0u64;
        for e in c.iter().copied().combinations(3) {
            match free_index.get(&e[..]) {
                Some(&i) => free |= 1 << i,
                None => {
                    fixed.insert(
                        host.coloring
                            .get(&e)
                            .ok_or_else(|| Error::PartialColoring(Edge::of(&e)))?,
                    );
                }
            }
        }
        let fixed = match fixed.len() {
            0 => None,
            1 => fixed.first().copied(),
            _ => continue,
        };
        cliques.push(Clique { fixed, free });
    }

    let total = 1u64 << free_edges.len();
    // Bit i set means free edge i is blue.
    let mono = |mask: u64| {
        cliques.iter().any(|c| {
            let blue = mask & c.free;
            match c.fixed {
                Some(RED) => blue == 0,
                Some(_) => blue == c.free,
                None => blue == 0 || blue == c.free,
            }
        })
    };
    let counterexample = (0..total).find(|&m| !mono(m)).map(|m| {
        (0..free_edges.len())
            .map(|i| if m >> i & 1 == 1 { BLUE } else { RED })
            .collect()
    });
    Ok(ForcingReport {
        forced: counterexample.is_none(),
        free_edges,
        assignments: total,
        counterexample,
    })
}

/// Disjoint blocks `B_i` and the extended coloring.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExtensionCertificate {
    pub u: Vertex,
    pub v: Vertex,
    pub blocks: Vec<Vec<Vertex>>,
    pub extended: EdgeColoring,
}

/// Extends a free coloring of `h` minus the edges through `{u, v}` to all of `h`.
///
/// Greedily packs disjoint `(t-2)`-subsets `B` of `N(u, v)`, in lexicographic
/// order, with every edge of `h` inside `B ∪ {u}` and `B ∪ {v}` blue. Then
/// `{u, v, w}` is red for `w` in some `B` and blue otherwise. The extension
/// is verified free; failure is reported as an error.
pub fn extend_coloring_lower_bound(
    h: &Hypergraph,
    u: Vertex,
    v: Vertex,
    partial: &EdgeColoring,
    t: usize,
) -> Result<ExtensionCertificate> {
    if t < 4 {
        return Err(Error::OutOfRange {
            what: "t (need t >= 4)",
            size: t,
        });
    }
    if partial.k() != 2 {
        return Err(Error::InvalidParameter(
            "lower-bound extension needs a 2-coloring".into(),
        ));
    }
    let bound = (t - 2) * (t - 2);
    let codegree = h.codegree(u, v)?;
    if codegree >= bound {
        return Err(Error::LowerBoundPrecondition { codegree, bound });
    }
    let through: Vec<Edge> = h
        .edges()
        .filter(|e| e.contains_all(&[u, v]))
        .cloned()
        .collect();
    let rest = h.minus_edges(&through);
    let bad = check_free(&rest, partial, t)?;
    if !bad.is_empty() {
        return Err(Error::NotFree(bad.len()));
    }

    let nbrs = h.common_neighbours(u, v)?;
    let all_blue = |set: &[Vertex]| {
        rest.edges_within(set)
            .iter()
            .all(|e| partial.get(e.vertices()) == Some(BLUE))
    };
    let mut used: BTreeSet<Vertex> = BTreeSet::new();
    let mut blocks = Vec::new();
    for cand in nbrs.iter().copied().combinations(t - 2) {
        if cand.iter().any(|w| used.contains(w)) {
            continue;
        }
        let with_u: Vec<Vertex> = cand.iter().copied().chain([u]).collect();
        let with_v: Vec<Vertex> = cand.iter().copied().chain([v]).collect();
        if all_blue(&with_u) && all_blue(&with_v) {
            used.extend(cand.iter().copied());
            blocks.push(cand);
        }
    }

    let mut extended = partial.clone();
    for e in &through {
        let w = e
            .vertices()
            .iter()
            .copied()
            .find(|&w| w != u && w != v)
            .unwrap();
        extended.set(e.clone(), if used.contains(&w) { RED } else { BLUE })?;
    }
    let bad = check_free(h, &extended, t)?;
    if !bad.is_empty() {
        return Err(Error::LowerBoundFailed(bad.len()));
    }
    Ok(ExtensionCertificate {
        u,
        v,
        blocks,
        extended,
    })
}

/// `((t-2) + (t-2)^(t-2)) * 2^(1 - C(t, 3))` exactly, and whether it is below one.
pub fn random_coloring_expectation(t: usize) -> Result<(BigRational, bool)> {
    if t < 4 {
        return Err(Error::OutOfRange {
            what: "t (need t >= 4)",
            size: t,
        });
    }
    let s = BigInt::from(t - 2);
    let cliques = &s + num_traits::pow(s.clone(), t - 2);
    let exponent = binomial(t as u64, 3) as usize - 1;
    let value = BigRational::new(cliques, num_traits::pow(BigInt::from(2), exponent));
    let lt_one = value < BigRational::one();
    Ok((value, lt_one))
}

/// A free 2-coloring of the augmented host, whose existence the expectation bound guarantees.
pub fn verify_s22_zero_step(
    augmented: &Hypergraph,
    t: usize,
    opts: &SearchOptions,
) -> Result<EdgeColoring> {
    let verdict = find_free_coloring(augmented, t, 2, opts)?;
    match verdict.outcome {
        Outcome::Free(c) => Ok(c),
        Outcome::Arrows => Err(Error::Postcondition("augmented host arrows".into())),
        Outcome::Unknown => Err(Error::Unknown {
            nodes: verdict.nodes,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn host_t4() {
        let host = build_partition_host(4).unwrap();
        assert_eq!(host.graph.vertex_count(), 6);
        assert_eq!(host.graph.edge_count(), 12);
        assert_eq!(host.coloring.histogram(), vec![8, 4]);
        assert_eq!(host.graph.codegree(host.a, host.b).unwrap(), 0);
        assert!(build_partition_host(3).is_err());
    }

    #[test]
    fn augmentation() {
        for t in [4, 5] {
            let host = build_partition_host(t).unwrap();
            let aug = host.augmented();
            let s = (t - 2) * (t - 2);
            assert_eq!(aug.edge_count(), host.graph.edge_count() + s);
            assert_eq!(aug.codegree(host.a, host.b).unwrap(), s);
            assert_eq!(count_host_cliques(&host.graph, t).unwrap(), 0);
            assert_eq!(
                count_host_cliques(&aug, t).unwrap() as u128,
                expected_host_cliques(t)
            );
        }
    }

    #[test]
    fn forcing_t4() {
        let host = build_partition_host(4).unwrap();
        let aug = host.augmented();
        let r = forced_pattern_check(&host, &aug, 4).unwrap();
        assert!(r.forced);
        assert_eq!(r.assignments, 16);
        let bare = forced_pattern_check(&host, &host.graph, 4).unwrap();
        assert!(!bare.forced);
        for e in host.apex_edges() {
            assert!(
                !forced_pattern_check(&host, &aug.without_edge(e.vertices()), 4)
                    .unwrap()
                    .forced
            );
        }
    }

    #[test]
    fn expectation_values() {
        let (v, lt) = random_coloring_expectation(4).unwrap();
        assert_eq!(v.to_string(), "3/4");
        assert!(lt);
        assert_eq!(
            random_coloring_expectation(5).unwrap().0.to_string(),
            "15/256"
        );
    }

    #[test]
    fn extension_on_host_minus_apex_edge() {
        let host = build_partition_host(4).unwrap();
        let aug = host.augmented();
        let h = aug.without_edge(&[0, 4, 5]);
        let rest = h.minus_edges(&host.apex_edges());
        let partial = find_free_coloring(&rest, 4, 2, &SearchOptions::default()).unwrap();
        let cert = extend_coloring_lower_bound(&h, 4, 5, partial.witness().unwrap(), 4).unwrap();
        assert!(check_free(&h, &cert.extended, 4).unwrap().is_empty());
        assert!(matches!(
            extend_coloring_lower_bound(&aug, 4, 5, partial.witness().unwrap(), 4),
            Err(Error::LowerBoundPrecondition {
                codegree: 4,
                bound: 4
            })
        ));
    }
}
