//! Random 3-uniform families at desk scale: sampling, bad-edge pruning,
//! supported-clique counts, the Ramsey counting bound and log-space
//! evaluation of the asymptotic parameter choices.
//!
//! Every random draw comes from ChaCha8 seeded with `seed_from_u64(seed)`
//! and switched to stream `i` for the `i`-th hypergraph, so identical
//! inputs reproduce identical outputs on every platform.

mod ramsey;
mod report;

use std::collections::BTreeSet;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypercore::{Edge, Hypergraph};

pub use ramsey::{
    fact_count_bound, property_b_toy_check, FactBound, PairColoring, PropertyB, Provenance,
    RamseyEntry, RamseyTable,
};
pub use report::{asymptotic_params, expectation_report, Estimate, ExpectationReport, LabParams};

/// Name recorded in reports so runs can be reproduced elsewhere.
pub const GENERATOR: &str = "ChaCha8Rng::seed_from_u64(seed), one stream per hypergraph";

pub(crate) fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn check_p(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "edge probability {p} outside [0, 1]"
        )))
    }
}

/// `H^(3)(n, p)`: every triple independently, in lexicographic order.
pub fn sample_h3(n: usize, p: f64, seed: u64) -> Result<Hypergraph> {
    sample_h3_stream(n, p, seed, 0)
}

pub fn sample_h3_stream(n: usize, p: f64, seed: u64, stream: u64) -> Result<Hypergraph> {
    check_p(p)?;
    let mut r = rng(seed, stream);
    let edges = (0..n as u32).combinations(3).filter(|_| r.random_bool(p));
    Hypergraph::from_edges(3, n, edges)
}

/// `k` independent samples on streams `0..k`.
pub fn sample_family(n: usize, p: f64, k: usize, seed: u64) -> Result<Vec<Hypergraph>> {
    (0..k as u64)
        .map(|i| sample_h3_stream(n, p, seed, i))
        .collect()
}

fn check_family(family: &[Hypergraph]) -> Result<()> {
    let Some(first) = family.first() else {
        return Err(Error::InvalidParameter("empty family".into()));
    };
    for h in family {
        if h.uniformity() != 3 {
            return Err(Error::UniformityMismatch {
                expected: 3,
                got: h.uniformity(),
            });
        }
        if h.vertex_count() != first.vertex_count() {
            return Err(Error::InvalidParameter(
                "family members differ in vertex count".into(),
            ));
        }
    }
    Ok(())
}

/// Per member: edges inside one of its `t`-cliques or shared with another member.
pub fn compute_bad_edges(family: &[Hypergraph], t: usize) -> Result<Vec<BTreeSet<Edge>>> {
    check_family(family)?;
    let mut bad = Vec::with_capacity(family.len());
    for (i, h) in family.iter().enumerate() {
        let mut set = BTreeSet::new();
        for c in h.cliques(t)? {
            for e in c.into_iter().combinations(3) {
                set.insert(Edge::of(&e));
            }
        }
        for (j, other) in family.iter().enumerate() {
            if i != j {
                set.extend(
                    h.edges()
                        .filter(|e| other.contains_edge(e.vertices()))
                        .cloned(),
                );
            }
        }
        bad.push(set);
    }
    Ok(bad)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PrunedFamily {
    pub sampled: Vec<Hypergraph>,
    pub bad: Vec<BTreeSet<Edge>>,
    pub pruned: Vec<Hypergraph>,
}

/// Removes the bad edges; the result is clique-free and pairwise edge-disjoint.
pub fn prune(family: &[Hypergraph], t: usize) -> Result<PrunedFamily> {
    let bad = compute_bad_edges(family, t)?;
    let pruned: Vec<Hypergraph> = family
        .iter()
        .zip(&bad)
        .map(|(h, b)| h.minus_edges(b))
        .collect();
    for (i, h) in pruned.iter().enumerate() {
        if h.clique_count(t)? != 0 {
            return Err(Error::Postcondition(format!(
                "pruned member {i} still has a {t}-clique"
            )));
        }
        if pruned[i + 1..].iter().any(|g| g.shares_edge_with(h)) {
            return Err(Error::Postcondition(format!(
                "pruned member {i} shares an edge"
            )));
        }
    }
    Ok(PrunedFamily {
        sampled: family.to_vec(),
        bad,
        pruned,
    })
}

/// `(t-1)`-sets monochromatic in color `x` under `psi` whose triples are all edges of `h`.
pub fn count_supported_cliques(
    h: &Hypergraph,
    psi: &PairColoring,
    x: u8,
    t: usize,
) -> Result<usize> {
    if psi.n() != h.vertex_count() {
        return Err(Error::InvalidParameter(
            "pair coloring and hypergraph differ in vertex count".into(),
        ));
    }
    Ok(h.cliques(t - 1)?
        .iter()
        .filter(|c| psi.is_mono(c, x))
        .count())
}

/// `(t-1)`-cliques of `h` that contain an edge of `bad`.
pub fn count_bad_supported(h: &Hypergraph, bad: &BTreeSet<Edge>, t: usize) -> Result<usize> {
    Ok(h.cliques(t - 1)?
        .iter()
        .filter(|c| {
            c.iter()
                .copied()
                .combinations(3)
                .any(|e| bad.contains(&e[..]))
        })
        .count())
}
