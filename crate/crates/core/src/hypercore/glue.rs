use std::collections::HashMap;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use super::{Hypergraph, Vertex};
use crate::error::{Error, Result};

/// Identifications `(vertex of A, vertex of B)` applied by [`glue`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlueMap {
    pub pairs: Vec<(Vertex, Vertex)>,
}

impl GlueMap {
    pub fn new() -> Self {
        GlueMap::default()
    }

    pub fn identify(mut self, a: Vertex, b: Vertex) -> Self {
        self.pairs.push((a, b));
        self
    }

    /// Identifies two edges position by position after sorting both.
    pub fn identify_sorted(mut self, a: &[Vertex], b: &[Vertex]) -> Self {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        a.sort_unstable();
        b.sort_unstable();
        self.pairs.extend(a.into_iter().zip(b));
        self
    }
}

/// Result of [`glue`]: the merged hypergraph and where each input vertex went.
#[derive(Debug, Clone)]
pub struct Glued {
    pub graph: Hypergraph,
    pub map_a: Vec<Vertex>,
    pub map_b: Vec<Vertex>,
}

/// Disjoint union of `a` and `b` followed by the identifications in `map`.
///
/// Vertices of `a` keep their ids; unmerged vertices of `b` follow in order.
/// Merging two vertices of the same side, directly or through a chain of
/// identifications, is rejected.
pub fn glue(a: &Hypergraph, b: &Hypergraph, map: &GlueMap) -> Result<Glued> {
    if a.r != b.r {
        return Err(Error::UniformityMismatch {
            expected: a.r,
            got: b.r,
        });
    }
    let (na, nb) = (a.n, b.n);
    let mut uf = UnionFind::<usize>::new(na + nb);
    for &(x, y) in &map.pairs {
        a.check_vertex(x)?;
        b.check_vertex(y)?;
        uf.union(x as usize, na + y as usize);
    }

    let mut rep_of_a: HashMap<usize, Vertex> = HashMap::new();
    for x in 0..na {
        if let Some(&other) = rep_of_a.get(&uf.find(x)) {
            return Err(Error::NonInjectiveGlue(other, x as Vertex));
        }
        rep_of_a.insert(uf.find(x), x as Vertex);
    }
    let mut rep_of_b: HashMap<usize, Vertex> = HashMap::new();
    for y in 0..nb {
        let root = uf.find(na + y);
        if let Some(&other) = rep_of_b.get(&root) {
            return Err(Error::NonInjectiveGlue(other, y as Vertex));
        }
        rep_of_b.insert(root, y as Vertex);
    }

    let map_a: Vec<Vertex> = (0..na as Vertex).collect();
    let mut next = na as Vertex;
    let mut map_b = Vec::with_capacity(nb);
    for y in 0..nb {
        let root = uf.find(na + y);
        match rep_of_a.get(&root) {
            Some(&x) => map_b.push(x),
            None => {
                map_b.push(next);
                next += 1;
            }
        }
    }

    let mut g = Hypergraph::new(a.r, next as usize)?;
    g.edges = a.edges.clone();
    for e in &b.edges {
        g.edges.insert(e.map(|v| map_b[v as usize])?);
    }
    g.labels = a.labels.clone();
    for (y, &target) in map_b.iter().enumerate() {
        if let Some(lb) = b.labels.get(&(y as Vertex)) {
            let merged = match g.labels.get(&target) {
                Some(la) if (target as usize) < na => format!("{la}={lb}"),
                _ => lb.clone(),
            };
            g.labels.insert(target, merged);
        }
    }
    Ok(Glued {
        graph: g,
        map_a,
        map_b,
    })
}
