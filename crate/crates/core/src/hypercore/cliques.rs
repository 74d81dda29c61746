use std::collections::HashSet;

use itertools::Itertools;

use super::{Hypergraph, Vertex};
use crate::error::{Error, Result};

impl Hypergraph {
    /// All `t`-sets whose every `r`-subset is an edge, in lexicographic order.
    ///
    /// Grows cliques in increasing vertex order. A candidate `w` survives the
    /// addition of `v` iff every `(r-2)`-subset `T` of the current clique
    /// gives an edge `T ∪ {v, w}`; the first level is seeded from the
    /// pair shadow so that only vertices sharing an edge with `v` remain.
    pub fn cliques(&self, t: usize) -> Result<Vec<Vec<Vertex>>> {
        if t < self.r {
            return Err(Error::OutOfRange {
                what: "clique size (need t >= r)",
                size: t,
            });
        }
        let edges: HashSet<&[Vertex]> = self.edges.iter().map(|e| e.vertices()).collect();
        let mut shadow: Vec<Vec<Vertex>> = vec![Vec::new(); self.n];
        if self.r >= 2 {
            let mut pairs = HashSet::new();
            for e in &self.edges {
                for (a, b) in e.vertices().iter().copied().tuple_combinations() {
                    if pairs.insert((a, b)) {
                        shadow[a as usize].push(b);
                    }
                }
            }
            for s in &mut shadow {
                s.sort_unstable();
            }
        }

        let mut out = Vec::new();
        let mut current = Vec::with_capacity(t);
        let mut search = CliqueSearch {
            r: self.r,
            t,
            edges: &edges,
            out: &mut out,
            scratch: Vec::new(),
        };
        for v in self.vertices() {
            current.push(v);
            if self.r == 1 {
                if edges.contains(&[v][..]) {
                    let cands: Vec<Vertex> = (v + 1..self.n as Vertex)
                        .filter(|w| edges.contains(&[*w][..]))
                        .collect();
                    search.extend(&mut current, &cands);
                }
            } else {
                search.extend(&mut current, &shadow[v as usize]);
            }
            current.pop();
        }
        Ok(out)
    }

    /// Number of `t`-cliques; same semantics as [`Hypergraph::cliques`].
    pub fn clique_count(&self, t: usize) -> Result<usize> {
        Ok(self.cliques(t)?.len())
    }
}

struct CliqueSearch<'a> {
    r: usize,
    t: usize,
    edges: &'a HashSet<&'a [Vertex]>,
    out: &'a mut Vec<Vec<Vertex>>,
    scratch: Vec<Vertex>,
}

impl CliqueSearch<'_> {
    fn extend(&mut self, current: &mut Vec<Vertex>, cands: &[Vertex]) {
        if current.len() == self.t {
            self.out.push(current.clone());
            return;
        }
        if current.len() + cands.len() < self.t {
            return;
        }
        for (i, &v) in cands.iter().enumerate() {
            if current.len() + cands.len() - i < self.t {
                break;
            }
            let next: Vec<Vertex> = cands[i + 1..]
                .iter()
                .copied()
                .filter(|&w| self.closes(current, v, w))
                .collect();
            current.push(v);
            self.extend(current, &next);
            current.pop();
        }
    }

    /// Whether `T ∪ {v, w}` is an edge for every `(r-2)`-subset `T` of `current`.
    fn closes(&mut self, current: &[Vertex], v: Vertex, w: Vertex) -> bool {
        if self.r < 2 {
            return true;
        }
        let need = self.r - 2;
        if current.len() < need {
            // Not enough vertices yet to form an r-set through v and w.
            return true;
        }
        for t in current.iter().copied().combinations(need) {
            self.scratch.clear();
            self.scratch.extend(t);
            self.scratch.push(v);
            self.scratch.push(w);
            self.scratch.sort_unstable();
            if !self.edges.contains(&self.scratch[..]) {
                return false;
            }
        }
        true
    }
}
