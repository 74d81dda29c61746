use serde::{Deserialize, Serialize};

use super::{Color, PatternSet};
use crate::error::{Error, Result};
use crate::hypercore::{Hypergraph, Vertex};

/// A map `V(H) -> 1..=k`, indexed by vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexColoring {
    pub k: u8,
    pub colors: Vec<Color>,
}

impl VertexColoring {
    pub fn get(&self, v: Vertex) -> Color {
        self.colors[v as usize]
    }

    /// Per-color counts over `verts`, indexed `0..k`.
    pub fn histogram(&self, verts: &[Vertex]) -> Vec<usize> {
        let mut h = vec![0; self.k as usize];
        for &v in verts {
            h[self.colors[v as usize] as usize - 1] += 1;
        }
        h
    }

    /// Every edge of `h` has its histogram in `p`.
    pub fn is_admissible(&self, h: &Hypergraph, p: &PatternSet) -> bool {
        self.colors.len() == h.vertex_count()
            && h.edges().all(|e| p.contains(&self.histogram(e.vertices())))
    }
}

struct Csp<'a> {
    p: &'a PatternSet,
    k: usize,
    edges: Vec<Vec<Vertex>>,
    incident: Vec<Vec<usize>>,
    hist: Vec<Vec<usize>>,
    colors: Vec<Color>,
}

impl Csp<'_> {
    fn go(&mut self, v: usize, limit: Option<usize>, out: &mut Vec<VertexColoring>) -> bool {
        if v == self.colors.len() {
            out.push(VertexColoring {
                k: self.k as u8,
                colors: self.colors.clone(),
            });
            return limit.is_some_and(|l| out.len() >= l);
        }
        for c in 0..self.k {
            self.colors[v] = c as Color + 1;
            for &e in &self.incident[v] {
                self.hist[e][c] += 1;
            }
            let ok = self.incident[v].iter().all(|&e| {
                let full = self.edges[e].iter().all(|&u| (u as usize) <= v);
                if full {
                    self.p.contains(&self.hist[e])
                } else {
                    self.p.can_complete(&self.hist[e])
                }
            });
            let stop = ok && self.go(v + 1, limit, out);
            for &e in &self.incident[v] {
                self.hist[e][c] -= 1;
            }
            if stop {
                return true;
            }
        }
        self.colors[v] = 0;
        false
    }
}

fn solve(
    h: &Hypergraph,
    p: &PatternSet,
    k: u8,
    limit: Option<usize>,
) -> Result<Vec<VertexColoring>> {
    if h.uniformity() != p.ell {
        return Err(Error::UniformityMismatch {
            expected: p.ell,
            got: h.uniformity(),
        });
    }
    if k != p.k {
        return Err(Error::InvalidParameter(format!(
            "pattern set has k = {}, asked for {k}",
            p.k
        )));
    }
    let edges: Vec<Vec<Vertex>> = h.edges().map(|e| e.vertices().to_vec()).collect();
    let mut incident = vec![Vec::new(); h.vertex_count()];
    for (i, e) in edges.iter().enumerate() {
        for &v in e {
            incident[v as usize].push(i);
        }
    }
    let mut csp = Csp {
        p,
        k: k as usize,
        hist: vec![vec![0; k as usize]; edges.len()],
        edges,
        incident,
        colors: vec![0; h.vertex_count()],
    };
    let mut out = Vec::new();
    csp.go(0, limit, &mut out);
    Ok(out)
}

/// An admissible vertex coloring, or `None` if there is none.
pub fn admissible_vertex_coloring(
    h: &Hypergraph,
    p: &PatternSet,
    k: u8,
) -> Result<Option<VertexColoring>> {
    Ok(solve(h, p, k, Some(1))?.pop())
}

/// All admissible vertex colorings in lexicographic order, up to `limit` of them.
pub fn admissible_vertex_colorings(
    h: &Hypergraph,
    p: &PatternSet,
    k: u8,
    limit: Option<usize>,
) -> Result<Vec<VertexColoring>> {
    solve(h, p, k, limit)
}
