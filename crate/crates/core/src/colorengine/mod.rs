//! Decision procedures for clique-free colorings.
//!
//! The engine is uniformity-generic: 3-uniform hosts are the real target, and
//! graphs (`r = 2`) serve as a calibration surface against classical Ramsey
//! facts. Colors are `1..=k` everywhere in the public API.

mod cnf;
mod patterns;
mod search;
mod vertex_csp;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypercore::{Edge, Hypergraph, Vertex};

pub use cnf::{export_cnf, Cnf};
pub use patterns::{admissible_patterns, PatternSet};
pub use search::{
    arrows, arrows_with, extend_free_coloring, find_free_coloring, is_minimal_ramsey, minimalize,
    ArrowVerdict, Outcome, SearchOptions,
};
pub use vertex_csp::{admissible_vertex_coloring, admissible_vertex_colorings, VertexColoring};

pub type Color = u8;

/// Largest supported color count; domains are bitmasks.
pub const MAX_COLORS: u8 = 32;

/// A map from edges to colors `1..=k`; totality is checked against a host.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ColoringDoc", into = "ColoringDoc")]
pub struct EdgeColoring {
    k: u8,
    colors: BTreeMap<Edge, Color>,
}

#[derive(Serialize, Deserialize)]
struct ColoringDoc {
    k: u8,
    edges: Vec<Edge>,
    colors: Vec<Color>,
}

impl TryFrom<ColoringDoc> for EdgeColoring {
    type Error = Error;
    fn try_from(doc: ColoringDoc) -> Result<Self> {
        if doc.edges.len() != doc.colors.len() {
            return Err(Error::InvalidParameter(
                "coloring: edges and colors differ in length".into(),
            ));
        }
        let mut c = EdgeColoring::new(doc.k)?;
        for (e, col) in doc.edges.into_iter().zip(doc.colors) {
            c.set(e, col)?;
        }
        Ok(c)
    }
}

impl From<EdgeColoring> for ColoringDoc {
    fn from(c: EdgeColoring) -> Self {
        let (edges, colors) = c.colors.into_iter().unzip();
        ColoringDoc {
            k: c.k,
            edges,
            colors,
        }
    }
}

impl EdgeColoring {
    pub fn new(k: u8) -> Result<Self> {
        if k == 0 || k > MAX_COLORS {
            return Err(Error::InvalidParameter(format!(
                "color count {k} outside 1..={MAX_COLORS}"
            )));
        }
        Ok(EdgeColoring {
            k,
            colors: BTreeMap::new(),
        })
    }

    /// Every edge of `h` in color `color`.
    pub fn constant(h: &Hypergraph, k: u8, color: Color) -> Result<Self> {
        let mut c = EdgeColoring::new(k)?;
        for e in h.edges() {
            c.set(e.clone(), color)?;
        }
        Ok(c)
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    pub fn set(&mut self, e: Edge, color: Color) -> Result<()> {
        if color == 0 || color > self.k {
            return Err(Error::BadColor { color, k: self.k });
        }
        self.colors.insert(e, color);
        Ok(())
    }

    pub fn get(&self, e: &[Vertex]) -> Option<Color> {
        self.colors.get(e).copied()
    }

    pub fn remove(&mut self, e: &[Vertex]) -> Option<Color> {
        self.colors.remove(e)
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Edge, Color)> {
        self.colors.iter().map(|(e, &c)| (e, c))
    }

    /// Number of edges per color, indexed `0..k` for colors `1..=k`.
    pub fn histogram(&self) -> Vec<usize> {
        let mut h = vec![0; self.k as usize];
        for &c in self.colors.values() {
            h[c as usize - 1] += 1;
        }
        h
    }

    /// Fails unless the coloring covers exactly the edges of `h`.
    pub fn check_total(&self, h: &Hypergraph) -> Result<()> {
        if let Some(e) = h.edges().find(|e| !self.colors.contains_key(*e)) {
            return Err(Error::PartialColoring(e.clone()));
        }
        if let Some(e) = self.colors.keys().find(|e| !h.contains_edge(e.vertices())) {
            return Err(Error::StrayColor(e.clone()));
        }
        Ok(())
    }

    /// Restriction to the edges of `h` (which must all be colored).
    pub fn restrict_to(&self, h: &Hypergraph) -> Result<EdgeColoring> {
        let mut out = EdgeColoring::new(self.k)?;
        for e in h.edges() {
            let c = self
                .get(e.vertices())
                .ok_or_else(|| Error::PartialColoring(e.clone()))?;
            out.colors.insert(e.clone(), c);
        }
        Ok(out)
    }

    /// Applies a permutation of colors given as `perm[c - 1] = new color`.
    pub fn permuted(&self, perm: &[Color]) -> EdgeColoring {
        EdgeColoring {
            k: self.k,
            colors: self
                .colors
                .iter()
                .map(|(e, &c)| (e.clone(), perm[c as usize - 1]))
                .collect(),
        }
    }
}

/// A monochromatic clique found by [`check_free`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoClique {
    pub vertices: Vec<Vertex>,
    pub color: Color,
}

/// Every `t`-clique of `h` whose edges all share one color; empty means free.
pub fn check_free(h: &Hypergraph, coloring: &EdgeColoring, t: usize) -> Result<Vec<MonoClique>> {
    coloring.check_total(h)?;
    mono_cliques(h, coloring, t)
}

/// Like [`check_free`] but only requires the clique edges to be colored.
pub(crate) fn mono_cliques(
    h: &Hypergraph,
    coloring: &EdgeColoring,
    t: usize,
) -> Result<Vec<MonoClique>> {
    use itertools::Itertools;
    let r = h.uniformity();
    let mut out = Vec::new();
    for clique in h.cliques(t)? {
        let mut colors = clique
            .iter()
            .copied()
            .combinations(r)
            .map(|e| coloring.get(&e));
        let first = colors
            .next()
            .flatten()
            .ok_or_else(|| Error::PartialColoring(Edge::of(&clique[..r])))?;
        let mut mono = true;
        for c in colors {
            match c {
                Some(c) if c == first => {}
                Some(_) => mono = false,
                None => {
                    return Err(Error::InvalidParameter(
                        "clique edge without a color".into(),
                    ))
                }
            }
        }
        if mono {
            out.push(MonoClique {
                vertices: clique,
                color: first,
            });
        }
    }
    Ok(out)
}
