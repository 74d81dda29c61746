//! Builders for signal senders, rainbow stars, equalizers, far gadgets, the
//! BEL assembly and the apex attachment.
//!
//! Structural properties are checked exactly on every build. Color-forcing
//! properties can only be decided on small instances; the `forces_*`
//! helpers do that through the coloring engine and report `None` when the
//! budget runs out.

mod bel;
mod compose;
mod sender;

use serde::{Deserialize, Serialize};

use crate::colorengine::{
    extend_free_coloring, find_free_coloring, Color, EdgeColoring, SearchOptions,
};
use crate::error::{Error, Result};
use crate::hypercore::{Edge, Hypergraph, Tags};

pub use bel::{attach_apex, build_bel};
pub use compose::{amplify_distance, build_equalizer, build_far_seed, build_rainbow};
pub use sender::{
    assemble_signal_sender, build_f_ell, build_f_prime, build_hstar, build_signal_sender,
    cliques_within_blocks, f_ell_uniform, f_prime_uniform, find_ell, HstarBuild, SenderParams,
    SignalSender,
};

/// A hypergraph together with its distinguished edges and vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaggedGadget {
    pub graph: Hypergraph,
    pub tags: Tags,
}

impl TaggedGadget {
    pub fn new(graph: Hypergraph, tags: Tags) -> Result<Self> {
        tags.validate(&graph)?;
        Ok(TaggedGadget { graph, tags })
    }

    pub fn e(&self) -> Result<&Edge> {
        self.tags.e.as_ref().ok_or(Error::BadTag("e"))
    }

    pub fn f(&self) -> Result<&Edge> {
        self.tags.f.as_ref().ok_or(Error::BadTag("f"))
    }

    pub fn to_json(&self) -> String {
        self.graph.to_json_tagged(&self.tags)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let (graph, tags) = Hypergraph::from_json(s)?;
        Ok(TaggedGadget { graph, tags })
    }

    /// `|e ∩ f| = 2` and the only edges inside `e ∪ f` are `e` and `f`.
    pub(crate) fn check_pair_shape(&self) -> Result<()> {
        let (e, f) = (self.e()?, self.f()?);
        if e.len() != 3 || e.intersection(f).len() != 2 {
            return Err(Error::BadTag(
                "e and f must be 3-edges sharing exactly two vertices",
            ));
        }
        let mut union: Vec<_> = e.vertices().iter().chain(f.vertices()).copied().collect();
        union.sort_unstable();
        union.dedup();
        if self.graph.edges_within(&union).len() != 2 {
            return Err(Error::BadTag(
                "e ∪ f must span exactly the two edges e and f",
            ));
        }
        Ok(())
    }
}

fn fixed(k: u8, edges: &[(&Edge, Color)]) -> Result<EdgeColoring> {
    let mut c = EdgeColoring::new(k)?;
    for &(e, col) in edges {
        c.set(e.clone(), col)?;
    }
    Ok(c)
}

/// Whether no free coloring exists with the given edges fixed; `None` on budget overflow.
fn no_extension(
    h: &Hypergraph,
    t: usize,
    k: u8,
    edges: &[(&Edge, Color)],
    opts: &SearchOptions,
) -> Result<Option<bool>> {
    Ok(extend_free_coloring(h, t, k, &fixed(k, edges)?, opts)?.arrows())
}

/// `h` has a free coloring and every free coloring gives `e` and `f` the same color.
pub fn forces_equal(
    h: &Hypergraph,
    e: &Edge,
    f: &Edge,
    t: usize,
    k: u8,
    opts: &SearchOptions,
) -> Result<Option<bool>> {
    match find_free_coloring(h, t, k, opts)?.arrows() {
        None => return Ok(None),
        Some(true) => return Ok(Some(false)),
        Some(false) => {}
    }
    if k == 1 {
        return Ok(Some(true));
    }
    // Colors are symmetric, so fixing e = 1, f = 2 covers every unequal pair.
    no_extension(h, t, k, &[(e, 1), (f, 2)], opts)
}

/// `h` has a free coloring and every free coloring gives `e` and `f` different colors.
pub fn forces_distinct(
    h: &Hypergraph,
    e: &Edge,
    f: &Edge,
    t: usize,
    k: u8,
    opts: &SearchOptions,
) -> Result<Option<bool>> {
    match find_free_coloring(h, t, k, opts)?.arrows() {
        None => return Ok(None),
        Some(true) => return Ok(Some(false)),
        Some(false) => {}
    }
    no_extension(h, t, k, &[(e, 1), (f, 1)], opts)
}

/// `h` has a free coloring and every free coloring gives the edges pairwise distinct colors.
pub fn forces_rainbow(
    h: &Hypergraph,
    edges: &[Edge],
    t: usize,
    k: u8,
    opts: &SearchOptions,
) -> Result<Option<bool>> {
    let mut all = Some(true);
    for (i, e) in edges.iter().enumerate() {
        for f in &edges[i + 1..] {
            match forces_distinct(h, e, f, t, k, opts)? {
                Some(true) => {}
                Some(false) => return Ok(Some(false)),
                None => all = None,
            }
        }
    }
    Ok(all)
}
