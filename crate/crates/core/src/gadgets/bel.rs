use std::collections::BTreeSet;

use itertools::Itertools;

use super::TaggedGadget;
use crate::colorengine::{check_free, EdgeColoring};
use crate::error::{Error, Result};
use crate::hypercore::{glue, Edge, GlueMap, Hypergraph, Tags, Vertex};

/// Wraps a free coloring `c` of `h` so that every free coloring of the result
/// restricts to `c` on `h` up to a color permutation.
///
/// `h` keeps ids `0..|V(h)|`, the rainbow star follows, then one far-gadget
/// copy per edge `g` of `h` in lexicographic order, with `e` glued onto `g`
/// and `f` onto the rainbow edge of color `c(g)`, both in sorted order.
pub fn build_bel(
    h: &Hypergraph,
    c: &EdgeColoring,
    k: u8,
    t: usize,
    far: &TaggedGadget,
    rainbow: &TaggedGadget,
) -> Result<TaggedGadget> {
    for g in [h, &far.graph, &rainbow.graph] {
        if g.uniformity() != 3 {
            return Err(Error::UniformityMismatch {
                expected: 3,
                got: g.uniformity(),
            });
        }
    }
    if c.k() != k {
        return Err(Error::InvalidParameter(format!(
            "coloring uses k = {}, expected {k}",
            c.k()
        )));
    }
    let bad = check_free(h, c, t)?;
    if !bad.is_empty() {
        return Err(Error::NotFree(bad.len()));
    }
    if rainbow.tags.rainbow.len() != k as usize {
        return Err(Error::BadTag("rainbow star must carry k edges"));
    }
    let (fe, ff) = (far.e()?, far.f()?);
    let d = far.tags.distance.ok_or(Error::BadTag("distance"))?;
    if d < 7 {
        return Err(Error::DistanceTooSmall { got: d, need: 7 });
    }
    if !fe.intersection(ff).is_empty() {
        return Err(Error::BadTag("far gadget edges must be disjoint"));
    }

    let joined = glue(h, &rainbow.graph, &GlueMap::new())?;
    let star: Vec<Edge> = rainbow
        .tags
        .rainbow
        .iter()
        .map(|e| e.map(|v| joined.map_b[v as usize]))
        .try_collect()?;
    let s = rainbow.tags.s.as_ref().map(|s| {
        s.iter()
            .map(|&v| joined.map_b[v as usize])
            .collect::<Vec<_>>()
    });
    let mut cur = joined.graph;
    for g in h.edges() {
        let color = c
            .get(g.vertices())
            .ok_or_else(|| Error::PartialColoring(g.clone()))?;
        let map = GlueMap::new()
            .identify_sorted(g.vertices(), fe.vertices())
            .identify_sorted(star[color as usize - 1].vertices(), ff.vertices());
        cur = glue(&cur, &far.graph, &map)?.graph;
    }

    let expected = h.vertex_count()
        + rainbow.graph.vertex_count()
        + h.edge_count() * (far.graph.vertex_count() - 6);
    if cur.vertex_count() != expected {
        return Err(Error::Postcondition(format!(
            "vertex count {} != {expected}",
            cur.vertex_count()
        )));
    }
    check_bel_structure(h, &cur)?;
    TaggedGadget::new(
        cur,
        Tags {
            rainbow: star,
            s,
            ..Tags::default()
        },
    )
}

/// Properties 2, 4 and 5: `h` sits induced on `0..|V(h)|`, zero pair-degrees
/// inside `h` stay zero, and every new vertex misses some vertex of `h`.
fn check_bel_structure(h: &Hypergraph, out: &Hypergraph) -> Result<()> {
    let n = h.vertex_count() as Vertex;
    let base: Vec<Vertex> = (0..n).collect();
    let induced: BTreeSet<Edge> = out.edges_within(&base).into_iter().collect();
    if &induced != h.edge_set() {
        return Err(Error::Postcondition("host is not induced".into()));
    }
    let pairs = out.pair_degrees();
    let host_pairs = h.pair_degrees();
    for (a, b) in (0..n).tuple_combinations() {
        if !host_pairs.contains_key(&(a, b)) && pairs.contains_key(&(a, b)) {
            return Err(Error::Postcondition(format!(
                "pair ({a}, {b}) gained codegree"
            )));
        }
    }
    if n >= 4 {
        let mut touches = vec![0usize; out.vertex_count()];
        for &(u, v) in pairs.keys() {
            if v >= n && u < n {
                touches[v as usize] += 1;
            }
        }
        if let Some(x) =
            (n..out.vertex_count() as Vertex).find(|&x| touches[x as usize] == n as usize)
        {
            return Err(Error::Postcondition(format!(
                "new vertex {x} has positive codegree with every host vertex"
            )));
        }
    }
    Ok(())
}

/// Adds a vertex whose link is every pair of `base`.
pub fn attach_apex(gadget: &TaggedGadget, base: &[Vertex]) -> Result<TaggedGadget> {
    let base: Vec<Vertex> = base.iter().copied().sorted().dedup().collect();
    if base.len() < 2 {
        return Err(Error::OutOfRange {
            what: "apex base (need at least 2 vertices)",
            size: base.len(),
        });
    }
    for &v in &base {
        gadget.graph.check_vertex(v)?;
    }
    let mut h = gadget.graph.clone();
    let apex = h.add_vertex(Some("apex".into()));
    for (a, b) in base.iter().copied().tuple_combinations() {
        h.add_edge(Edge::of(&[a, b, apex]))?;
    }
    let mut tags = gadget.tags.clone();
    tags.apex = Some(apex);
    TaggedGadget::new(h, tags)
}
