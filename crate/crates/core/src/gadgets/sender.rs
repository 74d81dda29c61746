use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::TaggedGadget;
use crate::colorengine::{
    admissible_vertex_coloring, admissible_vertex_colorings, arrows_with, PatternSet,
    SearchOptions, VertexColoring,
};
use crate::error::{Error, Result};
use crate::hypercore::{Edge, Hypergraph, Tags, Vertex};

/// Enumerating admissible colorings is attempted up to this many vertices.
const ENUMERATION_LIMIT: usize = 16;

/// Inputs of the sender pipeline. `m` and `ell` come from the caller or from
/// [`find_ell`]; the pattern set from `admissible_patterns` or by hand.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SenderParams {
    pub m: usize,
    pub ell: usize,
    pub t: usize,
    pub k: u8,
    pub patterns: PatternSet,
    pub hstar_input: Hypergraph,
}

/// The last `r - 1` vertices of `[m]`, shared by every special edge.
pub fn special_core(r: usize, m: usize) -> Vec<Vertex> {
    (m + 1 - r..m).map(|v| v as Vertex).collect()
}

/// `K_m^(r)` minus every edge containing the last `r - 1` vertices.
pub fn f_prime_uniform(r: usize, m: usize) -> Result<Hypergraph> {
    f_ell_uniform(r, m, 0)
}

/// `F'` plus the special edges `{j} ∪ core` for `j < ell`.
pub fn f_ell_uniform(r: usize, m: usize, ell: usize) -> Result<Hypergraph> {
    if r < 2 || m < r + 1 {
        return Err(Error::OutOfRange {
            what: "m (need m >= r + 1)",
            size: m,
        });
    }
    if ell > m + 1 - r {
        return Err(Error::OutOfRange {
            what: "ell (need ell <= m - r + 1)",
            size: ell,
        });
    }
    let core = special_core(r, m);
    let mut h = Hypergraph::complete(r, m)?;
    for j in ell..m + 1 - r {
        let mut e = core.clone();
        e.push(j as Vertex);
        e.sort_unstable();
        h.remove_edge(&e);
    }
    Ok(h)
}

/// `F'` on `[m]`: `K_m^(3)` without the edges through the pair `{m-2, m-1}`.
pub fn build_f_prime(m: usize) -> Result<Hypergraph> {
    if m < 4 {
        return Err(Error::OutOfRange {
            what: "m (need m >= 4)",
            size: m,
        });
    }
    f_prime_uniform(3, m)
}

pub fn build_f_ell(m: usize, ell: usize) -> Result<Hypergraph> {
    if m < 4 {
        return Err(Error::OutOfRange {
            what: "m (need m >= 4)",
            size: m,
        });
    }
    f_ell_uniform(3, m, ell)
}

/// Largest `ell` with `F_ell` not Ramsey, by binary search over the monotone family.
pub fn find_ell(r: usize, m: usize, t: usize, k: u8, opts: &SearchOptions) -> Result<usize> {
    let base = f_prime_uniform(r, m)?;
    let top = m + 1 - r;
    if !arrows_with(&f_ell_uniform(r, m, top)?, t, k, opts)? {
        return Err(Error::BelowRamseyNumber);
    }
    if arrows_with(&base, t, k, opts)? {
        return Err(Error::InvalidParameter(format!(
            "F' on {m} vertices is already Ramsey"
        )));
    }
    let (mut lo, mut hi) = (0, top);
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if arrows_with(&f_ell_uniform(r, m, mid)?, t, k, opts)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(lo)
}

/// Output of [`build_hstar`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HstarBuild {
    pub graph: Hypergraph,
    pub x: Vertex,
    pub y: Vertex,
    /// The step `i` of the replacement sequence that first became admissible.
    pub index: usize,
    /// The edge-minimal non-admissible subhypergraph `H'`.
    pub minimal: Hypergraph,
    pub witness: VertexColoring,
    /// Every admissible coloring separates `x` and `y`; `None` when too large to enumerate.
    pub separates: Option<bool>,
}

/// Turns a linear hypergraph without admissible colorings into one that has
/// them, all of which separate two vertices `x`, `y` of pair-degree zero.
pub fn build_hstar(input: &Hypergraph, p: &PatternSet, k: u8) -> Result<HstarBuild> {
    if !input.is_linear() {
        return Err(Error::NotLinear);
    }
    if admissible_vertex_coloring(input, p, k)?.is_some() {
        return Err(Error::AlreadyAdmissible);
    }
    let mut minimal = input.clone();
    for e in input.edges() {
        let trial = minimal.without_edge(e.vertices());
        if admissible_vertex_coloring(&trial, p, k)?.is_none() {
            minimal = trial;
        }
    }
    let f = minimal.edges().next().cloned().ok_or(Error::Postcondition(
        "minimal subhypergraph has no edges".into(),
    ))?;
    let xs = f.vertices().to_vec();
    let ell = xs.len();
    let n = minimal.vertex_count() as Vertex;

    for i in 1..=ell {
        let mut hi = minimal.without_edge(&xs);
        for j in 0..i {
            hi.add_vertex(Some(format!("y{}", j + 1)));
        }
        let fi: Vec<Vertex> = (0..ell)
            .map(|j| if j < i { n + j as Vertex } else { xs[j] })
            .collect();
        hi.add_edge(Edge::new(fi)?)?;
        let Some(witness) = admissible_vertex_coloring(&hi, p, k)? else {
            continue;
        };
        let (x, y) = (xs[i - 1], n + i as Vertex - 1);
        if !hi.is_linear() {
            return Err(Error::Postcondition("H* is not linear".into()));
        }
        if hi.pair_degree(x, y) != 0 {
            return Err(Error::Postcondition("x and y share an edge in H*".into()));
        }
        let separates = if hi.vertex_count() <= ENUMERATION_LIMIT {
            let all = admissible_vertex_colorings(&hi, p, k, None)?;
            let ok = all.iter().all(|c| c.get(x) != c.get(y));
            if !ok {
                return Err(Error::Postcondition(
                    "an admissible coloring of H* gives x and y one color".into(),
                ));
            }
            Some(true)
        } else {
            None
        };
        return Ok(HstarBuild {
            graph: hi,
            x,
            y,
            index: i,
            minimal,
            witness,
            separates,
        });
    }
    Err(Error::Postcondition(
        "replacement sequence never became admissible".into(),
    ))
}

/// A signal sender with its block decomposition.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SignalSender {
    pub gadget: TaggedGadget,
    /// The vertex sets `V_e`, one per edge of `H*` in lexicographic order.
    pub blocks: Vec<Vec<Vertex>>,
    /// The shared pair playing the role of `{m-1, m}`.
    pub pair: (Vertex, Vertex),
}

/// Places a copy of `F_ell` on every edge of `hstar`, all sharing one pair.
///
/// `H*` keeps its vertex ids, the shared pair follows, then `m - 2 - ell`
/// fresh vertices per edge. The sender tags are `e = {p, q, x}` and
/// `f = {p, q, y}`.
pub fn assemble_signal_sender(
    hstar: &Hypergraph,
    x: Vertex,
    y: Vertex,
    m: usize,
    ell: usize,
) -> Result<SignalSender> {
    if hstar.uniformity() != ell {
        return Err(Error::UniformityMismatch {
            expected: ell,
            got: hstar.uniformity(),
        });
    }
    if ell == 0 || ell + 2 > m {
        return Err(Error::OutOfRange {
            what: "ell (need 1 <= ell <= m - 2)",
            size: ell,
        });
    }
    if !hstar.is_linear() {
        return Err(Error::NotLinear);
    }
    hstar.check_vertex(x)?;
    hstar.check_vertex(y)?;
    if x == y || hstar.pair_degree(x, y) != 0 {
        return Err(Error::InvalidParameter(
            "x and y must be distinct with pair-degree 0".into(),
        ));
    }
    let n_star = hstar.vertex_count();
    let extra = m - 2 - ell;
    let total = n_star + 2 + hstar.edge_count() * extra;
    let mut h = Hypergraph::new(3, total)?;
    let (p, q) = (n_star as Vertex, n_star as Vertex + 1);
    h.set_label(p, "p");
    h.set_label(q, "q");
    let mut blocks = Vec::with_capacity(hstar.edge_count());
    for (idx, e) in hstar.edges().enumerate() {
        let fresh: Vec<Vertex> = (0..extra)
            .map(|i| (n_star + 2 + idx * extra + i) as Vertex)
            .collect();
        for (i, &v) in fresh.iter().enumerate() {
            h.set_label(v, format!("e{idx}.{}", ell + i + 1));
        }
        let block: Vec<Vertex> = e
            .vertices()
            .iter()
            .copied()
            .chain([p, q])
            .chain(fresh.iter().copied())
            .sorted()
            .collect();
        for tri in block.iter().copied().combinations(3) {
            let through_pair = tri.contains(&p) && tri.contains(&q);
            if through_pair && tri.iter().any(|v| fresh.contains(v)) {
                continue;
            }
            h.add_edge(Edge::new(tri)?)?;
        }
        blocks.push(block);
    }
    let tags = Tags {
        e: Some(Edge::of(&[p, q, x])),
        f: Some(Edge::of(&[p, q, y])),
        x: Some(x),
        y: Some(y),
        ..Tags::default()
    };
    let gadget = TaggedGadget::new(h, tags)?;
    gadget.check_pair_shape()?;
    for (a, b) in blocks.iter().tuple_combinations() {
        if a.iter().filter(|v| b.binary_search(v).is_ok()).count() > 3 {
            return Err(Error::Postcondition(
                "two blocks share more than one special edge".into(),
            ));
        }
    }
    Ok(SignalSender {
        gadget,
        blocks,
        pair: (p, q),
    })
}

/// The full pipeline: `H*` from the input, then the assembly.
pub fn build_signal_sender(params: &SenderParams) -> Result<(SignalSender, HstarBuild)> {
    if params.ell == 0 || params.ell + 2 > params.m {
        return Err(Error::OutOfRange {
            what: "ell (need 1 <= ell <= m - 2)",
            size: params.ell,
        });
    }
    if params.patterns.is_empty() || params.patterns.ell != params.ell {
        return Err(Error::InvalidParameter(
            "pattern set must be nonempty with matching ell".into(),
        ));
    }
    let hs = build_hstar(&params.hstar_input, &params.patterns, params.k)?;
    let sender = assemble_signal_sender(&hs.graph, hs.x, hs.y, params.m, params.ell)?;
    Ok((sender, hs))
}

/// Every `t`-clique of `h` lies inside one of `blocks`.
pub fn cliques_within_blocks(h: &Hypergraph, blocks: &[Vec<Vertex>], t: usize) -> Result<bool> {
    Ok(h.cliques(t)?.iter().all(|c| {
        blocks
            .iter()
            .any(|b| c.iter().all(|v| b.binary_search(v).is_ok()))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercore::binomial;

    #[test]
    fn f_prime_sizes() {
        assert_eq!(build_f_prime(5).unwrap().edge_count(), 7);
        assert_eq!(build_f_prime(4).unwrap().edge_count(), 2);
        assert_eq!(build_f_prime(5).unwrap().degree(&[3, 4]).unwrap(), 0);
        assert!(build_f_prime(3).is_err());
    }

    #[test]
    fn f_ell_family() {
        assert_eq!(build_f_ell(5, 0).unwrap(), build_f_prime(5).unwrap());
        assert_eq!(
            build_f_ell(5, 3).unwrap(),
            Hypergraph::complete(3, 5).unwrap()
        );
        assert_eq!(build_f_ell(5, 2).unwrap().edge_count(), 9);
        assert!(build_f_ell(5, 4).is_err());
        for m in 4..9 {
            let expected = binomial(m as u64, 3) as usize - (m - 2);
            assert_eq!(build_f_prime(m).unwrap().edge_count(), expected);
        }
    }

    #[test]
    fn c5_pipeline() {
        let c5 = Hypergraph::from_edges(2, 5, [[0, 1], [1, 2], [2, 3], [3, 4], [0, 4]]).unwrap();
        let p = PatternSet::new(2, 2, [vec![1, 1]]).unwrap();
        let hs = build_hstar(&c5, &p, 2).unwrap();
        assert_eq!(hs.minimal, c5);
        assert_eq!(hs.index, 1);
        assert_eq!((hs.x, hs.y), (0, 5));
        assert_eq!(hs.graph.edge_count(), 5);
        assert_eq!(hs.separates, Some(true));
        assert!(matches!(
            build_hstar(&hs.graph, &p, 2),
            Err(Error::AlreadyAdmissible)
        ));
    }

    #[test]
    fn sender_vertex_count_and_nonedges() {
        let path = Hypergraph::from_edges(2, 4, [[0, 1], [1, 2], [2, 3]]).unwrap();
        let s = assemble_signal_sender(&path, 0, 3, 6, 2).unwrap();
        assert_eq!(s.gadget.graph.vertex_count(), 2 + 4 + 3 * 2);
        let (p, q) = s.pair;
        assert!(!s.gadget.graph.contains_edge(&[0, 3, p]));
        assert!(!s.gadget.graph.contains_edge(&[0, 3, q]));
        assert!(cliques_within_blocks(&s.gadget.graph, &s.blocks, 4).unwrap());
    }
}
