use itertools::Itertools;

use super::TaggedGadget;
use crate::error::{Error, Result};
use crate::hypercore::{glue, Distance, Edge, GlueMap, Hypergraph, Tags, Vertex};

/// Distance cross-checks by path search are skipped above this many edges.
const DISTANCE_CHECK_EDGES: usize = 5_000;

fn only(e: &Edge, minus: &[Vertex]) -> Result<Vertex> {
    match e
        .vertices()
        .iter()
        .copied()
        .filter(|v| !minus.contains(v))
        .collect::<Vec<_>>()[..]
    {
        [v] => Ok(v),
        _ => Err(Error::BadTag(
            "edge must have exactly one vertex outside the shared pair",
        )),
    }
}

/// A star `{i, k, k+1}` for `i < k` with a sender copy on every pair of leaves.
///
/// For `i < j` the shared pair of the copy goes onto `{k, k+1}` in sorted
/// order, the rest of `e` onto `i` and the rest of `f` onto `j`.
pub fn build_rainbow(k: u8, sender: &TaggedGadget) -> Result<TaggedGadget> {
    if k < 2 {
        return Err(Error::InvalidParameter("rainbow star needs k >= 2".into()));
    }
    sender.check_pair_shape()?;
    let (e, f) = (sender.e()?, sender.f()?);
    let c = e.intersection(f);
    let (ei, fj) = (only(e, &c)?, only(f, &c)?);
    let k = k as Vertex;
    let (s0, s1) = (k, k + 1);
    let mut h = Hypergraph::new(3, k as usize + 2)?;
    let star: Vec<Edge> = (0..k).map(|i| Edge::of(&[i, s0, s1])).collect();
    for e in &star {
        h.add_edge(e.clone())?;
    }
    for (i, j) in (0..k).tuple_combinations() {
        let map = GlueMap::new()
            .identify(s0, c[0])
            .identify(s1, c[1])
            .identify(i, ei)
            .identify(j, fj);
        h = glue(&h, &sender.graph, &map)?.graph;
    }
    let gadget = TaggedGadget::new(
        h,
        Tags {
            s: Some(vec![s0, s1]),
            rainbow: star.clone(),
            ..Tags::default()
        },
    )?;
    check_rainbow_shape(&gadget)?;
    Ok(gadget)
}

fn check_rainbow_shape(g: &TaggedGadget) -> Result<()> {
    let s = g.tags.s.as_deref().ok_or(Error::BadTag("S"))?;
    for (a, b) in g.tags.rainbow.iter().tuple_combinations() {
        if a.intersection(b) != s {
            return Err(Error::Postcondition(
                "rainbow edges must pairwise meet exactly in S".into(),
            ));
        }
    }
    let union: Vec<Vertex> = g
        .tags
        .rainbow
        .iter()
        .flat_map(|e| e.vertices().iter().copied())
        .sorted()
        .dedup()
        .collect();
    if union.len() != g.tags.rainbow.len() + 2 {
        return Err(Error::Postcondition(
            "rainbow edges must span k + 2 vertices".into(),
        ));
    }
    if g.graph.edges_within(&union).len() != g.tags.rainbow.len() {
        return Err(Error::Postcondition(
            "rainbow vertices must span exactly k edges".into(),
        ));
    }
    Ok(())
}

/// Two rainbow copies glued along `e_2, ..., e_k`; `e` and `f` are the two copies of `e_1`.
pub fn build_equalizer(rainbow: &TaggedGadget) -> Result<TaggedGadget> {
    let k = rainbow.tags.rainbow.len();
    if k < 2 {
        return Err(Error::InvalidParameter(
            "equalizer needs a rainbow star with k >= 2".into(),
        ));
    }
    check_rainbow_shape(rainbow)?;
    let s = rainbow.tags.s.clone().ok_or(Error::BadTag("S"))?;
    let mut map = GlueMap::new().identify(s[0], s[0]).identify(s[1], s[1]);
    for e in &rainbow.tags.rainbow[1..] {
        let v = only(e, &s)?;
        map = map.identify(v, v);
    }
    let g = glue(&rainbow.graph, &rainbow.graph, &map)?;
    let e = rainbow.tags.rainbow[0].clone();
    let f = e.map(|v| g.map_b[v as usize])?;
    let out = TaggedGadget::new(
        g.graph,
        Tags {
            e: Some(e),
            f: Some(f),
            s: Some(s),
            ..Tags::default()
        },
    )?;
    out.check_pair_shape()?;
    if out.graph.vertex_count() != 2 * rainbow.graph.vertex_count() - (k + 1) {
        return Err(Error::Postcondition("equalizer vertex count".into()));
    }
    Ok(out)
}

/// Two equalizer copies with `y1 = d`, `b = c`, `a = y2`, so that the new
/// `e = {a, b, x1}` and `f = {c, d, x2}` meet in one vertex: distance 5.
pub fn build_far_seed(equalizer: &TaggedGadget) -> Result<TaggedGadget> {
    equalizer.check_pair_shape()?;
    let (e, f) = (equalizer.e()?, equalizer.f()?);
    let pair = e.intersection(f);
    let (a, b) = (pair[0], pair[1]);
    let y = only(f, &pair)?;
    // The second copy has the same ids: c = a, d = b, y2 = y.
    let map = GlueMap::new().identify(y, b).identify(b, a).identify(a, y);
    let g = glue(&equalizer.graph, &equalizer.graph, &map)?;
    let f2 = e.map(|v| g.map_b[v as usize])?;
    let out = TaggedGadget::new(
        g.graph,
        Tags {
            e: Some(e.clone()),
            f: Some(f2),
            distance: Some(5),
            ..Tags::default()
        },
    )?;
    if out.graph.edge_count() <= DISTANCE_CHECK_EDGES {
        let d = out.graph.path_distance(out.e()?, out.f()?)?;
        if d != Distance::Finite(5) {
            return Err(Error::Postcondition(format!(
                "far seed has distance {d}, expected 5"
            )));
        }
    }
    Ok(out)
}

/// Chains two copies along `f_1 = e_2` until the declared distance reaches `s`.
///
/// The identification of `f_1` with `e_2` is the first bijection (in
/// lexicographic order of images) that maps no vertex of `e_1` onto `f_2`.
/// Each step raises the declared distance by one; on small instances the
/// computed distance is checked against it.
pub fn amplify_distance(base: &TaggedGadget, s: u32) -> Result<TaggedGadget> {
    let (e, f) = (base.e()?.clone(), base.f()?.clone());
    let d = match base.tags.distance {
        Some(d) => d,
        None => match base.graph.path_distance(&e, &f)? {
            Distance::Finite(d) => d,
            Distance::Infinite => {
                let mut out = base.clone();
                out.tags.distance = Some(s.max(5));
                return Ok(out);
            }
        },
    };
    if d < 5 {
        return Err(Error::DistanceTooSmall { got: d, need: 5 });
    }
    let mut cur = base.clone();
    cur.tags.distance = Some(d);
    while cur.tags.distance.unwrap() < s {
        cur = amplify_step(&cur)?;
    }
    Ok(cur)
}

fn amplify_step(g: &TaggedGadget) -> Result<TaggedGadget> {
    let (e, f) = (g.e()?, g.f()?);
    let d = g.tags.distance.ok_or(Error::BadTag("distance"))?;
    let image = e
        .vertices()
        .iter()
        .copied()
        .permutations(3)
        .find(|img| {
            f.vertices()
                .iter()
                .zip(img)
                .all(|(u, w)| !(e.contains(*u) && f.contains(*w)))
        })
        .ok_or(Error::Postcondition(
            "no admissible identification of f1 with e2".into(),
        ))?;
    let mut map = GlueMap::new();
    for (&u, &w) in f.vertices().iter().zip(&image) {
        map = map.identify(u, w);
    }
    let glued = glue(&g.graph, &g.graph, &map)?;
    let f2 = f.map(|v| glued.map_b[v as usize])?;
    let out = TaggedGadget::new(
        glued.graph,
        Tags {
            e: Some(e.clone()),
            f: Some(f2),
            distance: Some(d + 1),
            ..Tags::default()
        },
    )?;
    if out.graph.edge_count() <= DISTANCE_CHECK_EDGES
        && out.graph.shortest_path_within(e, out.f()?, d)?.is_some()
    {
        return Err(Error::Postcondition(format!(
            "amplified distance is not above {d}"
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mock_sender() -> TaggedGadget {
        let g = Hypergraph::from_edges(3, 4, [[0, 1, 2], [0, 1, 3]]).unwrap();
        TaggedGadget::new(
            g,
            Tags {
                e: Some(Edge::of(&[0, 1, 2])),
                f: Some(Edge::of(&[0, 1, 3])),
                ..Tags::default()
            },
        )
        .unwrap()
    }

    #[test]
    fn rainbow_from_mock() {
        let r = build_rainbow(2, &mock_sender()).unwrap();
        assert_eq!(r.graph.vertex_count(), 4);
        assert_eq!(r.graph.edge_count(), 2);
        let r3 = build_rainbow(3, &mock_sender()).unwrap();
        assert_eq!(r3.tags.rainbow.len(), 3);
        assert_eq!(r3.graph.edges_within(&[0, 1, 2, 3, 4]).len(), 3);
        assert!(build_rainbow(1, &mock_sender()).is_err());
    }

    #[test]
    fn equalizer_from_mock() {
        let r = build_rainbow(2, &mock_sender()).unwrap();
        let q = build_equalizer(&r).unwrap();
        assert_eq!(q.graph.vertex_count(), 2 * 4 - 3);
        assert_eq!(q.e().unwrap().intersection(q.f().unwrap()).len(), 2);
    }

    #[test]
    fn seed_and_amplify() {
        let q = build_equalizer(&build_rainbow(2, &mock_sender()).unwrap()).unwrap();
        let seed = build_far_seed(&q).unwrap();
        assert_eq!(seed.tags.distance, Some(5));
        let far = amplify_distance(&seed, 7).unwrap();
        assert_eq!(far.tags.distance, Some(7));
        assert!(far
            .graph
            .path_distance(far.e().unwrap(), far.f().unwrap())
            .unwrap()
            .at_least(7));
        assert_eq!(amplify_distance(&far, 6).unwrap(), far);
    }

    #[test]
    fn short_base_rejected() {
        let g = mock_sender();
        let mut tagged = g.clone();
        tagged.tags.distance = Some(4);
        assert!(matches!(
            amplify_distance(&tagged, 7),
            Err(Error::DistanceTooSmall { got: 4, need: 5 })
        ));
        assert!(matches!(
            amplify_distance(&g, 7),
            Err(Error::DistanceTooSmall { got: 4, .. })
        ));
    }
}
