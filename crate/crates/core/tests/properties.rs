mod common;

use std::collections::BTreeSet;

use common::*;
use itertools::Itertools;
use minram::codegree::{extend_coloring_lower_bound, random_coloring_expectation};
use minram::colorengine::{
    check_free, export_cnf, find_free_coloring, EdgeColoring, SearchOptions,
};
use minram::gadgets::{amplify_distance, build_equalizer, build_far_seed, build_rainbow};
use minram::hypercore::{glue, GlueMap};
use minram::randomlab::{
    count_supported_cliques, fact_count_bound, prune, sample_family, PairColoring, RamseyTable,
};
use minram::{Edge, Hypergraph, Vertex};
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;
use rand::seq::IndexedRandom;
use rand::Rng;

fn small_hypergraph() -> impl Strategy<Value = (Hypergraph, usize)> {
    (
        prop_oneof![
            Just((3usize, 5usize, 4usize)),
            Just((3, 6, 4)),
            Just((2, 5, 3)),
            Just((2, 6, 3))
        ],
        0..=9usize,
        any::<u64>(),
    )
        .prop_map(|((r, n, t), m, seed)| {
            let max = (0..n).combinations(r).count();
            (random_hypergraph(r, n, m.min(max), &mut rng(seed)), t)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn engine_agrees_with_brute_force((h, t) in small_hypergraph(), k in 2u8..=3) {
        let verdict = find_free_coloring(&h, t, k, &SearchOptions::default()).unwrap();
        let oracle = brute_free_coloring(&h, t, k);
        prop_assert_eq!(verdict.arrows(), Some(oracle.is_none()));
        if let Some(w) = verdict.witness() {
            prop_assert!(brute_is_free(&h, &colors_in_order(&h, w), t));
        }
    }

    #[test]
    fn cnf_agrees_with_brute_force((h, t) in small_hypergraph(), k in 2u8..=3) {
        let cnf = export_cnf(&h, t, k).unwrap();
        let model = dpll(cnf.num_vars(), &cnf.clauses);
        prop_assert_eq!(model.is_some(), brute_free_coloring(&h, t, k).is_some());
        if let Some(m) = model {
            prop_assert!(cnf.evaluate(&m));
            let c = cnf.decode(&m).unwrap();
            prop_assert!(brute_is_free(&h, &colors_in_order(&h, &c), t));
        }
    }

    #[test]
    fn cliques_match_subset_scan((h, t) in small_hypergraph()) {
        let mut ours = h.cliques(t).unwrap();
        ours.sort();
        prop_assert_eq!(ours, brute_cliques(&h, t));
    }

    #[test]
    fn check_free_matches_oracle((h, t) in small_hypergraph(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let mut c = EdgeColoring::new(2).unwrap();
        for e in h.edges() {
            c.set(e.clone(), r.random_range(1..=2)).unwrap();
        }
        let free = check_free(&h, &c, t).unwrap().is_empty();
        prop_assert_eq!(free, brute_is_free(&h, &colors_in_order(&h, &c), t));
    }

    #[test]
    fn json_round_trip((h, _t) in small_hypergraph()) {
        let (back, tags) = Hypergraph::from_json(&h.to_json()).unwrap();
        prop_assert_eq!(back, h);
        prop_assert!(tags.is_empty());
    }

    #[test]
    fn codegree_counts_edges((h, _t) in small_hypergraph(), u in 0u32..5, v in 0u32..5) {
        prop_assume!(u != v);
        let direct = h.edges().filter(|e| e.contains(u) && e.contains(v)).count();
        prop_assert_eq!(h.pair_degree(u, v), direct);
        if h.uniformity() == 3 {
            prop_assert_eq!(h.codegree(u, v).unwrap(), direct);
        }
    }

    #[test]
    fn glue_vertex_count(seed in any::<u64>(), ids in 0usize..=3) {
        let mut r = rng(seed);
        let a = random_hypergraph(3, 6, 6, &mut r);
        let b = random_hypergraph(3, 5, 5, &mut r);
        let xs: Vec<Vertex> = (0..6).collect::<Vec<_>>().choose_multiple(&mut r, ids).copied().collect();
        let ys: Vec<Vertex> = (0..5).collect::<Vec<_>>().choose_multiple(&mut r, ids).copied().collect();
        let map = xs.iter().zip(&ys).fold(GlueMap::new(), |m, (&x, &y)| m.identify(x, y));
        let g = glue(&a, &b, &map).unwrap();
        prop_assert_eq!(g.graph.vertex_count(), 11 - ids);
        for e in a.edges() {
            prop_assert!(g.graph.contains_edge(e.vertices()));
        }
        for e in b.edges() {
            let img = e.map(|v| g.map_b[v as usize]).unwrap();
            prop_assert!(g.graph.contains_edge(img.vertices()));
        }
        prop_assert!(g.graph.edge_count() <= a.edge_count() + b.edge_count());
    }

    #[test]
    fn gadget_algebra_on_mock_senders(k in 2u8..=4, extra in 0usize..=3, anchor in 0u32..4, seed in any::<u64>()) {
        let sender = mock_sender(extra, anchor, &mut rng(seed));
        let rb = build_rainbow(k, &sender).unwrap();
        let s = rb.tags.s.clone().unwrap();
        prop_assert_eq!(rb.tags.rainbow.len(), k as usize);
        for (a, b) in rb.tags.rainbow.iter().tuple_combinations() {
            prop_assert_eq!(a.intersection(b), s.clone());
        }
        let union: BTreeSet<Vertex> = rb.tags.rainbow.iter().flat_map(|e| e.vertices().to_vec()).collect();
        prop_assert_eq!(union.len(), k as usize + 2);
        prop_assert_eq!(rb.graph.edges_within(&union.iter().copied().collect_vec()).len(), k as usize);

        let eq = build_equalizer(&rb).unwrap();
        let (e, f) = (eq.e().unwrap(), eq.f().unwrap());
        prop_assert_eq!(e.intersection(f).len(), 2);
        let ef: Vec<Vertex> = e.vertices().iter().chain(f.vertices()).copied().sorted().dedup().collect();
        prop_assert_eq!(eq.graph.edges_within(&ef).len(), 2);

        let mut cur = build_far_seed(&eq).unwrap();
        let mut d = cur.graph.path_distance(cur.e().unwrap(), cur.f().unwrap()).unwrap().finite().unwrap();
        prop_assert_eq!(d, 5);
        for target in 6..=7 {
            cur = amplify_distance(&cur, target).unwrap();
            let next = cur.graph.path_distance(cur.e().unwrap(), cur.f().unwrap()).unwrap();
            prop_assert!(next.at_least(d + 1));
            d = next.finite().unwrap_or(u32::MAX);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn pruned_families_are_clique_free_and_disjoint(seed in any::<u64>(), n in 6usize..=11, k in 1usize..=3, t in 4usize..=5) {
        let fam = sample_family(n, 0.35, k, seed).unwrap();
        let p = prune(&fam, t).unwrap();
        for (i, h) in p.pruned.iter().enumerate() {
            prop_assert!(brute_cliques(h, t).is_empty());
            let expected: BTreeSet<Edge> = fam[i].edge_set().difference(&p.bad[i]).cloned().collect();
            prop_assert_eq!(h.edge_set(), &expected);
            for g in &p.pruned[i + 1..] {
                prop_assert!(h.edges().all(|e| !g.contains_edge(e.vertices())));
            }
        }
    }

    #[test]
    fn sampling_is_deterministic(seed in any::<u64>(), n in 3usize..=10, p in 0.0f64..=1.0) {
        prop_assert_eq!(sample_family(n, p, 2, seed).unwrap(), sample_family(n, p, 2, seed).unwrap());
    }

    #[test]
    fn supported_cliques_match_oracle(seed in any::<u64>(), n in 4usize..=8, t in 4usize..=5, x in 1u8..=2) {
        let mut r = rng(seed);
        let h = &sample_family(n, 0.6, 1, seed).unwrap()[0];
        let psi = PairColoring::random(n, 2, &mut r);
        let oracle = (0..n as Vertex)
            .combinations(t - 1)
            .filter(|s| s.iter().copied().combinations(3).all(|e| h.contains_edge(&e)))
            .filter(|s| s.iter().tuple_combinations().all(|(&u, &v)| psi.get(u, v) == x))
            .count();
        prop_assert_eq!(count_supported_cliques(h, &psi, x, t).unwrap(), oracle);
    }

    #[test]
    fn fact_bound_on_random_colorings(seed in any::<u64>(), n in 6usize..=9) {
        let psi = PairColoring::random(n, 2, &mut rng(seed));
        let fb = fact_count_bound(&psi, 3, &RamseyTable::default()).unwrap();
        let triangles: Vec<u64> = (1..=2)
            .map(|x| (0..n as Vertex).combinations(3).filter(|s| s.iter().tuple_combinations().all(|(&u, &v)| psi.get(u, v) == x)).count() as u64)
            .collect();
        prop_assert_eq!(fb.count, triangles.iter().copied().max().unwrap());
        prop_assert!(fb.holds);
    }

    #[test]
    fn lower_bound_extension_is_free(seed in any::<u64>(), t in 4usize..=5) {
        let mut r = rng(seed);
        let (h, partial) = lower_bound_instance(t, &mut r);
        let cert = extend_coloring_lower_bound(&h, 0, 1, &partial, t).unwrap();
        prop_assert!(brute_is_free(&h, &colors_in_order(&h, &cert.extended), t));
        for e in h.edges().filter(|e| !e.contains_all(&[0, 1])) {
            prop_assert_eq!(cert.extended.get(e.vertices()), partial.get(e.vertices()));
        }
    }
}

#[test]
fn expectation_below_one_up_to_20() {
    for t in 4..=20 {
        let (v, lt) = random_coloring_expectation(t).unwrap();
        assert!(lt && v < BigRational::one(), "t = {t}");
    }
}
