//! Independent oracles: plain subset scans and a small DPLL solver.
#![allow(dead_code)]

use itertools::Itertools;
use minram::colorengine::{check_free, EdgeColoring};
use minram::gadgets::TaggedGadget;
use minram::hypercore::Tags;
use minram::{Edge, Hypergraph, Vertex};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// All `t`-subsets whose every `r`-subset is an edge.
pub fn brute_cliques(h: &Hypergraph, t: usize) -> Vec<Vec<Vertex>> {
    let r = h.uniformity();
    (0..h.vertex_count() as Vertex)
        .combinations(t)
        .filter(|s| {
            s.iter()
                .copied()
                .combinations(r)
                .all(|e| h.contains_edge(&e))
        })
        .collect()
}

/// Colors follow `h.edges()` order.
pub fn brute_is_free(h: &Hypergraph, colors: &[u8], t: usize) -> bool {
    let r = h.uniformity();
    let edges: Vec<Vec<Vertex>> = h.edges().map(|e| e.vertices().to_vec()).collect();
    let color_of = |e: &[Vertex]| colors[edges.iter().position(|x| x == e).unwrap()];
    brute_cliques(h, t).iter().all(|c| {
        let cols: Vec<u8> = c
            .iter()
            .copied()
            .combinations(r)
            .map(|e| color_of(&e))
            .collect();
        cols.iter().any(|&x| x != cols[0])
    })
}

/// First free coloring in base-`k` order over `h.edges()`, colors `1..=k`.
pub fn brute_free_coloring(h: &Hypergraph, t: usize, k: u8) -> Option<Vec<u8>> {
    let m = h.edge_count();
    let total = (k as u64).pow(m as u32);
    (0..total)
        .map(|mut i| {
            (0..m)
                .map(|_| {
                    let c = (i % k as u64) as u8 + 1;
                    i /= k as u64;
                    c
                })
                .collect::<Vec<u8>>()
        })
        .find(|cols| brute_is_free(h, cols, t))
}

/// DPLL with unit propagation; the model is indexed by variable, slot 0 unused.
pub fn dpll(nvars: usize, clauses: &[Vec<i32>]) -> Option<Vec<bool>> {
    fn go(clauses: &[Vec<i32>], assign: &mut Vec<Option<bool>>) -> bool {
        loop {
            let mut unit = None;
            for cl in clauses {
                let mut open = None;
                let mut count = 0;
                let mut sat = false;
                for &l in cl {
                    match assign[l.unsigned_abs() as usize] {
                        Some(v) if v == (l > 0) => {
                            sat = true;
                            break;
                        }
                        Some(_) => {}
                        None => {
                            count += 1;
                            open = Some(l);
                        }
                    }
                }
                if sat {
                    continue;
                }
                if count == 0 {
                    return false;
                }
                if count == 1 {
                    unit = open;
                    break;
                }
            }
            match unit {
                Some(l) => assign[l.unsigned_abs() as usize] = Some(l > 0),
                None => break,
            }
        }
        let Some(v) = (1..assign.len()).find(|&v| assign[v].is_none()) else {
            return true;
        };
        for val in [true, false] {
            let mut next = assign.clone();
            next[v] = Some(val);
            if go(clauses, &mut next) {
                *assign = next;
                return true;
            }
        }
        false
    }
    let mut assign = vec![None; nvars + 1];
    go(clauses, &mut assign).then(|| assign.into_iter().map(|x| x.unwrap_or(false)).collect())
}

/// Random `r`-uniform hypergraph on `n` vertices with `m` distinct edges.
pub fn random_hypergraph(r: usize, n: usize, m: usize, rng: &mut impl Rng) -> Hypergraph {
    let mut all: Vec<Vec<Vertex>> = (0..n as Vertex).combinations(r).collect();
    all.shuffle(rng);
    all.truncate(m);
    Hypergraph::from_edges(r, n, all).unwrap()
}

/// `e = {0,1,2}`, `f = {0,1,3}` plus `extra` random edges on fresh vertices,
/// each touching `{0,1,2,3}` at most in the single vertex `anchor`.
pub fn mock_sender(extra: usize, anchor: Vertex, rng: &mut impl Rng) -> TaggedGadget {
    let fresh = if extra == 0 { 4 } else { 4 + extra.max(2) };
    let mut h = Hypergraph::from_edges(3, fresh, [[0, 1, 2], [0, 1, 3]]).unwrap();
    let pool: Vec<Vertex> = std::iter::once(anchor).chain(4..fresh as Vertex).collect();
    for _ in 0..extra {
        let tri: Vec<Vertex> = pool.choose_multiple(rng, 3).copied().collect();
        h.add_edge(Edge::new(tri).unwrap()).unwrap();
    }
    let tags = Tags {
        e: Some(Edge::of(&[0, 1, 2])),
        f: Some(Edge::of(&[0, 1, 3])),
        ..Tags::default()
    };
    TaggedGadget::new(h, tags).unwrap()
}

/// Colors of `c` in `h.edges()` order.
pub fn colors_in_order(h: &Hypergraph, c: &EdgeColoring) -> Vec<u8> {
    h.edges().map(|e| c.get(e.vertices()).unwrap()).collect()
}

/// A random host with `codegree(0, 1) < (t-2)^2` and a random free 2-coloring of the edges avoiding `{0, 1}`.
pub fn lower_bound_instance(t: usize, r: &mut impl Rng) -> (Hypergraph, EdgeColoring) {
    let bound = (t - 2) * (t - 2);
    loop {
        let n = r.random_range(t + 2..=t + 5);
        let p = r.random_range(0.4..0.9);
        let mut h = Hypergraph::new(3, n).unwrap();
        for e in (0..n as Vertex).combinations(3) {
            if r.random_bool(p) {
                h.add_edge(Edge::new(e).unwrap()).unwrap();
            }
        }
        let mut through: Vec<Edge> = h
            .edges()
            .filter(|e| e.contains_all(&[0, 1]))
            .cloned()
            .collect();
        let keep = r.random_range(0..bound).min(through.len());
        while through.len() > keep {
            let e = through.swap_remove(r.random_range(0..through.len()));
            h.remove_edge(e.vertices());
        }
        let rest = h.minus_edges(&through);
        let blue = r.random_range(0.2..0.8);
        for _ in 0..50 {
            let mut c = EdgeColoring::new(2).unwrap();
            for e in rest.edges() {
                c.set(e.clone(), if r.random_bool(blue) { 2 } else { 1 })
                    .unwrap();
            }
            if check_free(&rest, &c, t).unwrap().is_empty() {
                return (h, c);
            }
        }
    }
}
