//! Complete backtracking search for clique-free edge colorings.
//!
//! Edges that lie in some `t`-clique are assigned in a fixed order (most
//! cliques first, ties lexicographic); edges in no clique are colored last
//! and never constrain anything. Each clique keeps per-color counters; when
//! all but one of its edges carry color `x`, `x` is struck from the domain of
//! the remaining edge. Colors follow a value-symmetry ladder: an edge may take
//! a color already in use or the smallest unused one.

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use itertools::Itertools;
use rayon::prelude::*;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::{mono_cliques, Color, EdgeColoring, MAX_COLORS};
use crate::error::{Error, Result};
use crate::hypercore::{Edge, Hypergraph, Vertex};

const NONE: u8 = u8::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Node cap; `None` searches to completion.
    pub budget: Option<u64>,
    /// Worker threads; 1 is fully deterministic.
    pub jobs: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: None,
            jobs: 1,
        }
    }
}

impl SearchOptions {
    pub fn with_budget(budget: u64) -> Self {
        SearchOptions {
            budget: Some(budget),
            jobs: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    /// Every coloring (extending the fixed part, if any) has a monochromatic clique.
    Arrows,
    /// A verified clique-free coloring.
    Free(EdgeColoring),
    /// The node budget ran out first.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowVerdict {
    pub outcome: Outcome,
    pub nodes: u64,
}

impl ArrowVerdict {
    pub fn arrows(&self) -> Option<bool> {
        match self.outcome {
            Outcome::Arrows => Some(true),
            Outcome::Free(_) => Some(false),
            Outcome::Unknown => None,
        }
    }

    pub fn witness(&self) -> Option<&EdgeColoring> {
        match &self.outcome {
            Outcome::Free(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_complete(&self) -> bool {
        self.outcome != Outcome::Unknown
    }

    /// Boolean view that refuses to guess on an exhausted budget.
    pub fn decided(&self) -> Result<bool> {
        self.arrows().ok_or(Error::Unknown { nodes: self.nodes })
    }
}

impl Serialize for ArrowVerdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("arrows", &self.arrows())?;
        if let Some(w) = self.witness() {
            m.serialize_entry("witness", w)?;
        }
        m.serialize_entry("nodes", &self.nodes)?;
        m.serialize_entry(
            "status",
            if self.is_complete() {
                "complete"
            } else {
                "unknown"
            },
        )?;
        m.end()
    }
}

struct Problem {
    k: usize,
    order: Vec<Edge>,
    cliques: Vec<Vec<u32>>,
    edge_cliques: Vec<Vec<u32>>,
    loose: Vec<Edge>,
    fixed: Vec<(u32, u8)>,
    loose_fixed: HashMap<Edge, Color>,
}

impl Problem {
    fn new(h: &Hypergraph, t: usize, k: u8, partial: Option<&EdgeColoring>) -> Result<Self> {
        if k == 0 || k > MAX_COLORS {
            return Err(Error::InvalidParameter(format!(
                "color count {k} outside 1..={MAX_COLORS}"
            )));
        }
        let r = h.uniformity();
        if t < r.max(2) {
            return Err(Error::OutOfRange {
                what: "clique size",
                size: t,
            });
        }
        let index: HashMap<&[Vertex], usize> = h
            .edges()
            .enumerate()
            .map(|(i, e)| (e.vertices(), i))
            .collect();
        let all: Vec<&Edge> = h.edges().collect();
        let raw: Vec<Vec<usize>> = h
            .cliques(t)?
            .into_iter()
            .map(|c| {
                c.into_iter()
                    .combinations(r)
                    .map(|e| index[&e[..]])
                    .collect()
            })
            .collect();
        let mut count = vec![0usize; all.len()];
        for c in &raw {
            for &e in c {
                count[e] += 1;
            }
        }
        let mut in_cliques: Vec<usize> = (0..all.len()).filter(|&e| count[e] > 0).collect();
        // Edge indices are already lexicographic, so a stable sort keeps ties in order.
        in_cliques.sort_by_key(|&e| std::cmp::Reverse(count[e]));
        let mut pos = vec![u32::MAX; all.len()];
        for (p, &e) in in_cliques.iter().enumerate() {
            pos[e] = p as u32;
        }
        let cliques: Vec<Vec<u32>> = raw
            .iter()
            .map(|c| c.iter().map(|&e| pos[e]).collect())
            .collect();
        let mut edge_cliques = vec![Vec::new(); in_cliques.len()];
        for (q, c) in cliques.iter().enumerate() {
            for &p in c {
                edge_cliques[p as usize].push(q as u32);
            }
        }
        let order: Vec<Edge> = in_cliques.iter().map(|&e| all[e].clone()).collect();
        let loose: Vec<Edge> = (0..all.len())
            .filter(|&e| count[e] == 0)
            .map(|e| all[e].clone())
            .collect();

        let mut fixed = Vec::new();
        let mut loose_fixed = HashMap::new();
        if let Some(partial) = partial {
            if partial.k() != k {
                return Err(Error::InvalidParameter(format!(
                    "partial coloring uses k = {}, search uses {k}",
                    partial.k()
                )));
            }
            for (e, c) in partial.iter() {
                match index.get(e.vertices()) {
                    None => return Err(Error::StrayColor(e.clone())),
                    Some(&i) if pos[i] != u32::MAX => fixed.push((pos[i], c - 1)),
                    Some(_) => {
                        loose_fixed.insert(e.clone(), c);
                    }
                }
            }
            fixed.sort_unstable();
        }
        Ok(Problem {
            k: k as usize,
            order,
            cliques,
            edge_cliques,
            loose,
            fixed,
            loose_fixed,
        })
    }

    fn full_mask(&self) -> u32 {
        if self.k == 32 {
            u32::MAX
        } else {
            (1u32 << self.k) - 1
        }
    }
}

#[derive(Clone, Copy)]
enum Trail {
    Assign(u32),
    Domain(u32, u32),
}

#[derive(Clone)]
struct State<'p> {
    p: &'p Problem,
    color: Vec<u8>,
    domain: Vec<u32>,
    cnt: Vec<u16>,
    assigned: Vec<u16>,
    used: Vec<u32>,
    trail: Vec<Trail>,
}

enum Flow {
    Found,
    Exhausted,
    Abort,
}

struct Counter<'a> {
    nodes: u64,
    budget: Option<u64>,
    shared: Option<(&'a AtomicU64, &'a AtomicBool)>,
}

impl Counter<'_> {
    /// Counts one node; false once the budget is spent or another worker finished.
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        match self.shared {
            None => self.budget.is_none_or(|b| self.nodes <= b),
            Some((total, stop)) => {
                if stop.load(Ordering::Relaxed) {
                    return false;
                }
                let n = total.fetch_add(1, Ordering::Relaxed) + 1;
                self.budget.is_none_or(|b| n <= b)
            }
        }
    }
}

impl<'p> State<'p> {
    fn new(p: &'p Problem) -> Self {
        let n = p.order.len();
        State {
            p,
            color: vec![NONE; n],
            domain: vec![p.full_mask(); n],
            cnt: vec![0; p.cliques.len() * p.k],
            assigned: vec![0; p.cliques.len()],
            used: vec![0; p.k],
            trail: Vec::with_capacity(4 * n),
        }
    }

    /// Assigns `c` to `pos`; false on a conflict. Always leaves a trail for `undo_to`.
    fn assign(&mut self, pos: u32, c: u8) -> bool {
        let p = self.p;
        let k = p.k;
        self.color[pos as usize] = c;
        self.used[c as usize] += 1;
        self.trail.push(Trail::Assign(pos));
        let mut ok = self.domain[pos as usize] & (1 << c) != 0;
        for &q in &p.edge_cliques[pos as usize] {
            let q = q as usize;
            let size = p.cliques[q].len() as u16;
            self.assigned[q] += 1;
            let i = q * k + c as usize;
            self.cnt[i] += 1;
            if self.cnt[i] == size {
                ok = false;
            } else if ok && self.assigned[q] == size - 1 && self.cnt[i] == size - 1 {
                let last = p.cliques[q]
                    .iter()
                    .copied()
                    .find(|&e| self.color[e as usize] == NONE)
                    .unwrap() as usize;
                let bit = 1u32 << c;
                if self.domain[last] & bit != 0 {
                    self.trail
                        .push(Trail::Domain(last as u32, self.domain[last]));
                    self.domain[last] &= !bit;
                    if self.domain[last] == 0 {
                        ok = false;
                    }
                }
            }
        }
        ok
    }

    fn undo_to(&mut self, mark: usize) {
        let p = self.p;
        while self.trail.len() > mark {
            match self.trail.pop().unwrap() {
                Trail::Assign(pos) => {
                    let c = self.color[pos as usize] as usize;
                    for &q in &p.edge_cliques[pos as usize] {
                        self.assigned[q as usize] -= 1;
                        self.cnt[q as usize * p.k + c] -= 1;
                    }
                    self.used[c] -= 1;
                    self.color[pos as usize] = NONE;
                }
                Trail::Domain(e, old) => self.domain[e as usize] = old,
            }
        }
    }

    fn next_open(&self, from: usize) -> Option<usize> {
        (from..self.color.len()).find(|&i| self.color[i] == NONE)
    }

    /// Colors `pos` may take under the domain and the symmetry ladder.
    fn allowed(&self, pos: usize) -> u32 {
        let used: u32 = self
            .used
            .iter()
            .enumerate()
            .filter(|(_, &n)| n > 0)
            .fold(0, |m, (c, _)| m | (1 << c));
        let free = self.p.full_mask() & !used;
        let lowest = free & free.wrapping_neg();
        self.domain[pos] & (used | lowest)
    }

    fn dfs(&mut self, from: usize, counter: &mut Counter) -> Flow {
        let pos = match self.next_open(from) {
            Some(p) => p,
            None => return Flow::Found,
        };
        let mut allowed = self.allowed(pos);
        while allowed != 0 {
            let c = allowed.trailing_zeros() as u8;
            allowed &= allowed - 1;
            if !counter.tick() {
                return Flow::Abort;
            }
            let mark = self.trail.len();
            if self.assign(pos as u32, c) {
                match self.dfs(pos + 1, counter) {
                    Flow::Found => return Flow::Found,
                    Flow::Abort => {
                        self.undo_to(mark);
                        return Flow::Abort;
                    }
                    Flow::Exhausted => {}
                }
            }
            self.undo_to(mark);
        }
        Flow::Exhausted
    }

    fn witness(&self, k: u8) -> EdgeColoring {
        let mut c = EdgeColoring::new(k).expect("k validated");
        for (e, &col) in self.p.order.iter().zip(&self.color) {
            c.set(e.clone(), col + 1).expect("color in range");
        }
        for e in &self.p.loose {
            let col = self.p.loose_fixed.get(e).copied().unwrap_or(1);
            c.set(e.clone(), col).expect("color in range");
        }
        c
    }
}

fn run(
    h: &Hypergraph,
    t: usize,
    k: u8,
    partial: Option<&EdgeColoring>,
    opts: &SearchOptions,
) -> Result<ArrowVerdict> {
    let p = Problem::new(h, t, k, partial)?;
    let mut base = State::new(&p);
    for &(pos, c) in &p.fixed {
        if !base.assign(pos, c) {
            return Ok(ArrowVerdict {
                outcome: Outcome::Arrows,
                nodes: 0,
            });
        }
    }
    let (state, nodes) = if opts.jobs <= 1 {
        let mut counter = Counter {
            nodes: 0,
            budget: opts.budget,
            shared: None,
        };
        let mut state = base;
        match state.dfs(0, &mut counter) {
            Flow::Found => (Some(state), counter.nodes),
            Flow::Exhausted => {
                return Ok(ArrowVerdict {
                    outcome: Outcome::Arrows,
                    nodes: counter.nodes,
                })
            }
            Flow::Abort => {
                return Ok(ArrowVerdict {
                    outcome: Outcome::Unknown,
                    nodes: counter.nodes,
                })
            }
        }
    } else {
        match run_parallel(base, opts)? {
            (Some(s), n) => (Some(s), n),
            (None, n) => {
                let outcome = if opts.budget.is_some_and(|b| n > b) {
                    Outcome::Unknown
                } else {
                    Outcome::Arrows
                };
                return Ok(ArrowVerdict { outcome, nodes: n });
            }
        }
    };
    let witness = state.expect("found").witness(k);
    let bad = mono_cliques(h, &witness, t)?;
    assert!(
        bad.is_empty(),
        "search produced a coloring with monochromatic cliques: {bad:?}"
    );
    Ok(ArrowVerdict {
        outcome: Outcome::Free(witness),
        nodes,
    })
}

type Path = Vec<(u32, u8)>;

/// Splits the tree into subtrees and searches them on a dedicated pool.
fn run_parallel<'p>(base: State<'p>, opts: &SearchOptions) -> Result<(Option<State<'p>>, u64)> {
    let total = AtomicU64::new(0);
    let stop = AtomicBool::new(false);
    let mut frontier: Vec<(usize, Path)> = vec![(0, Vec::new())];
    let mut scratch = base.clone();
    while frontier.len() < 8 * opts.jobs {
        let mut next = Vec::new();
        for (from, path) in &frontier {
            let mark = scratch.trail.len();
            for &(pos, c) in path {
                scratch.assign(pos, c);
            }
            match scratch.next_open(*from) {
                None => return Ok((Some(scratch), total.load(Ordering::Relaxed))),
                Some(pos) => {
                    let mut allowed = scratch.allowed(pos);
                    while allowed != 0 {
                        let c = allowed.trailing_zeros() as u8;
                        allowed &= allowed - 1;
                        total.fetch_add(1, Ordering::Relaxed);
                        let m = scratch.trail.len();
                        if scratch.assign(pos as u32, c) {
                            let mut p = path.clone();
                            p.push((pos as u32, c));
                            next.push((pos + 1, p));
                        }
                        scratch.undo_to(m);
                    }
                }
            }
            scratch.undo_to(mark);
        }
        if next.is_empty() {
            return Ok((None, total.load(Ordering::Relaxed)));
        }
        let grew = next.len() > frontier.len();
        frontier = next;
        if !grew && frontier.len() == 1 && frontier[0].1.len() > base.color.len() {
            break;
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    let found = pool.install(|| {
        frontier.par_iter().find_map_any(|(from, path)| {
            let mut s = base.clone();
            for &(pos, c) in path {
                s.assign(pos, c);
            }
            let mut counter = Counter {
                nodes: 0,
                budget: opts.budget,
                shared: Some((&total, &stop)),
            };
            match s.dfs(*from, &mut counter) {
                Flow::Found => {
                    stop.store(true, Ordering::Relaxed);
                    Some(s)
                }
                Flow::Abort | Flow::Exhausted => None,
            }
        })
    });
    Ok((found, total.load(Ordering::Relaxed)))
}

/// Searches for a `K_t`-free `k`-coloring of `h`.
pub fn find_free_coloring(
    h: &Hypergraph,
    t: usize,
    k: u8,
    opts: &SearchOptions,
) -> Result<ArrowVerdict> {
    run(h, t, k, None, opts)
}

/// Searches for a `K_t`-free coloring of `h` that agrees with `partial` where it is defined.
pub fn extend_free_coloring(
    h: &Hypergraph,
    t: usize,
    k: u8,
    partial: &EdgeColoring,
    opts: &SearchOptions,
) -> Result<ArrowVerdict> {
    run(h, t, k, Some(partial), opts)
}

/// `h → (K_t)_k`, searched to completion.
pub fn arrows(h: &Hypergraph, t: usize, k: u8) -> Result<bool> {
    arrows_with(h, t, k, &SearchOptions::default())
}

pub fn arrows_with(h: &Hypergraph, t: usize, k: u8, opts: &SearchOptions) -> Result<bool> {
    find_free_coloring(h, t, k, opts)?.decided()
}

/// Arrows, and no single-edge deletion does.
pub fn is_minimal_ramsey(h: &Hypergraph, t: usize, k: u8, opts: &SearchOptions) -> Result<bool> {
    if !arrows_with(h, t, k, opts)? {
        return Ok(false);
    }
    for e in h.edges() {
        if arrows_with(&h.without_edge(e.vertices()), t, k, opts)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Greedy lexicographic edge deletion down to a minimal Ramsey subhypergraph.
///
/// One pass suffices: an edge kept earlier stays necessary because arrowing
/// is monotone under taking subhypergraphs. Isolated vertices are dropped
/// and surviving vertices are labelled with their original ids.
pub fn minimalize(h: &Hypergraph, t: usize, k: u8, opts: &SearchOptions) -> Result<Hypergraph> {
    if !arrows_with(h, t, k, opts)? {
        return Err(Error::NotRamsey);
    }
    let mut cur = h.clone();
    for e in h.edges() {
        let trial = cur.without_edge(e.vertices());
        if arrows_with(&trial, t, k, opts)? {
            cur = trial;
        }
    }
    for v in cur.vertices() {
        if cur.label(v).is_none() {
            cur.set_label(v, v.to_string());
        }
    }
    Ok(cur.without_isolated())
}
