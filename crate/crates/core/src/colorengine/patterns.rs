use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::search::{extend_free_coloring, Outcome, SearchOptions};
use super::{Color, EdgeColoring};
use crate::error::{Error, Result};
use crate::hypercore::{Edge, Hypergraph, Vertex};

/// Color-count tuples `(a_1, ..., a_k)` over `ell` special edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternSet {
    pub ell: usize,
    pub k: u8,
    pub patterns: BTreeSet<Vec<usize>>,
    /// A free coloring realizing each pattern, when the set was computed.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub witnesses: BTreeMap<Vec<usize>, EdgeColoring>,
    /// False when some search ran out of budget, so patterns may be missing.
    pub complete: bool,
}

impl PatternSet {
    /// A hand-written pattern set; every tuple must have length `k` and sum `ell`.
    pub fn new(ell: usize, k: u8, patterns: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        let patterns: BTreeSet<Vec<usize>> = patterns.into_iter().collect();
        for p in &patterns {
            if p.len() != k as usize || p.iter().sum::<usize>() != ell {
                return Err(Error::InvalidParameter(format!(
                    "pattern {p:?} is not a {k}-tuple summing to {ell}"
                )));
            }
        }
        Ok(PatternSet {
            ell,
            k,
            patterns,
            witnesses: BTreeMap::new(),
            complete: true,
        })
    }

    pub fn contains(&self, hist: &[usize]) -> bool {
        self.patterns.contains(hist)
    }

    /// Some pattern dominates `partial` coordinatewise.
    pub fn can_complete(&self, partial: &[usize]) -> bool {
        self.patterns
            .iter()
            .any(|p| p.iter().zip(partial).all(|(a, b)| a >= b))
    }

    /// Every coordinate of every pattern avoids `0` and `ell`.
    pub fn is_nondegenerate(&self) -> bool {
        self.patterns
            .iter()
            .all(|p| p.iter().all(|&a| a != 0 && a != self.ell))
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }
}

/// All `k`-tuples of nonnegative integers summing to `ell` in nonincreasing order.
fn partitions(ell: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 0 {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for a in (0..=rest.min(max)).rev() {
            cur.push(a);
            go(rest - a, a, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(ell, ell, k, &mut Vec::new(), &mut out);
    out
}

/// Assignments of colors `1..=k` to `ell` slots with exactly the histogram `hist`.
fn assignments(hist: &[usize]) -> Vec<Vec<Color>> {
    let mut out = Vec::new();
    let mut left = hist.to_vec();
    let ell: usize = hist.iter().sum();
    fn go(left: &mut Vec<usize>, cur: &mut Vec<Color>, ell: usize, out: &mut Vec<Vec<Color>>) {
        if cur.len() == ell {
            out.push(cur.clone());
            return;
        }
        for c in 0..left.len() {
            if left[c] > 0 {
                left[c] -= 1;
                cur.push(c as Color + 1);
                go(left, cur, ell, out);
                cur.pop();
                left[c] += 1;
            }
        }
    }
    go(&mut left, &mut Vec::new(), ell, &mut out);
    out
}

/// The admissible patterns of `f` over the edges containing `core`.
///
/// `core` has `r - 1` vertices; the edges through it are the special edges,
/// ordered by their remaining vertex. Only histograms in nonincreasing order
/// are searched; the rest follow by permuting colors of the witnesses.
pub fn admissible_patterns(
    f: &Hypergraph,
    core: &[Vertex],
    ell: usize,
    t: usize,
    k: u8,
    opts: &SearchOptions,
) -> Result<PatternSet> {
    let r = f.uniformity();
    let core = Edge::new(core.to_vec())?;
    if core.len() + 1 != r {
        return Err(Error::OutOfRange {
            what: "special core (need r-1 vertices)",
            size: core.len(),
        });
    }
    for &v in core.vertices() {
        f.check_vertex(v)?;
    }
    let special: Vec<Edge> = f
        .edges()
        .filter(|e| e.contains_all(core.vertices()))
        .cloned()
        .collect();
    if special.len() != ell {
        return Err(Error::InvalidParameter(format!(
            "{} edges contain the core, expected {ell}",
            special.len()
        )));
    }

    let mut set = PatternSet {
        ell,
        k,
        patterns: BTreeSet::new(),
        witnesses: BTreeMap::new(),
        complete: true,
    };
    for hist in partitions(ell, k as usize) {
        let mut realized = None;
        for colors in assignments(&hist) {
            let mut partial = EdgeColoring::new(k)?;
            for (e, &c) in special.iter().zip(&colors) {
                partial.set(e.clone(), c)?;
            }
            match extend_free_coloring(f, t, k, &partial, opts)?.outcome {
                Outcome::Free(w) => {
                    realized = Some(w);
                    break;
                }
                Outcome::Arrows => {}
                Outcome::Unknown => set.complete = false,
            }
        }
        let Some(w) = realized else { continue };
        for perm in (1..=k).permutations(k as usize) {
            let mut p = vec![0; k as usize];
            for (c, &a) in hist.iter().enumerate() {
                p[perm[c] as usize - 1] = a;
            }
            if set.patterns.insert(p.clone()) {
                set.witnesses.insert(p, w.permuted(&perm));
            }
        }
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_are_sorted_histograms() {
        assert_eq!(partitions(2, 2), vec![vec![2, 0], vec![1, 1]]);
        assert_eq!(partitions(3, 3).len(), 3);
        assert_eq!(assignments(&[1, 1]).len(), 2);
        assert_eq!(assignments(&[2, 1, 0]).len(), 3);
    }

    #[test]
    fn no_cliques_gives_every_pattern() {
        let f = Hypergraph::from_edges(3, 4, [[0, 1, 2], [0, 1, 3]]).unwrap();
        let p = admissible_patterns(&f, &[0, 1], 2, 4, 2, &SearchOptions::default()).unwrap();
        let expected: BTreeSet<Vec<usize>> =
            [vec![2, 0], vec![1, 1], vec![0, 2]].into_iter().collect();
        assert_eq!(p.patterns, expected);
        assert!(p.complete);
        assert!(!p.is_nondegenerate());
    }

    #[test]
    fn witnesses_realize_patterns() {
        let f = Hypergraph::complete(3, 5).unwrap();
        let p = admissible_patterns(&f, &[3, 4], 3, 4, 2, &SearchOptions::default()).unwrap();
        for (pat, w) in &p.witnesses {
            assert!(super::super::check_free(&f, w, 4).unwrap().is_empty());
            let hist: Vec<usize> = (1..=2u8)
                .map(|c| {
                    f.edges()
                        .filter(|e| e.contains_all(&[3, 4]) && w.get(e.vertices()) == Some(c))
                        .count()
                })
                .collect();
            assert_eq!(&hist, pat);
        }
        assert_eq!(p.witnesses.len(), p.len());
    }

    #[test]
    fn hand_written_sets_are_validated() {
        assert!(PatternSet::new(2, 2, [vec![1, 1]]).is_ok());
        assert!(PatternSet::new(2, 2, [vec![1, 2]]).is_err());
        let p = PatternSet::new(2, 2, [vec![1, 1]]).unwrap();
        assert!(p.can_complete(&[1, 0]));
        assert!(!p.can_complete(&[2, 0]));
    }
}
