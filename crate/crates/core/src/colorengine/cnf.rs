use std::fmt::Write as _;

use itertools::Itertools;

use super::{Color, EdgeColoring, MAX_COLORS};
use crate::error::{Error, Result};
use crate::hypercore::{Edge, Hypergraph};

/// A CNF formula whose models are the clique-free colorings of a host.
///
/// Variable `x_{e,c}` is `e * k + c + 1` for edge index `e` (lexicographic)
/// and color `c` in `0..k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cnf {
    pub k: u8,
    pub edges: Vec<Edge>,
    pub clauses: Vec<Vec<i32>>,
    /// Number of clique clauses, one per clique and color.
    pub clique_clauses: usize,
}

impl Cnf {
    pub fn num_vars(&self) -> usize {
        self.edges.len() * self.k as usize
    }

    pub fn var(&self, edge: usize, color: Color) -> i32 {
        (edge * self.k as usize + color as usize) as i32
    }

    /// DIMACS text with `c map <var> <edge> <color>` lines for every variable.
    pub fn to_dimacs(&self) -> String {
        let mut s = String::new();
        for (i, e) in self.edges.iter().enumerate() {
            for c in 1..=self.k {
                let vs = e.vertices().iter().join(",");
                writeln!(s, "c map {} {{{vs}}} {c}", self.var(i, c)).unwrap();
            }
        }
        writeln!(s, "p cnf {} {}", self.num_vars(), self.clauses.len()).unwrap();
        for cl in &self.clauses {
            writeln!(s, "{} 0", cl.iter().join(" ")).unwrap();
        }
        s
    }

    /// Checks a full assignment, indexed by variable (index 0 unused).
    pub fn evaluate(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|cl| {
            cl.iter()
                .any(|&l| assignment[l.unsigned_abs() as usize] == (l > 0))
        })
    }

    /// Reads a coloring off a model, indexed by variable (index 0 unused).
    pub fn decode(&self, model: &[bool]) -> Result<EdgeColoring> {
        let mut out = EdgeColoring::new(self.k)?;
        for (i, e) in self.edges.iter().enumerate() {
            let c = (1..=self.k)
                .find(|&c| model[self.var(i, c) as usize])
                .ok_or_else(|| Error::PartialColoring(e.clone()))?;
            out.set(e.clone(), c)?;
        }
        Ok(out)
    }
}

/// Encodes "`h` has a `K_t`-free `k`-coloring" as CNF.
pub fn export_cnf(h: &Hypergraph, t: usize, k: u8) -> Result<Cnf> {
    if k == 0 || k > MAX_COLORS {
        return Err(Error::InvalidParameter(format!(
            "color count {k} outside 1..={MAX_COLORS}"
        )));
    }
    let r = h.uniformity();
    let edges: Vec<Edge> = h.edges().cloned().collect();
    let index: std::collections::HashMap<&[u32], usize> = edges
        .iter()
        .enumerate()
        .map(|(i, e)| (e.vertices(), i))
        .collect();
    let mut cnf = Cnf {
        k,
        edges: Vec::new(),
        clauses: Vec::new(),
        clique_clauses: 0,
    };
    let kk = k as usize;
    let var = |e: usize, c: usize| (e * kk + c + 1) as i32;
    for e in 0..edges.len() {
        cnf.clauses.push((0..kk).map(|c| var(e, c)).collect());
        for (a, b) in (0..kk).tuple_combinations() {
            cnf.clauses.push(vec![-var(e, a), -var(e, b)]);
        }
    }
    for clique in h.cliques(t)? {
        let ids: Vec<usize> = clique
            .into_iter()
            .combinations(r)
            .map(|s| index[&s[..]])
            .collect();
        for c in 0..kk {
            cnf.clauses.push(ids.iter().map(|&e| -var(e, c)).collect());
            cnf.clique_clauses += 1;
        }
    }
    cnf.edges = edges;
    Ok(cnf)
}
