use itertools::Itertools;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypercore::{binomial, Hypergraph, Vertex};

/// A `k`-coloring of the pairs of `[n]`, colors `1..=k`, pairs in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairColoring {
    n: usize,
    k: u8,
    colors: Vec<u8>,
}

impl PairColoring {
    pub fn new(n: usize, k: u8, colors: Vec<u8>) -> Result<Self> {
        if colors.len() != n * n.saturating_sub(1) / 2 {
            return Err(Error::InvalidParameter(format!(
                "{n} vertices need {} pair colors",
                n * n.saturating_sub(1) / 2
            )));
        }
        if let Some(&c) = colors.iter().find(|&&c| c == 0 || c > k) {
            return Err(Error::BadColor { color: c, k });
        }
        Ok(PairColoring { n, k, colors })
    }

    pub fn constant(n: usize, k: u8, color: u8) -> Result<Self> {
        PairColoring::new(n, k, vec![color; n * n.saturating_sub(1) / 2])
    }

    /// Uniformly random colors.
    pub fn random(n: usize, k: u8, rng: &mut impl Rng) -> Self {
        let colors = (0..n * n.saturating_sub(1) / 2)
            .map(|_| rng.random_range(1..=k))
            .collect();
        PairColoring { n, k, colors }
    }

    /// The `index`-th coloring in base-`k` order, pair 0 least significant.
    pub fn from_index(n: usize, k: u8, mut index: u64) -> Self {
        let colors = (0..n * n.saturating_sub(1) / 2)
            .map(|_| {
                let c = (index % k as u64) as u8 + 1;
                index /= k as u64;
                c
            })
            .collect();
        PairColoring { n, k, colors }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    fn index(&self, u: Vertex, v: Vertex) -> usize {
        let (u, v) = if u < v {
            (u as usize, v as usize)
        } else {
            (v as usize, u as usize)
        };
        u * (2 * self.n - u - 1) / 2 + (v - u - 1)
    }

    pub fn get(&self, u: Vertex, v: Vertex) -> u8 {
        self.colors[self.index(u, v)]
    }

    /// Every pair inside `set` has color `x`.
    pub fn is_mono(&self, set: &[Vertex], x: u8) -> bool {
        set.iter()
            .tuple_combinations()
            .all(|(&u, &v)| self.get(u, v) == x)
    }

    /// Monochromatic `ell`-sets per color, indexed `0..k`.
    pub fn mono_counts(&self, ell: usize) -> Vec<u64> {
        let mut counts = vec![0; self.k as usize];
        for s in (0..self.n as Vertex).combinations(ell) {
            let c = self.get(s[0], s[1]);
            if self.is_mono(&s, c) {
                counts[c as usize - 1] += 1;
            }
        }
        counts
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Reproduced by the coloring engine (see [`RamseyTable::verify_engine_entries`]).
    Engine,
    /// Taken from the literature; too large to reproduce here.
    External,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamseyEntry {
    pub k: u8,
    pub ell: usize,
    pub value: u64,
    pub provenance: Provenance,
}

/// Known graph Ramsey numbers `r_k(ell)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamseyTable {
    pub entries: Vec<RamseyEntry>,
}

impl Default for RamseyTable {
    fn default() -> Self {
        let e = |k, ell, value, provenance| RamseyEntry {
            k,
            ell,
            value,
            provenance,
        };
        RamseyTable {
            entries: vec![
                e(2, 3, 6, Provenance::Engine),
                e(2, 4, 18, Provenance::External),
                e(3, 3, 17, Provenance::External),
            ],
        }
    }
}

impl RamseyTable {
    pub fn get(&self, k: u8, ell: usize) -> Result<u64> {
        self.entries
            .iter()
            .find(|e| e.k == k && e.ell == ell)
            .map(|e| e.value)
            .ok_or(Error::MissingRamseyEntry {
                k: k as u32,
                ell: ell as u32,
            })
    }

    /// `k^(k*ell - 2k + 1)`, the generic upper bound.
    pub fn upper_bound(k: u64, ell: u64) -> u128 {
        (k as u128).saturating_pow((k * ell + 1).saturating_sub(2 * k) as u32)
    }

    /// Re-derives every engine entry: `K_r` arrows and `K_{r-1}` does not.
    pub fn verify_engine_entries(&self) -> Result<bool> {
        use crate::colorengine::arrows;
        for e in self
            .entries
            .iter()
            .filter(|e| e.provenance == Provenance::Engine)
        {
            let r = e.value as usize;
            if !arrows(&Hypergraph::complete(2, r)?, e.ell, e.k)?
                || arrows(&Hypergraph::complete(2, r - 1)?, e.ell, e.k)?
            {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactBound {
    pub best_color: u8,
    pub count: u64,
    /// `n^ell / (k * r^ell)`.
    pub bound: f64,
    pub holds: bool,
}

/// The most frequent color's monochromatic `K_ell` count against `n^ell / (k r_k(ell)^ell)`.
pub fn fact_count_bound(psi: &PairColoring, ell: usize, table: &RamseyTable) -> Result<FactBound> {
    let r = table.get(psi.k, ell)?;
    if (psi.n as u64) < r {
        return Err(Error::InvalidParameter(format!(
            "n = {} below r_{}({ell}) = {r}",
            psi.n, psi.k
        )));
    }
    let counts = psi.mono_counts(ell);
    let (best, &count) = counts
        .iter()
        .enumerate()
        .max_by_key(|&(c, &n)| (n, std::cmp::Reverse(c)))
        .unwrap();
    let num = (psi.n as u128).pow(ell as u32);
    let den = psi.k as u128 * (r as u128).pow(ell as u32);
    Ok(FactBound {
        best_color: best as u8 + 1,
        count,
        bound: num as f64 / den as f64,
        holds: count as u128 * den >= num,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyB {
    pub colorings: u64,
    pub satisfied: u64,
    pub fraction: f64,
    pub exhaustive: bool,
}

/// For each pair coloring, whether one color `x` has a monochromatic `K_{t-1}`
/// supported in every member of `family`. Exhaustive when at most
/// `2^16` colorings exist, otherwise `samples` colorings drawn from `seed`.
pub fn property_b_toy_check(
    family: &[Hypergraph],
    t: usize,
    k: u8,
    samples: u64,
    seed: u64,
) -> Result<PropertyB> {
    let n = family
        .first()
        .map(Hypergraph::vertex_count)
        .ok_or(Error::InvalidParameter("empty family".into()))?;
    let supports: Vec<Vec<Vec<Vertex>>> = family.iter().map(|h| h.cliques(t - 1)).try_collect()?;
    let holds = |psi: &PairColoring| {
        (1..=k).any(|x| {
            supports
                .iter()
                .all(|cl| cl.iter().any(|c| psi.is_mono(c, x)))
        })
    };
    let pairs = binomial(n as u64, 2);
    let total = (k as u128)
        .checked_pow(pairs as u32)
        .filter(|&t| t <= 1 << 16);
    let (colorings, satisfied, exhaustive) = match total {
        Some(total) => {
            let sat = (0..total as u64)
                .filter(|&i| holds(&PairColoring::from_index(n, k, i)))
                .count() as u64;
            (total as u64, sat, true)
        }
        None => {
            let mut r = super::rng(seed, 0);
            let sat = (0..samples)
                .filter(|_| holds(&PairColoring::random(n, k, &mut r)))
                .count() as u64;
            (samples, sat, false)
        }
    };
    let fraction = if colorings == 0 {
        0.0
    } else {
        satisfied as f64 / colorings as f64
    };
    Ok(PropertyB {
        colorings,
        satisfied,
        fraction,
        exhaustive,
    })
}
