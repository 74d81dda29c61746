use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{compute_bad_edges, count_bad_supported, sample_h3_stream, GENERATOR};
use crate::error::{Error, Result};
use crate::hypercore::{binomial, Hypergraph};

/// Parameters in base-`k` logarithms. The sampled fields are only set for desk-scale runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabParams {
    pub k: u32,
    pub t: u32,
    pub n: Option<usize>,
    pub p: Option<f64>,
    pub c: Option<f64>,
    pub f_t: f64,
    pub seed: Option<u64>,
    pub log_n: f64,
    pub log_p: f64,
    pub log_c: f64,
    pub log_f_t: f64,
}

fn check_kt(k: u32, t: u32) -> Result<()> {
    if k < 2 || t < 4 {
        return Err(Error::InvalidParameter(format!(
            "need k >= 2 and t >= 4, got k = {k}, t = {t}"
        )));
    }
    Ok(())
}

/// `n = k^(10 k t^4)`, `C = k^(100k/t)`, `p = C n^(-6/((t-1)(t-2)))`, `f(t) = k^(-k t^2)`.
pub fn asymptotic_params(k: u32, t: u32) -> Result<LabParams> {
    check_kt(k, t)?;
    let (kf, tf) = (k as f64, t as f64);
    let log_n = 10.0 * kf * tf.powi(4);
    let log_c = 100.0 * kf / tf;
    let log_p = log_c - 6.0 * log_n / ((tf - 1.0) * (tf - 2.0));
    let log_f_t = -kf * tf * tf;
    Ok(LabParams {
        k,
        t,
        n: None,
        p: None,
        c: None,
        f_t: kf.powf(log_f_t),
        seed: None,
        log_n,
        log_p,
        log_c,
        log_f_t,
    })
}

impl LabParams {
    /// Desk-scale run at user-chosen `n` and `p`.
    pub fn desk(k: u32, t: u32, n: usize, p: f64, seed: u64) -> Result<LabParams> {
        check_kt(k, t)?;
        if !(p > 0.0 && p <= 1.0) || n < 2 {
            return Err(Error::InvalidParameter(format!(
                "need n >= 2 and 0 < p <= 1, got n = {n}, p = {p}"
            )));
        }
        let kf = k as f64;
        let log_c = 100.0 * kf / t as f64;
        let log_f_t = -kf * (t * t) as f64;
        Ok(LabParams {
            k,
            t,
            n: Some(n),
            p: Some(p),
            c: Some(kf.powf(log_c)),
            f_t: kf.powf(log_f_t),
            seed: Some(seed),
            log_n: (n as f64).log(kf),
            log_p: p.log(kf),
            log_c,
            log_f_t,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub mean: f64,
    pub se: f64,
    pub expected: f64,
    pub pass: bool,
}

impl Estimate {
    fn from_samples(xs: &[f64], expected: f64) -> Estimate {
        let m = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / m;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (m - 1.0);
        let se = (var / m).sqrt();
        let tol = 1e-9 * expected.abs().max(1.0);
        let pass = if se == 0.0 {
            (mean - expected).abs() <= tol
        } else {
            (mean - expected).abs() <= 4.0 * se + tol
        };
        Estimate {
            mean,
            se,
            expected,
            pass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpectationReport {
    pub n: usize,
    pub p: f64,
    pub k: usize,
    pub t: usize,
    pub trials: usize,
    pub seed: u64,
    pub generator: String,
    /// `e(H'_1)` against `C(n,3) p`.
    pub edges: Estimate,
    /// `e(H'_1 ∩ H'_2)` against `C(n,3) p^2`; absent when `k = 1`.
    pub overlap: Option<Estimate>,
    /// `t`-cliques of `H'_1` against `C(n,t) p^C(t,3)`.
    pub cliques: Estimate,
    /// `f(t) n^(t-1) p^C(t-1,3)`.
    pub lambda: f64,
    /// Expected `(t-1)`-clique pairs of `H'_1` sharing `s` vertices, `s = 3..=t-2`.
    pub g_summands: Vec<(usize, f64)>,
    pub delta_bar: f64,
    pub bad_supported_mean: f64,
    pub bad_supported_ratio: f64,
    pub bad_threshold: f64,
    pub pass: bool,
}

struct Trial {
    edges: f64,
    overlap: f64,
    cliques: f64,
    bad: f64,
}

fn run_trial(n: usize, p: f64, k: usize, t: usize, seed: u64, i: usize) -> Result<Trial> {
    let family: Vec<Hypergraph> = (0..k)
        .map(|j| sample_h3_stream(n, p, seed, (i * k + j) as u64))
        .collect::<Result<_>>()?;
    let h = &family[0];
    let overlap = family.get(1).map_or(0, |g| {
        h.edges().filter(|e| g.contains_edge(e.vertices())).count()
    });
    let bad = compute_bad_edges(&family, t)?;
    Ok(Trial {
        edges: h.edge_count() as f64,
        overlap: overlap as f64,
        cliques: h.clique_count(t)? as f64,
        bad: count_bad_supported(h, &bad[0], t)? as f64,
    })
}

/// Monte Carlo means over `trials` families of `k` members. Trial `i` uses
/// streams `i*k .. i*k + k`; results are summed in trial order whatever `jobs` is.
pub fn expectation_report(
    n: usize,
    p: f64,
    k: usize,
    t: usize,
    trials: usize,
    seed: u64,
    jobs: usize,
) -> Result<ExpectationReport> {
    if trials < 30 {
        return Err(Error::InvalidParameter(format!(
            "need at least 30 trials, got {trials}"
        )));
    }
    if k == 0 || t < 4 || !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "need k >= 1, t >= 4, 0 <= p <= 1 (k = {k}, t = {t}, p = {p})"
        )));
    }
    let runs: Vec<Trial> = if jobs > 1 {
        (0..trials)
            .into_par_iter()
            .map(|i| run_trial(n, p, k, t, seed, i))
            .collect::<Result<_>>()?
    } else {
        (0..trials)
            .map(|i| run_trial(n, p, k, t, seed, i))
            .collect::<Result<_>>()?
    };
    let col = |f: fn(&Trial) -> f64| runs.iter().map(f).collect::<Vec<_>>();
    let nf = n as f64;
    let triples = binomial(n as u64, 3) as f64;
    let edges = Estimate::from_samples(&col(|r| r.edges), triples * p);
    let overlap = (k >= 2).then(|| Estimate::from_samples(&col(|r| r.overlap), triples * p * p));
    let cliques = Estimate::from_samples(
        &col(|r| r.cliques),
        binomial(n as u64, t as u64) as f64 * p.powi(binomial(t as u64, 3) as i32),
    );

    let f_t = (k.max(2) as f64).powi(-((k.max(2) * t * t) as i32));
    let e_t1 = binomial(t as u64 - 1, 3) as i32;
    let lambda = f_t * nf.powi(t as i32 - 1) * p.powi(e_t1);
    let g_summands: Vec<(usize, f64)> = (3..=t - 2)
        .map(|s| {
            let pairs = binomial(n as u64, t as u64 - 1) as f64
                * binomial(t as u64 - 1, s as u64) as f64
                * binomial((n + 1).saturating_sub(t) as u64, (t - 1 - s) as u64) as f64;
            (s, pairs * p.powi(2 * e_t1 - binomial(s as u64, 3) as i32))
        })
        .collect();
    let delta_bar = g_summands.iter().map(|&(_, g)| g).sum();
    let bad_supported_mean = col(|r| r.bad).iter().sum::<f64>() / trials as f64;
    let bad_supported_ratio = if lambda > 0.0 {
        bad_supported_mean / lambda
    } else {
        0.0
    };

    let pass = edges.pass && cliques.pass && overlap.as_ref().is_none_or(|o| o.pass);
    Ok(ExpectationReport {
        n,
        p,
        k,
        t,
        trials,
        seed,
        generator: GENERATOR.into(),
        edges,
        overlap,
        cliques,
        lambda,
        g_summands,
        delta_bar,
        bad_supported_mean,
        bad_supported_ratio,
        bad_threshold: 0.2,
        pass,
    })
}
