//! Three operations for the browser page in `www/`: arrowing on a pasted
//! hypergraph, the partition host with its clique count, and a Monte Carlo
//! report. Each returns a JSON string.

use minram::codegree::{build_partition_host, expected_host_cliques};
use minram::colorengine::{find_free_coloring, SearchOptions};
use minram::randomlab::expectation_report;
use minram::Hypergraph;
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Upper limits that keep the page responsive.
const MAX_BUDGET: u64 = 5_000_000;
const MAX_LAB_N: usize = 20;
const MAX_TRIALS: usize = 2_000;

pub fn arrow_json(graph: &str, t: usize, k: u8, budget: u64) -> Result<String, String> {
    let (h, _) = Hypergraph::from_json(graph).map_err(|e| e.to_string())?;
    let opts = SearchOptions::with_budget(budget.clamp(1, MAX_BUDGET));
    let v = find_free_coloring(&h, t, k, &opts).map_err(|e| e.to_string())?;
    Ok(serde_json::to_string(&v).unwrap())
}

pub fn host_json(t: usize, augmented: bool) -> Result<String, String> {
    if t > 6 {
        return Err(format!("t = {t} is too large for the page; try 4, 5 or 6"));
    }
    let host = build_partition_host(t).map_err(|e| e.to_string())?;
    let g = if augmented {
        host.augmented()
    } else {
        host.graph.clone()
    };
    let cliques = g.clique_count(t).map_err(|e| e.to_string())?;
    let doc: serde_json::Value = serde_json::from_str(&g.to_json()).unwrap();
    Ok(json!({
        "t": t,
        "augmented": augmented,
        "vertices": g.vertex_count(),
        "edges": g.edge_count(),
        "cliques": cliques,
        "expected_after_augmenting": expected_host_cliques(t).to_string(),
        "codegree_ab": g.codegree(host.a, host.b).unwrap(),
        "graph": doc,
    })
    .to_string())
}

pub fn lab_json(
    n: usize,
    p: f64,
    k: usize,
    t: usize,
    trials: usize,
    seed: u64,
) -> Result<String, String> {
    if n > MAX_LAB_N || trials > MAX_TRIALS {
        return Err(format!(
            "keep n <= {MAX_LAB_N} and trials <= {MAX_TRIALS} in the browser"
        ));
    }
    let rep = expectation_report(n, p, k, t, trials, seed, 1).map_err(|e| e.to_string())?;
    Ok(serde_json::to_string(&rep).unwrap())
}

#[wasm_bindgen]
pub fn arrow(graph: &str, t: usize, k: u8, budget: u64) -> Result<String, JsError> {
    arrow_json(graph, t, k, budget).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn partition_host(t: usize, augmented: bool) -> Result<String, JsError> {
    host_json(t, augmented).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn lab_report(
    n: usize,
    p: f64,
    k: usize,
    t: usize,
    trials: usize,
    seed: u64,
) -> Result<String, JsError> {
    lab_json(n, p, k, t, trials, seed).map_err(|e| JsError::new(&e))
}
