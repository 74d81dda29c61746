//! One PASS/FAIL line per acceptance criterion, each with a pinned runtime limit.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use itertools::Itertools;
use minram::codegree::{
    build_partition_host, expected_host_cliques, extend_coloring_lower_bound, forced_pattern_check,
    random_coloring_expectation,
};
use minram::colorengine::{
    arrows, export_cnf, find_free_coloring, is_minimal_ramsey, PatternSet, SearchOptions,
};
use minram::gadgets::{
    amplify_distance, build_bel, build_equalizer, build_far_seed, build_hstar, build_rainbow,
};
use minram::randomlab::{
    expectation_report, fact_count_bound, prune, sample_family, PairColoring, RamseyTable,
};
use minram::{Hypergraph, Vertex};
use num_rational::BigRational;
use num_traits::One;

type Check = fn() -> Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn c1_codegree_identity() -> Result<String, String> {
    let mut found = Vec::new();
    for (t, want) in [(4, 6usize), (5, 30)] {
        let host = build_partition_host(t).map_err(|e| e.to_string())?;
        let aug = host.augmented();
        let got = brute_cliques(&aug, t).len();
        ensure!(got == want, "t = {t}: {got} cliques, expected {want}");
        ensure!(
            expected_host_cliques(t) == want as u128,
            "closed form disagrees at t = {t}"
        );
        ensure!(
            brute_cliques(&host.graph, t).is_empty(),
            "host already has a clique at t = {t}"
        );
        found.push(format!("t={t}: {got}"));
    }
    Ok(found.join(", "))
}

fn c2_forcing() -> Result<String, String> {
    for (t, want) in [(4, 16u64), (5, 512)] {
        let host = build_partition_host(t).map_err(|e| e.to_string())?;
        let r = forced_pattern_check(&host, &host.augmented(), t).map_err(|e| e.to_string())?;
        ensure!(
            r.assignments == want,
            "t = {t}: {} assignments, expected {want}",
            r.assignments
        );
        ensure!(
            r.forced,
            "t = {t}: completion {:?} is free",
            r.counterexample
        );
    }
    let host = build_partition_host(4).map_err(|e| e.to_string())?;
    let aug = host.augmented();
    for e in host.apex_edges() {
        let r = forced_pattern_check(&host, &aug.without_edge(e.vertices()), 4)
            .map_err(|e| e.to_string())?;
        ensure!(!r.forced, "still forced without {e}");
    }
    Ok("2^4 and 2^9 completions forced; each of 4 deletions unforced".into())
}

fn c3_lower_bound() -> Result<String, String> {
    let mut r = rng(3);
    for i in 0..500 {
        let t = 4 + i % 2;
        let (h, partial) = lower_bound_instance(t, &mut r);
        ensure!(
            h.codegree(0, 1).unwrap() < (t - 2) * (t - 2),
            "instance {i} violates the codegree bound"
        );
        let cert = extend_coloring_lower_bound(&h, 0, 1, &partial, t)
            .map_err(|e| format!("instance {i}: {e}"))?;
        ensure!(
            brute_is_free(&h, &colors_in_order(&h, &cert.extended), t),
            "instance {i}: extension not free"
        );
    }
    Ok("500/500 certificates free".into())
}

fn c4_expectation() -> Result<String, String> {
    let (v4, _) = random_coloring_expectation(4).map_err(|e| e.to_string())?;
    ensure!(
        v4 == BigRational::new(3.into(), 4.into()),
        "t = 4 gives {v4}"
    );
    let mut worst = BigRational::from_integer(0.into());
    for t in 4..=20 {
        let (v, lt) = random_coloring_expectation(t).map_err(|e| e.to_string())?;
        ensure!(lt && v < BigRational::one(), "t = {t} gives {v}");
        worst = worst.max(v);
    }
    Ok(format!("t=4: {v4}, max over 4..=20: {worst}"))
}

fn c5_engine_calibration() -> Result<String, String> {
    let k6 = Hypergraph::complete(2, 6).unwrap();
    let k5 = Hypergraph::complete(2, 5).unwrap();
    ensure!(arrows(&k6, 3, 2).unwrap(), "K6 does not arrow K3");
    let v = find_free_coloring(&k5, 3, 2, &SearchOptions::default()).unwrap();
    let w = v.witness().ok_or("K5 reported as arrowing")?;
    ensure!(
        brute_is_free(&k5, &colors_in_order(&k5, w), 3),
        "K5 witness has a monochromatic triangle"
    );
    ensure!(
        is_minimal_ramsey(&k6, 3, 2, &SearchOptions::default()).unwrap(),
        "K6 not minimal"
    );
    Ok(format!("K5 witness checked, {} nodes", v.nodes))
}

fn c6_fact_bound() -> Result<String, String> {
    let table = RamseyTable::default();
    ensure!(
        table.verify_engine_entries().unwrap(),
        "engine entries do not reproduce"
    );
    ensure!(table.get(2, 3).unwrap() == 6, "r_2(3) entry");
    let mut violations = 0;
    let mut min6 = u64::MAX;
    for i in 0..1u64 << 15 {
        let fb = fact_count_bound(&PairColoring::from_index(6, 2, i), 3, &table).unwrap();
        violations += !fb.holds as u32;
        min6 = min6.min(fb.count);
    }
    let mut r = rng(6);
    let mut min7 = u64::MAX;
    for _ in 0..100_000 {
        let fb = fact_count_bound(&PairColoring::random(7, 2, &mut r), 3, &table).unwrap();
        violations += !fb.holds as u32;
        min7 = min7.min(fb.count);
    }
    ensure!(violations == 0, "{violations} violations");
    Ok(format!(
        "0 violations; min best-color count K6 {min6}, K7 {min7}"
    ))
}

fn c7_gadget_algebra() -> Result<String, String> {
    let mut runs = 0;
    for k in 2..=4u8 {
        for seed in 0..12u64 {
            let mut r = rng(seed);
            let sender = mock_sender(seed as usize % 4, (seed % 4) as Vertex, &mut r);
            let rb = build_rainbow(k, &sender).map_err(|e| e.to_string())?;
            let s = rb.tags.s.clone().ok_or("rainbow without S")?;
            for (a, b) in rb.tags.rainbow.iter().tuple_combinations() {
                ensure!(
                    a.intersection(b) == s,
                    "k = {k}: rainbow edges meet outside S"
                );
            }
            let union: Vec<Vertex> = rb
                .tags
                .rainbow
                .iter()
                .flat_map(|e| e.vertices().to_vec())
                .sorted()
                .dedup()
                .collect();
            ensure!(
                union.len() == k as usize + 2,
                "k = {k}: union has {} vertices",
                union.len()
            );
            ensure!(
                rb.graph.edges_within(&union).len() == k as usize,
                "k = {k}: extra edges on the star"
            );

            let eq = build_equalizer(&rb).map_err(|e| e.to_string())?;
            let (e, f) = (eq.e().unwrap(), eq.f().unwrap());
            let ef: Vec<Vertex> = e
                .vertices()
                .iter()
                .chain(f.vertices())
                .copied()
                .sorted()
                .dedup()
                .collect();
            ensure!(
                e.intersection(f).len() == 2,
                "k = {k}: equalizer edges share {:?}",
                e.intersection(f)
            );
            ensure!(
                eq.graph.edges_within(&ef).len() == 2,
                "k = {k}: e(H[e ∪ f]) != 2"
            );

            let mut cur = build_far_seed(&eq).map_err(|e| e.to_string())?;
            let mut d = cur
                .graph
                .path_distance(cur.e().unwrap(), cur.f().unwrap())
                .unwrap();
            for target in 6..=7 {
                cur = amplify_distance(&cur, target).map_err(|e| e.to_string())?;
                let next = cur
                    .graph
                    .path_distance(cur.e().unwrap(), cur.f().unwrap())
                    .unwrap();
                ensure!(next > d, "k = {k}: distance {d} -> {next}");
                d = next;
            }
            runs += 1;
        }
    }
    Ok(format!("{runs} mock senders over k = 2, 3, 4"))
}

fn c8_hstar_toy() -> Result<String, String> {
    let c5 = Hypergraph::from_edges(2, 5, [[0, 1], [1, 2], [2, 3], [3, 4], [0, 4]]).unwrap();
    let p = PatternSet::new(2, 2, [vec![1, 1]]).unwrap();
    let hb = build_hstar(&c5, &p, 2).map_err(|e| e.to_string())?;
    let h = &hb.graph;
    let n = h.vertex_count();
    let deg: Vec<usize> = (0..n as Vertex)
        .map(|v| h.edges().filter(|e| e.contains(v)).count())
        .collect();
    let ends: Vec<Vertex> = (0..n as Vertex).filter(|&v| deg[v as usize] == 1).collect();
    ensure!(
        h.edge_count() == n - 1 && deg.iter().all(|&d| d == 1 || d == 2),
        "not a path: {h:?}"
    );
    ensure!(
        ends == [hb.x.min(hb.y), hb.x.max(hb.y)],
        "endpoints {ends:?}, x = {}, y = {}",
        hb.x,
        hb.y
    );
    ensure!(h.pair_degree(hb.x, hb.y) == 0, "deg(x, y) > 0");
    ensure!(h.is_linear(), "girth below 3");
    let edges: Vec<Vec<Vertex>> = h.edges().map(|e| e.vertices().to_vec()).collect();
    let mut admissible = 0;
    for mask in 0u32..1 << n {
        let col = |v: Vertex| mask >> v & 1;
        if edges.iter().all(|e| col(e[0]) != col(e[1])) {
            admissible += 1;
            ensure!(
                col(hb.x) != col(hb.y),
                "admissible coloring {mask:b} joins x and y"
            );
        }
    }
    ensure!(admissible > 0, "no admissible coloring");
    ensure!(
        hb.separates == Some(true),
        "library enumeration flag {:?}",
        hb.separates
    );
    Ok(format!(
        "path on {n} vertices, {admissible} admissible colorings all separate"
    ))
}

fn c9_bel_structure() -> Result<String, String> {
    let host = build_partition_host(4).map_err(|e| e.to_string())?;
    let sender = mock_sender(0, 0, &mut rng(9));
    let rainbow = build_rainbow(2, &sender).map_err(|e| e.to_string())?;
    let seed = build_far_seed(&build_equalizer(&rainbow).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let far = amplify_distance(&seed, 7).map_err(|e| e.to_string())?;
    let out =
        build_bel(&host.graph, &host.coloring, 2, 4, &far, &rainbow).map_err(|e| e.to_string())?;
    let g = &out.graph;
    let n = host.graph.vertex_count() as Vertex;
    let base: BTreeSet<Vec<Vertex>> = g
        .edges()
        .filter(|e| e.vertices().iter().all(|&v| v < n))
        .map(|e| e.vertices().to_vec())
        .collect();
    let want: BTreeSet<Vec<Vertex>> = host.graph.edges().map(|e| e.vertices().to_vec()).collect();
    ensure!(base == want, "host not induced");
    let codeg = |u: Vertex, v: Vertex| g.edges().filter(|e| e.contains(u) && e.contains(v)).count();
    ensure!(
        codeg(host.a, host.b) == 0,
        "deg(a, b) = {}",
        codeg(host.a, host.b)
    );
    for (u, v) in (0..n).tuple_combinations() {
        if host.graph.pair_degree(u, v) == 0 {
            ensure!(codeg(u, v) == 0, "pair ({u}, {v}) gained codegree");
        }
    }
    for w in n..g.vertex_count() as Vertex {
        ensure!(
            (0..n).any(|v| codeg(v, w) == 0),
            "vertex {w} meets every host vertex"
        );
    }
    Ok(format!(
        "{} vertices, {} edges",
        g.vertex_count(),
        g.edge_count()
    ))
}

fn c10_random_lab() -> Result<String, String> {
    let mut removed = 0;
    for seed in 0..1000u64 {
        let fam = sample_family(15, 0.25, 2, seed).map_err(|e| e.to_string())?;
        let p = prune(&fam, 4).map_err(|e| format!("seed {seed}: {e}"))?;
        for (i, h) in p.pruned.iter().enumerate() {
            ensure!(
                brute_cliques(h, 4).is_empty(),
                "seed {seed}: member {i} has a 4-clique"
            );
            ensure!(
                h.edges().all(|e| fam[i].contains_edge(e.vertices())),
                "seed {seed}: member {i} gained an edge"
            );
            removed += fam[i].edge_count() - h.edge_count();
        }
        ensure!(
            p.pruned[0]
                .edges()
                .all(|e| !p.pruned[1].contains_edge(e.vertices())),
            "seed {seed}: shared edge"
        );
    }
    let rep = expectation_report(12, 0.3, 2, 4, 200, 2024, 1).map_err(|e| e.to_string())?;
    let o = rep.overlap.as_ref().ok_or("no overlap estimate")?;
    ensure!(rep.pass, "report failed: {rep:?}");
    Ok(format!(
        "1000 runs, {removed} edges pruned; e(H') {:.2}±{:.2} vs {:.1}, overlap {:.2}±{:.2} vs {:.1}, K4 {:.2}±{:.2} vs {:.3}",
        rep.edges.mean, rep.edges.se, rep.edges.expected, o.mean, o.se, o.expected, rep.cliques.mean, rep.cliques.se,
        rep.cliques.expected
    ))
}

fn c11_oracle_equivalence() -> Result<String, String> {
    let mut r = rng(11);
    let mut free = 0;
    for i in 0..200 {
        let (ru, n, t) = [(3, 5, 4), (3, 6, 4), (2, 5, 3), (2, 6, 3), (3, 5, 3)][i % 5];
        let k = 2 + (i / 5 % 2) as u8;
        let max = (0..n).combinations(ru).count().min(9);
        let h = random_hypergraph(ru, n, rand::Rng::random_range(&mut r, 0..=max), &mut r);
        let oracle = brute_free_coloring(&h, t, k);
        let v = find_free_coloring(&h, t, k, &SearchOptions::default()).unwrap();
        ensure!(
            v.arrows() == Some(oracle.is_none()),
            "instance {i}: engine {:?}, oracle {}",
            v.arrows(),
            oracle.is_some()
        );
        if let Some(w) = v.witness() {
            ensure!(
                brute_is_free(&h, &colors_in_order(&h, w), t),
                "instance {i}: bad witness"
            );
            free += 1;
        }
        let cnf = export_cnf(&h, t, k).unwrap();
        let model = dpll(cnf.num_vars(), &cnf.clauses);
        ensure!(
            model.is_some() == oracle.is_some(),
            "instance {i}: CNF satisfiability disagrees"
        );
        if let Some(m) = model {
            ensure!(cnf.evaluate(&m), "instance {i}: model does not satisfy");
            let c = cnf.decode(&m).map_err(|e| e.to_string())?;
            ensure!(
                brute_is_free(&h, &colors_in_order(&h, &c), t),
                "instance {i}: decoded coloring not free"
            );
        }
    }
    Ok(format!(
        "200 instances agree ({free} free, {} arrowing)",
        200 - free
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, Check, u64); 11] = [
        ("codegree identity", c1_codegree_identity, 1),
        ("forcing step", c2_forcing, 10),
        ("lower-bound algorithm", c3_lower_bound, 120),
        ("expectation bound", c4_expectation, 1),
        ("engine calibration", c5_engine_calibration, 30),
        ("Ramsey counting bound", c6_fact_bound, 60),
        ("gadget algebra", c7_gadget_algebra, 60),
        ("H* toy run", c8_hstar_toy, 1),
        ("BEL structure", c9_bel_structure, 10),
        ("random lab", c10_random_lab, 300),
        ("oracle equivalence", c11_oracle_equivalence, 60),
    ];
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or(p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        let el = start.elapsed();
        let res = res.and_then(|m| {
            if el <= Duration::from_secs(limit) {
                Ok(m)
            } else {
                Err(format!("{m}; over the {limit}s limit"))
            }
        });
        let (tag, msg) = match res {
            Ok(m) => ("PASS", m),
            Err(m) => {
                failed += 1;
                ("FAIL", m)
            }
        };
        println!(
            "{tag} {:>2} {name} [{:.2}s / {limit}s]: {msg}",
            i + 1,
            el.as_secs_f64()
        );
    }
    println!("acceptance: {} passed, {failed} failed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
