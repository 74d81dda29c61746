use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use itertools::Itertools;
use minram::codegree::{
    build_partition_host, extend_coloring_lower_bound, forced_pattern_check,
    random_coloring_expectation,
};
use minram::colorengine::{
    export_cnf, extend_free_coloring, find_free_coloring, minimalize, EdgeColoring, Outcome,
    PatternSet, SearchOptions,
};
use minram::gadgets::{
    amplify_distance, attach_apex, build_bel, build_equalizer, build_f_ell, build_f_prime,
    build_far_seed, build_hstar, build_rainbow, build_signal_sender, SenderParams, TaggedGadget,
};
use minram::hypercore::{Distance, HypergraphDoc, Tags};
use minram::randomlab::{
    asymptotic_params, count_bad_supported, expectation_report, fact_count_bound, prune,
    sample_family, PairColoring, RamseyTable, GENERATOR,
};
use minram::{Edge, Hypergraph};
use serde::Serialize;
use serde_json::json;

use crate::{Cli, CodegreeCmd, Command, GadgetCmd, LabCmd, LabShape, Target};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Domain(#[from] minram::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Domain(minram::Error::Unknown { .. }) => 2,
            CliError::Domain(_) | CliError::Usage(_) => 1,
            CliError::Io { .. } => 3,
        }
    }
}

type Res<T> = Result<T, CliError>;

struct Ctx<'a> {
    cli: &'a Cli,
    opts: SearchOptions,
}

impl Ctx<'_> {
    fn seed(&self) -> Res<u64> {
        self.cli
            .seed
            .ok_or_else(|| CliError::Usage("this command is randomized and needs --seed".into()))
    }

    fn jobs(&self) -> usize {
        self.opts.jobs
    }

    fn write(&self, text: &str, summary: impl AsRef<str>) -> Res<()> {
        match &self.cli.output {
            Some(p) => fs::write(p, format!("{text}\n")).map_err(|source| io_err(p, source))?,
            None => {
                let mut out = io::stdout().lock();
                writeln!(out, "{text}").map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })?;
            }
        }
        if !self.cli.quiet {
            eprintln!("{}", summary.as_ref());
        }
        Ok(())
    }

    fn emit(&self, value: &impl Serialize, summary: impl AsRef<str>) -> Res<()> {
        self.write(
            &serde_json::to_string(value).expect("output serializes"),
            summary,
        )
    }
}

fn io_err(p: &Path, source: io::Error) -> CliError {
    CliError::Io {
        path: p.display().to_string(),
        source,
    }
}

fn read_text(p: &PathBuf) -> Res<String> {
    if p.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|source| io_err(p, source))?;
        Ok(s)
    } else {
        fs::read_to_string(p).map_err(|source| io_err(p, source))
    }
}

fn read_graph(p: &PathBuf) -> Res<(Hypergraph, Tags)> {
    Ok(Hypergraph::from_json(&read_text(p)?)?)
}

fn read_gadget(p: &PathBuf) -> Res<TaggedGadget> {
    Ok(TaggedGadget::from_json(&read_text(p)?)?)
}

fn read_coloring(p: &PathBuf) -> Res<EdgeColoring> {
    serde_json::from_str(&read_text(p)?)
        .map_err(|e| CliError::Usage(format!("{}: coloring JSON: {e}", p.display())))
}

fn parse_patterns(s: &str, k: u8) -> Res<PatternSet> {
    let pats: Vec<Vec<usize>> = s
        .split(';')
        .map(|p| {
            p.split(',')
                .map(|x| x.trim().parse::<usize>())
                .collect::<Result<_, _>>()
        })
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Usage(format!("patterns {s:?}: {e}")))?;
    let ell = pats.first().map_or(0, |p| p.iter().sum());
    Ok(PatternSet::new(ell, k, pats)?)
}

fn verdict_summary(nodes: u64, outcome: &Outcome) -> String {
    match outcome {
        Outcome::Arrows => format!("arrows ({nodes} nodes)"),
        Outcome::Free(_) => format!("free coloring found ({nodes} nodes)"),
        Outcome::Unknown => format!("unknown: budget exhausted after {nodes} nodes"),
    }
}

pub fn run(cli: &Cli) -> Res<()> {
    let jobs = if cli.deterministic {
        1
    } else {
        cli.jobs.max(1)
    };
    let ctx = Ctx {
        cli,
        opts: SearchOptions {
            budget: cli.budget,
            jobs,
        },
    };
    match &cli.command {
        Command::Arrow {
            input,
            target: Target { t, k },
        } => {
            let (h, _) = read_graph(&input.input)?;
            let v = find_free_coloring(&h, *t, *k, &ctx.opts)?;
            ctx.emit(&v, verdict_summary(v.nodes, &v.outcome))?;
            if v.is_complete() {
                Ok(())
            } else {
                Err(minram::Error::Unknown { nodes: v.nodes }.into())
            }
        }
        Command::Minimalize {
            input,
            target: Target { t, k },
        } => {
            let (h, _) = read_graph(&input.input)?;
            let m = minimalize(&h, *t, *k, &ctx.opts)?;
            ctx.write(
                &m.to_json(),
                format!(
                    "minimal: {} of {} edges kept",
                    m.edge_count(),
                    h.edge_count()
                ),
            )
        }
        Command::FreeColoring {
            input,
            target: Target { t, k },
            partial,
        } => {
            let (h, _) = read_graph(&input.input)?;
            let v = match partial {
                Some(p) => extend_free_coloring(&h, *t, *k, &read_coloring(p)?, &ctx.opts)?,
                None => find_free_coloring(&h, *t, *k, &ctx.opts)?,
            };
            ctx.emit(&v, verdict_summary(v.nodes, &v.outcome))?;
            if v.is_complete() {
                Ok(())
            } else {
                Err(minram::Error::Unknown { nodes: v.nodes }.into())
            }
        }
        Command::Cnf {
            input,
            target: Target { t, k },
        } => {
            let (h, _) = read_graph(&input.input)?;
            let cnf = export_cnf(&h, *t, *k)?;
            ctx.write(
                cnf.to_dimacs().trim_end(),
                format!(
                    "{} variables, {} clauses",
                    cnf.num_vars(),
                    cnf.clauses.len()
                ),
            )
        }
        Command::Gadget(g) => gadget(&ctx, g),
        Command::Codegree(c) => codegree(&ctx, c),
        Command::Lab(l) => lab(&ctx, l),
        Command::Distance { input, e, f } => {
            let (h, tags) = read_graph(&input.input)?;
            let pick = |given: &Option<Vec<u32>>, tag: Option<Edge>, name| -> Res<Edge> {
                match given {
                    Some(v) => Ok(Edge::new(v.clone())?),
                    None => tag.ok_or_else(|| {
                        CliError::Usage(format!("no --{name} given and no {name} tag"))
                    }),
                }
            };
            let (e, f) = (pick(e, tags.e, "e")?, pick(f, tags.f, "f")?);
            let d = h.path_distance(&e, &f)?;
            let shown = match d {
                Distance::Finite(d) => json!(d),
                Distance::Infinite => json!(null),
            };
            ctx.emit(
                &json!({ "e": e, "f": f, "distance": shown }),
                format!("dist({e}, {f}) = {d}"),
            )
        }
        Command::Cliques { input, t } => {
            let (h, _) = read_graph(&input.input)?;
            let cl = h.cliques(*t)?;
            ctx.emit(
                &json!({ "t": t, "count": cl.len(), "cliques": cl }),
                format!("{} cliques of size {t}", cl.len()),
            )
        }
    }
}

fn gadget_summary(g: &TaggedGadget) -> String {
    let d = g
        .tags
        .distance
        .map(|d| format!(", distance >= {d}"))
        .unwrap_or_default();
    format!(
        "{} vertices, {} edges{d}",
        g.graph.vertex_count(),
        g.graph.edge_count()
    )
}

fn gadget(ctx: &Ctx, cmd: &GadgetCmd) -> Res<()> {
    let out = match cmd {
        GadgetCmd::Fprime { m } => {
            let h = build_f_prime(*m)?;
            return ctx.write(
                &h.to_json(),
                format!("F' on {m} vertices, {} edges", h.edge_count()),
            );
        }
        GadgetCmd::Fell { m, ell } => {
            let h = build_f_ell(*m, *ell)?;
            return ctx.write(
                &h.to_json(),
                format!("F_{ell} on {m} vertices, {} edges", h.edge_count()),
            );
        }
        GadgetCmd::Hstar { input, patterns, k } => {
            let (h, _) = read_graph(&input.input)?;
            let hs = build_hstar(&h, &parse_patterns(patterns, *k)?, *k)?;
            let tags = Tags {
                x: Some(hs.x),
                y: Some(hs.y),
                ..Tags::default()
            };
            let sep = match hs.separates {
                Some(true) => "every admissible coloring separates x and y",
                _ => "separation not enumerated",
            };
            return ctx.write(
                &hs.graph.to_json_tagged(&tags),
                format!("H* at step {}; {sep}", hs.index),
            );
        }
        GadgetCmd::Sender {
            input,
            patterns,
            k,
            t,
            m,
            ell,
        } => {
            let (h, _) = read_graph(&input.input)?;
            let params = SenderParams {
                m: *m,
                ell: *ell,
                t: *t,
                k: *k,
                patterns: parse_patterns(patterns, *k)?,
                hstar_input: h,
            };
            build_signal_sender(&params)?.0.gadget
        }
        GadgetCmd::Rainbow { input, k } => build_rainbow(*k, &read_gadget(&input.input)?)?,
        GadgetCmd::Equalizer { input } => build_equalizer(&read_gadget(&input.input)?)?,
        GadgetCmd::Amplify { input, s } => {
            let g = read_gadget(&input.input)?;
            let base = match (g.tags.distance, g.e(), g.f()) {
                (None, Ok(e), Ok(f)) if e.intersection(f).len() == 2 => build_far_seed(&g)?,
                _ => g,
            };
            amplify_distance(&base, *s)?
        }
        GadgetCmd::Bel {
            input,
            coloring,
            far,
            rainbow,
            target: Target { t, k },
        } => {
            let (h, _) = read_graph(&input.input)?;
            build_bel(
                &h,
                &read_coloring(coloring)?,
                *k,
                *t,
                &read_gadget(far)?,
                &read_gadget(rainbow)?,
            )?
        }
        GadgetCmd::Apex { input, base } => attach_apex(&read_gadget(&input.input)?, base)?,
    };
    ctx.write(&out.to_json(), gadget_summary(&out))
}

fn codegree(ctx: &Ctx, cmd: &CodegreeCmd) -> Res<()> {
    match cmd {
        CodegreeCmd::Host { t, augmented } => {
            let host = build_partition_host(*t)?;
            let g = if *augmented {
                host.augmented()
            } else {
                host.graph.clone()
            };
            let tags = Tags {
                a: Some(host.a),
                b: Some(host.b),
                ..Tags::default()
            };
            let summary = format!("{} vertices, {} edges", g.vertex_count(), g.edge_count());
            ctx.emit(
                &json!({
                    "t": t,
                    "host": HypergraphDoc::from_graph(&g, &tags),
                    "parts": host.parts,
                    "coloring": host.coloring,
                }),
                summary,
            )
        }
        CodegreeCmd::ForceCheck { t, drop } => {
            let host = build_partition_host(*t)?;
            let apex = host.apex_edges();
            let mut aug = host.augmented();
            for &i in drop {
                let e = apex.get(i).ok_or_else(|| {
                    CliError::Usage(format!("--drop {i}: only {} apex edges", apex.len()))
                })?;
                aug.remove_edge(e.vertices());
            }
            let r = forced_pattern_check(&host, &aug, *t)?;
            let summary = if r.forced {
                format!(
                    "forced: all {} completions have a monochromatic K_{t}",
                    r.assignments
                )
            } else {
                "not forced: a free completion exists".to_string()
            };
            ctx.emit(&r, summary)
        }
        CodegreeCmd::Extend {
            input,
            u,
            v,
            t,
            coloring,
        } => {
            let (h, _) = read_graph(&input.input)?;
            let through: Vec<Edge> = h
                .edges()
                .filter(|e| e.contains_all(&[*u, *v]))
                .cloned()
                .collect();
            let partial = match coloring {
                Some(p) => read_coloring(p)?,
                None => {
                    let rest = h.minus_edges(&through);
                    let verdict = find_free_coloring(&rest, *t, 2, &ctx.opts)?;
                    match verdict.outcome {
                        Outcome::Free(c) => c,
                        Outcome::Arrows => {
                            return Err(CliError::Usage(
                                "the edges avoiding {u, v} already arrow; nothing to extend".into(),
                            ))
                        }
                        Outcome::Unknown => {
                            return Err(minram::Error::Unknown {
                                nodes: verdict.nodes,
                            }
                            .into())
                        }
                    }
                }
            };
            let cert = extend_coloring_lower_bound(&h, *u, *v, &partial, *t)?;
            let summary = format!(
                "extended across {} edges with {} blocks",
                through.len(),
                cert.blocks.len()
            );
            ctx.emit(&cert, summary)
        }
        CodegreeCmd::Expectation { t } => {
            let (v, lt) = random_coloring_expectation(*t)?;
            ctx.emit(
                &json!({ "value": v.to_string(), "lt_one": lt }),
                format!("E = {v}"),
            )
        }
    }
}

fn lab(ctx: &Ctx, cmd: &LabCmd) -> Res<()> {
    match cmd {
        LabCmd::Sample {
            shape: LabShape { n, p, k },
        } => {
            let seed = ctx.seed()?;
            let fam = sample_family(*n, *p, *k, seed)?;
            let summary = format!(
                "edge counts {:?}",
                fam.iter().map(Hypergraph::edge_count).collect_vec()
            );
            ctx.emit(&json!({ "generator": GENERATOR, "n": n, "p": p, "k": k, "seed": seed, "members": fam }), summary)
        }
        LabCmd::Prune {
            shape: LabShape { n, p, k },
            t,
        } => {
            let seed = ctx.seed()?;
            let fam = sample_family(*n, *p, *k, seed)?;
            let pr = prune(&fam, *t)?;
            let bad_supported: Vec<usize> = fam
                .iter()
                .zip(&pr.bad)
                .map(|(h, b)| count_bad_supported(h, b, *t))
                .collect::<Result<_, _>>()?;
            let summary = format!(
                "pruned {:?} of {:?} edges",
                pr.bad.iter().map(|b| b.len()).collect_vec(),
                fam.iter().map(Hypergraph::edge_count).collect_vec()
            );
            ctx.emit(
                &json!({
                    "generator": GENERATOR, "n": n, "p": p, "k": k, "t": t, "seed": seed,
                    "sampled": pr.sampled, "bad": pr.bad, "pruned": pr.pruned, "bad_supported": bad_supported,
                }),
                summary,
            )
        }
        LabCmd::Report {
            shape: LabShape { n, p, k },
            t,
            trials,
        } => {
            let rep = expectation_report(*n, *p, *k, *t, *trials, ctx.seed()?, ctx.jobs())?;
            let summary = format!(
                "{} ({} trials)",
                if rep.pass { "pass" } else { "fail" },
                rep.trials
            );
            ctx.emit(&rep, summary)
        }
        LabCmd::FactBound {
            n,
            k,
            ell,
            samples,
            exhaustive,
        } => {
            let table = RamseyTable::default();
            let pairs = (n * n.saturating_sub(1) / 2) as u32;
            let colorings: Box<dyn Iterator<Item = PairColoring>> = if *exhaustive {
                let total = (*k as u64)
                    .checked_pow(pairs)
                    .filter(|&x| x <= 1 << 24)
                    .ok_or_else(|| minram::Error::TooLarge(format!("{k}^{pairs} colorings")))?;
                Box::new((0..total).map(|i| PairColoring::from_index(*n, *k, i)))
            } else {
                let mut rng =
                    <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(ctx.seed()?);
                Box::new((0..*samples).map(move |_| PairColoring::random(*n, *k, &mut rng)))
            };
            let (mut tested, mut violations, mut min_count, mut bound) =
                (0u64, 0u64, u64::MAX, 0.0);
            for psi in colorings {
                let fb = fact_count_bound(&psi, *ell, &table)?;
                tested += 1;
                violations += !fb.holds as u64;
                min_count = min_count.min(fb.count);
                bound = fb.bound;
            }
            let r = table.get(*k, *ell)?;
            ctx.emit(
                &json!({
                    "n": n, "k": k, "ell": ell, "r": r, "seed": ctx.cli.seed, "exhaustive": exhaustive,
                    "tested": tested, "bound": bound, "min_count": min_count, "violations": violations,
                }),
                format!("{violations} violations in {tested} colorings"),
            )
        }
        LabCmd::AsymptoticParams { k, t } => {
            let lp = asymptotic_params(*k, *t)?;
            ctx.emit(
                &lp,
                format!("log_{k} n = {}, log_{k} p = {}", lp.log_n, lp.log_p),
            )
        }
    }
}
