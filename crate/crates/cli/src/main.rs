mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(
    name = "minram",
    version,
    about = "Minimal Ramsey 3-uniform hypergraphs: gadgets, arrowing, codegree checks, random lab"
)]
pub struct Cli {
    /// Seed for randomized commands (required by every `lab` sampler).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Node budget for the coloring search; exhausting it exits with code 2.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Worker threads for searches and Monte Carlo trials.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Single-threaded, bit-for-bit reproducible run (overrides --jobs).
    #[arg(long, global = true)]
    pub deterministic: bool,
    /// Write the result here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Suppress the one-line summary on standard error.
    #[arg(long, short, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Hypergraph JSON file, `-` for standard input.
    #[arg(long, short)]
    pub input: PathBuf,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Target {
    /// Clique size.
    #[arg(long, short)]
    pub t: usize,
    /// Number of colors.
    #[arg(long, short, default_value_t = 2)]
    pub k: u8,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide H -> (K_t)_k.
    Arrow {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        target: Target,
    },
    /// Delete edges greedily down to a minimal Ramsey subhypergraph.
    Minimalize {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        target: Target,
    },
    /// Find a coloring without monochromatic K_t, optionally extending a partial one.
    FreeColoring {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        target: Target,
        /// Coloring JSON whose colors must be kept.
        #[arg(long)]
        partial: Option<PathBuf>,
    },
    /// DIMACS CNF whose models are the free colorings.
    Cnf {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        target: Target,
    },
    /// Build senders, rainbow stars, equalizers and far gadgets
    #[command(subcommand)]
    Gadget(GadgetCmd),
    /// Partition host checks for the codegree bound
    #[command(subcommand)]
    Codegree(CodegreeCmd),
    /// Random hypergraph sampling and Monte Carlo reports
    #[command(subcommand)]
    Lab(LabCmd),
    /// Fewest vertices on a 3-path from e to f (defaults to the e and f tags).
    Distance {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_delimiter = ',')]
        e: Option<Vec<u32>>,
        #[arg(long, value_delimiter = ',')]
        f: Option<Vec<u32>>,
    },
    /// List the t-cliques.
    Cliques {
        #[command(flatten)]
        input: Input,
        #[arg(long, short)]
        t: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum GadgetCmd {
    /// F' on [m]: the complete uniform hypergraph minus the edges through the special core.
    Fprime {
        #[arg(long)]
        m: usize,
    },
    /// F_ell: F' plus ell special edges through the core.
    Fell {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        ell: usize,
    },
    /// H* from a linear hypergraph without admissible colorings.
    Hstar {
        #[command(flatten)]
        input: Input,
        /// Admissible color-count patterns, e.g. `1,1` or `2,0;1,1`.
        #[arg(long)]
        patterns: String,
        #[arg(long, short, default_value_t = 2)]
        k: u8,
    },
    /// Signal sender: a copy of F_ell on every edge of H*.
    Sender {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        patterns: String,
        #[arg(long, short, default_value_t = 2)]
        k: u8,
        #[arg(long, short)]
        t: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        ell: usize,
    },
    /// Rainbow star from a sender gadget.
    Rainbow {
        #[command(flatten)]
        input: Input,
        #[arg(long, short, default_value_t = 2)]
        k: u8,
    },
    /// Two rainbow copies glued along all but one star edge.
    Equalizer {
        #[command(flatten)]
        input: Input,
    },
    /// Raise dist(e, f) to at least s; an untagged equalizer is first turned into the distance-5 seed.
    Amplify {
        #[command(flatten)]
        input: Input,
        #[arg(long, short)]
        s: u32,
    },
    /// Wrap a free coloring of the input with far gadgets onto a rainbow star.
    Bel {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long)]
        far: PathBuf,
        #[arg(long)]
        rainbow: PathBuf,
        #[command(flatten)]
        target: Target,
    },
    /// Add a vertex whose link is every pair of the base.
    Apex {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_delimiter = ',')]
        base: Vec<u32>,
    },
}

#[derive(Subcommand, Debug)]
pub enum CodegreeCmd {
    /// The partition host with its prescribed red/blue coloring.
    Host {
        #[arg(long, short)]
        t: usize,
        /// Emit the host with the (t-2)^2 apex-pair edges added.
        #[arg(long)]
        augmented: bool,
    },
    /// Every completion of the apex-pair edges has a monochromatic K_t.
    ForceCheck {
        #[arg(long, short)]
        t: usize,
        /// Leave out these apex-pair edges (indices into a, b, u for u = 0, 1, ...).
        #[arg(long, value_delimiter = ',')]
        drop: Vec<usize>,
    },
    /// Extend a free coloring across the edges through {u, v}.
    Extend {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        u: u32,
        #[arg(long)]
        v: u32,
        #[arg(long, short)]
        t: usize,
        /// Free 2-coloring of the edges avoiding {u, v}; searched for when omitted.
        #[arg(long)]
        coloring: Option<PathBuf>,
    },
    /// Exact expected number of monochromatic cliques on the augmented host.
    Expectation {
        #[arg(long, short)]
        t: usize,
    },
}

#[derive(Args, Debug, Clone, Copy)]
pub struct LabShape {
    #[arg(long, short)]
    pub n: usize,
    #[arg(long, short)]
    pub p: f64,
    /// Family size.
    #[arg(long, short, default_value_t = 2)]
    pub k: usize,
}

#[derive(Subcommand, Debug)]
pub enum LabCmd {
    /// Sample k independent H^(3)(n, p).
    Sample {
        #[command(flatten)]
        shape: LabShape,
    },
    /// Sample, then remove clique and shared edges.
    Prune {
        #[command(flatten)]
        shape: LabShape,
        #[arg(long, short)]
        t: usize,
    },
    /// Monte Carlo means against the closed-form expectations.
    Report {
        #[command(flatten)]
        shape: LabShape,
        #[arg(long, short)]
        t: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
    /// Monochromatic K_ell counts of pair colorings against n^ell / (k r_k(ell)^ell).
    FactBound {
        #[arg(long, short)]
        n: usize,
        #[arg(long, short, default_value_t = 2)]
        k: u8,
        #[arg(long, default_value_t = 3)]
        ell: usize,
        /// Random colorings to test; ignored with --exhaustive.
        #[arg(long, default_value_t = 1)]
        samples: u64,
        /// Every coloring of the pairs.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Base-k logarithms of the asymptotic parameter choices.
    #[command(name = "paper-params")]
    AsymptoticParams {
        #[arg(long, short, default_value_t = 2)]
        k: u32,
        #[arg(long, short)]
        t: u32,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
