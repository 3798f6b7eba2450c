//! `locallab`: seeded experiments over edge colorings and real sets.
//!
//! Exit codes: 0 success, 1 property refuted or configuration found,
//! 2 usage or input error, 3 enumeration budget exceeded.

mod commands;
mod io;
mod sweep;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use locallab_core::{Budget, Error};

#[derive(Parser, Debug)]
#[command(name = "locallab", version, about = "Local properties of edge colorings: energies, energy graphs, witnesses and exact oracles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the (k, l) local property of a coloring.
    Check(CheckArgs),
    /// Color energy, its Hölder lower bound and the implied color bound.
    Energy(EnergyArgs),
    /// Build and prune an energy graph, optionally exporting it as JSON.
    EnergyGraph(EnergyGraphArgs),
    /// Search for a forbidden configuration.
    Find {
        #[command(subcommand)]
        target: FindTarget,
    },
    /// Extract a violating set from an energy-graph cycle and certify it.
    Witness(WitnessArgs),
    /// Exact f(n, k, l) by exhaustive search.
    OracleF(OracleFArgs),
    /// Exact g(n, k, l) over subsets of {0, ..., max}.
    OracleG(OracleGArgs),
    /// A 3-AP-free set of n positive integers.
    Behrend(BehrendArgs),
    /// Difference set statistics of a real set.
    Diffset(DiffsetArgs),
    /// Violation frequency of random colorings over a range of palette sizes.
    Sweep(sweep::SweepArgs),
    /// Re-check an exported certificate.
    Verify(VerifyArgs),
    /// Write a generated coloring file.
    Gen(GenArgs),
    /// Write the coloring induced by a real set.
    FromSet(FromSetArgs),
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    l: usize,
    /// Sample this many random k-subsets instead of enumerating all.
    #[arg(long)]
    sampled: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write a violation certificate here when the property fails.
    #[arg(long)]
    cert: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct EnergyArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 2)]
    r: u32,
    /// Also count 2r-tuples directly.
    #[arg(long)]
    brute: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// Second energy graph with diagonal pruning only.
    Raw,
    /// Second energy graph, diagonal and rare-color pruning.
    Thm2,
    /// Third energy graph on a balanced 3-partition, rare-color, halving and
    /// coordinate-neighbor pruning.
    Thm3,
    /// r-th energy graph of a real set, rare-color pruning, sign classes.
    Thm4,
}

#[derive(Args, Debug, Clone)]
pub struct GraphArgs {
    /// Coloring file (presets raw, thm2, thm3).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Real set file (preset thm4).
    #[arg(long)]
    set: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Preset::Thm2)]
    preset: Preset,
    /// Local property size k; sets the thm2 rare threshold and the cycle length.
    #[arg(long, default_value_t = 8)]
    k: usize,
    /// Energy order for thm4.
    #[arg(long, default_value_t = 2)]
    r: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Rare-color threshold for thm4.
    #[arg(long, default_value_t = 1)]
    rare: usize,
}

#[derive(Args, Debug)]
struct EnergyGraphArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Write the pruned graph (all sign classes for thm4) as JSON.
    #[arg(long)]
    export: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum FindTarget {
    /// Cycles of a given length in a preset energy graph.
    Cycle {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        length: usize,
        /// Report at most this many cycles per graph.
        #[arg(long, default_value_t = 1)]
        limit: usize,
    },
    /// Monochromatic K_{s,t}.
    Kst {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
        /// Restrict to one color label.
        #[arg(long)]
        color: Option<String>,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Monochromatic subdivision of K_t with one midpoint per edge.
    Subdivision {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        color: Option<String>,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct WitnessArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Cycles tried before giving up.
    #[arg(long, default_value_t = 1000)]
    limit: usize,
    #[arg(long)]
    cert: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct OracleFArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    l: usize,
    #[arg(long)]
    cert: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct OracleGArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    l: usize,
    #[arg(long)]
    max: u64,
    #[arg(long)]
    cert: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BehrendArgs {
    #[arg(long)]
    n: usize,
    /// Write the set file here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DiffsetArgs {
    #[arg(long)]
    set: PathBuf,
    /// Also report the smallest |B - B| over k-subsets B.
    #[arg(long)]
    k: Option<usize>,
    /// Write A - A as a set file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    cert: PathBuf,
    /// Coloring the certificate refers to.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Real set whose difference coloring the certificate refers to.
    #[arg(long)]
    set: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Random,
    Mono,
    Rainbow,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    c: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct FromSetArgs {
    #[arg(long)]
    set: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

/// What a successful command found.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Clean,
    Found,
}

fn run(cli: Cli, budget: &Budget) -> anyhow::Result<Outcome> {
    match cli.command {
        Command::Check(a) => commands::check(&a.input, a.k, a.l, a.sampled, a.seed, a.cert.as_deref(), budget),
        Command::Energy(a) => commands::energy(&a.input, a.r, a.brute, budget),
        Command::EnergyGraph(a) => commands::energy_graph(&a.graph, a.export.as_deref(), budget),
        Command::Find { target } => match target {
            FindTarget::Cycle { graph, length, limit } => commands::find_cycles(&graph, length, limit, budget),
            FindTarget::Kst {
                input,
                s,
                t,
                color,
                cert,
            } => commands::find_kst(&input, s, t, color.as_deref(), cert.as_deref()),
            FindTarget::Subdivision { input, t, color, cert } => {
                commands::find_subdivision(&input, t, color.as_deref(), cert.as_deref())
            }
        },
        Command::Witness(a) => commands::witness(&a.graph, a.limit, a.cert.as_deref(), budget),
        Command::OracleF(a) => commands::oracle_f(a.n, a.k, a.l, a.cert.as_deref(), budget),
        Command::OracleG(a) => commands::oracle_g(a.n, a.k, a.l, a.max, a.cert.as_deref(), budget),
        Command::Behrend(a) => commands::behrend(a.n, a.out.as_deref()),
        Command::Diffset(a) => commands::diffset(&a.set, a.k, a.out.as_deref(), budget),
        Command::Sweep(a) => sweep::run(&a, budget),
        Command::Verify(a) => commands::verify(&a.cert, a.input.as_deref(), a.set.as_deref(), budget),
        Command::Gen(a) => {
            let g = match a.family {
                Family::Random => locallab_core::coloring::random_coloring(a.n, a.c, a.seed)?,
                Family::Mono => locallab_core::EdgeColoring::monochromatic(a.n)?,
                Family::Rainbow => locallab_core::EdgeColoring::rainbow(a.n)?,
            };
            io::write_text(&a.out, &g.to_json())?;
            Ok(Outcome::Clean)
        }
        Command::FromSet(a) => {
            let set = io::load_set(&a.set)?;
            io::write_text(&a.out, &locallab_core::arithmetic::coloring_from_set(&set)?.to_json())?;
            Ok(Outcome::Clean)
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(e) if e.is_budget() => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = match Budget::from_env() {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match run(cli, &budget) {
        Ok(Outcome::Clean) => ExitCode::SUCCESS,
        Ok(Outcome::Found) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
