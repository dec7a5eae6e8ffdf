//! `gph`: homotopy invariants of finite directed multigraphs.
//!
//! Exit status: 0 success, 1 negative verdict, 2 input or internal error,
//! 3 search budget exhausted.

mod commands;
mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "gph", version, about = "Homotopy invariants of finite directed multigraphs")]
struct Cli {
    /// Search budget: candidate assignments tried before giving up.
    #[arg(long, global = true, env = "GPH_SEARCH_BUDGET", default_value_t = gph_core::search::DEFAULT_SEARCH_BUDGET,
          value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,

    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Builtin,
    All,
}

/// A graph argument is a JSON file path or a built-in name such as `cross`,
/// `uc4`, `figure-eight`, `cycle:5`, `path:3`, `bouquet:3`.
#[derive(Subcommand)]
enum Command {
    /// Characteristic polynomial det(xI - A) and its reversal det(I - uA).
    Charpoly { graph: String },
    /// Zeta series 1/det(I - uA), truncated.
    Zeta {
        graph: String,
        /// Truncation order (default: twice the node count, at least 1).
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        upto: Option<u64>,
    },
    /// Closed-walk counts c_n = tr(A^n).
    Census {
        graph: String,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        upto: Option<u64>,
    },
    /// Ghost components c_n and Witt coordinates s_n.
    Witt {
        /// Graph to analyse; omit when probing a sequence with --ghost.
        graph: Option<String>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        upto: Option<u64>,
        /// Comma-separated ghost sequence c_1,c_2,... to invert instead of a graph.
        #[arg(long, conflicts_with = "graph")]
        ghost: Option<String>,
    },
    /// Classify a morphism: Surjecting, Whiskering, Acyclic up to a bound.
    Classify {
        morphism: PathBuf,
        /// Acyclicity bound (default: the larger node count).
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        upto: Option<u64>,
    },
    /// Solve a lifting problem given as four morphism files.
    Lift {
        left: PathBuf,
        right: PathBuf,
        top: PathBuf,
        bottom: PathBuf,
    },
    /// Truncated cycle resolution with counit representatives.
    CofibrantReplace {
        graph: String,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        upto: Option<u64>,
    },
    /// Decide homotopy equivalence of two graphs.
    HomotopyEq { a: String, b: String },
    /// Bucket small graphs by homotopy signature.
    Explore {
        #[arg(long)]
        nodes: usize,
        #[arg(long)]
        arcs: usize,
        #[arg(long, value_enum, default_value = "builtin")]
        family: FamilyArg,
        /// Write the full JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Inspect an N-set or an N-set map given as JSON.
    Nset { file: PathBuf },
    /// Inspect a Z-set or a Z-set map given as JSON.
    Zset { file: PathBuf },
}

pub struct Output {
    pub stdout: String,
    pub code: u8,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output { stdout, code: 0 }
    }
}

fn run(cli: Cli) -> anyhow::Result<Output> {
    let ctx = commands::Context { budget: cli.budget, json: cli.json };
    let to_usize = |v: Option<u64>| v.map(|n| n as usize);
    match cli.command {
        Command::Charpoly { graph } => commands::charpoly(&ctx, &graph),
        Command::Zeta { graph, upto } => commands::zeta(&ctx, &graph, to_usize(upto)),
        Command::Census { graph, upto } => commands::census(&ctx, &graph, to_usize(upto)),
        Command::Witt { graph, upto, ghost } => commands::witt(&ctx, graph.as_deref(), ghost.as_deref(), to_usize(upto)),
        Command::Classify { morphism, upto } => commands::classify(&ctx, &morphism, to_usize(upto)),
        Command::Lift { left, right, top, bottom } => commands::lift(&ctx, [&left, &right, &top, &bottom]),
        Command::CofibrantReplace { graph, upto } => commands::cofibrant_replace(&ctx, &graph, to_usize(upto)),
        Command::HomotopyEq { a, b } => commands::homotopy_eq(&ctx, &a, &b),
        Command::Explore { nodes, arcs, family, out } => {
            let family = match family {
                FamilyArg::Builtin => gph_core::homotopy::Family::Builtin,
                FamilyArg::All => gph_core::homotopy::Family::All,
            };
            commands::explore(&ctx, nodes, arcs, family, out.as_deref())
        }
        Command::Nset { file } => commands::nset(&ctx, &file, false),
        Command::Zset { file } => commands::nset(&ctx, &file, true),
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<gph_core::Error>() {
        Some(gph_core::Error::BudgetExceeded { .. }) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe is not worth a panic
            let _ = stdout.write_all(out.stdout.as_bytes());
            ExitCode::from(out.code)
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
