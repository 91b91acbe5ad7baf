mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::{Outcome, Status};

/// Verify, construct and bound orthogonal and faithful subspace
/// representations of graphs. Prints one JSON document per run.
#[derive(Parser, Debug)]
#[command(name = "fracrank", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Encoding of graph files.
    #[arg(long, global = true, value_enum, default_value_t = Format::EdgeListJson)]
    format: Format,
    /// Write the JSON document here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    EdgeListJson,
    Graph6,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a certificate (osr, fosr, projective, faithful-projective or fit matrix).
    Verify {
        #[arg(long)]
        cert: PathBuf,
        /// The certificate must be over this graph.
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// Run one construction and emit its re-verified output.
    Construct(ConstructArgs),
    /// Certified lower and upper bounds on xi_[r] or mr_[r]+.
    Bounds {
        #[arg(value_enum)]
        parameter: BoundParameter,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        r: usize,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Ratio sequences for xi_f or mr_f+, or both side by side.
    Estimate {
        #[arg(value_enum)]
        parameter: EstimateParameter,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        rmax: usize,
        /// Target accuracy of the faithful demo in the duality report.
        #[arg(long, default_value_t = 0.05)]
        eps: f64,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Exact combinatorial quantities.
    Oracle {
        #[arg(value_enum)]
        quantity: Quantity,
        #[arg(long)]
        graph: PathBuf,
        /// Fold for chi-b.
        #[arg(long)]
        b: Option<usize>,
    },
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 32)]
    restarts: usize,
    #[arg(long, default_value_t = 2000)]
    iters: usize,
    /// Largest n·r for which numerical searches run.
    #[arg(long, default_value_t = 24)]
    max_search_size: usize,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[arg(value_enum)]
    recipe: Recipe,
    /// Input certificate or fit matrix; repeat for recipes with several inputs.
    #[arg(long)]
    cert: Vec<PathBuf>,
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Comma-separated clique labels, in order.
    #[arg(long, value_delimiter = ',')]
    clique: Option<Vec<String>>,
    #[arg(long)]
    r: Option<usize>,
    /// Fold of the coloring for coloring-osr.
    #[arg(long, default_value_t = 1)]
    b: usize,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BoundParameter {
    XiR,
    MrrPlus,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EstimateParameter {
    XiF,
    MrF,
    Duality,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Quantity {
    Alpha,
    Omega,
    Chi,
    ChiF,
    ChiB,
    Chordal,
    CutComponents,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Recipe {
    CombineFold,
    PadDisjoint,
    StackUnion,
    StandardizeClique,
    GlueCliqueSum,
    ColoringOsr,
    FaithfulFromPair,
    FixtureP4Fosr,
    FixtureP4Osr,
    CanonicalFaithful,
    FosrToFit,
    FitToFosr,
    NormalizeWeakFit,
    UnionCombine,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            eprint!("{e}");
            let outcome = Outcome::error(Status::InputError, e.kind().to_string());
            let text = serde_json::to_string_pretty(&outcome.payload).expect("JSON values serialize");
            let _ = writeln!(std::io::stdout(), "{text}");
            return ExitCode::from(Status::InputError.code());
        }
    };
    let outcome = commands::run(&cli);
    if let Some(msg) = &outcome.diagnostic {
        eprintln!("fracrank: {msg}");
    }
    let text = serde_json::to_string_pretty(&outcome.payload).expect("JSON values serialize");
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, format!("{text}\n")) {
                eprintln!("fracrank: cannot write {}: {e}", path.display());
                return ExitCode::from(Status::InputError.code());
            }
        }
        None => {
            // a closed pipe downstream is not an error of ours
            let _ = writeln!(std::io::stdout(), "{text}");
        }
    }
    ExitCode::from(outcome.status.code())
}
