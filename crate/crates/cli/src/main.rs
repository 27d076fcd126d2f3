//! `kantorovich`: exact Kantorovich distances and norms on weighted graphs.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use kantorovich::ErrorClass;

use crate::commands::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Distance between two probability functions.
    Dist,
    /// Norm of a zero-mass vector.
    Norm,
    /// Closed-form optimal coupling on a tree.
    Plan,
    /// Vertex minimising the mean distance to a probability function.
    Barycenter,
    /// Norm induced by a weighted cut family.
    Cutnorm,
    /// Cycle formula with its minimising prefix sum.
    Cycle,
    /// Exactness of a graph map and the quotient norm.
    Quotient,
    /// Metric, close-pair and articulation summary of a graph.
    Check,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Tree,
    Envelope,
    Cycle,
    Decompose,
    Oracle,
    Auto,
}

#[derive(Debug, Parser)]
#[command(name = "kantorovich", version, about)]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// Graph file: one "LABEL LABEL WEIGHT" per line.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// First probability function: "LABEL MASS" per line.
    #[arg(long)]
    pub mu: Option<PathBuf>,
    /// Second probability function.
    #[arg(long)]
    pub nu: Option<PathBuf>,
    /// Zero-mass vector, same format as measures.
    #[arg(long)]
    pub xi: Option<PathBuf>,
    /// Cut family: "LAMBDA : LABEL ..." per line.
    #[arg(long)]
    pub cuts: Option<PathBuf>,
    /// Vertex map: "SOURCE_LABEL TARGET_LABEL" per line.
    #[arg(long)]
    pub map: Option<PathBuf>,
    /// Target graph of the map (quotient command).
    #[arg(long)]
    pub target: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    pub method: Method,
    /// Root or base vertex label; defaults to the first vertex.
    #[arg(long)]
    pub root: Option<String>,
    /// Sign used where a cumulative sum vanishes.
    #[arg(long, default_value = "+1", allow_hyphen_values = true)]
    pub sign0: String,
    /// Maximum number of spanning trees to enumerate.
    #[arg(long, default_value_t = kantorovich::spanning::DEFAULT_TREE_LIMIT)]
    pub limit: usize,
    /// Recompute with the transportation oracle and require agreement.
    #[arg(long)]
    pub verify: bool,
    /// Machine-readable JSON output.
    #[arg(long)]
    pub json: bool,
}

fn exit_code(e: &CliError) -> u8 {
    match e {
        CliError::Core(e) | CliError::Labelled(e, _) => match e.class() {
            ErrorClass::Parse => 2,
            ErrorClass::Validation => 3,
            ErrorClass::Capacity => 4,
            ErrorClass::Condition => 5,
        },
        CliError::Io { .. } | CliError::MissingFlag(_) => 2,
        CliError::Verification(_) => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (out, result) = commands::run(&cli);
    if let Some(report) = out {
        print!("{}", report.render(cli.json));
    }
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
