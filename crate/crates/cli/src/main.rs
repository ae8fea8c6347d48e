//! `rrg`: verify Rogers-Ramanujan-Gordon identities, print count tables,
//! run the partition/path bijection, expand series and draw paths.
//!
//! Exit codes: 0 success, 1 a verification found mismatches, 2 usage or
//! parameter error, 3 invalid input object.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands::CliError;

#[derive(Debug, Parser)]
#[command(name = "rrg", version, about = "Rogers-Ramanujan-Gordon partitions, lattice paths and q-series")]
struct Cli {
    /// TOML file with default flag values and `[[sweep]]` verification runs.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compare both sides of an identity coefficient by coefficient.
    Verify(VerifyArgs),
    /// Count a partition or path family by exhaustive generation.
    Count(CountArgs),
    /// Map a partition to its ledger and lattice path, or a path back.
    Biject(BijectArgs),
    /// Expand a named multisum or product.
    Series(SeriesArgs),
    /// Draw a lattice path.
    Render(RenderArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Args, Clone, Default)]
pub struct Common {
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    a: Option<u32>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// thm1, eq2, thm3, eq4, thm5 .. thm13. Without it, the config sweeps run.
    #[arg(long)]
    identity: Option<String>,
    /// Largest weight compared (enumeration identities).
    #[arg(long)]
    max_n: Option<usize>,
    /// Truncation order (series identities); same role as --max-n.
    #[arg(long)]
    order: Option<usize>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    /// B, A, W, Wbar, Btilde, Atilde, E, Etilde, P, Pbar, Q, clusters or peaks.
    #[arg(long)]
    family: String,
    #[arg(long)]
    max_n: Option<usize>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
pub struct BijectArgs {
    /// Comma-separated parts, e.g. "13,11,11,11,9".
    #[arg(long, conflicts_with = "path")]
    partition: Option<String>,
    /// JSON file holding a path, or a previous `biject` document.
    #[arg(long, requires = "inverse")]
    path: Option<PathBuf>,
    /// Map the path given by --path back to a partition.
    #[arg(long)]
    inverse: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    /// ag-sum, ag-prod, bressoud-sum, ..., q-sum-aeven, master.
    #[arg(long)]
    expr: String,
    #[arg(long)]
    order: Option<usize>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    /// Steps as names or symbols: "NE,SE" or "/\\".
    #[arg(long, conflicts_with = "path")]
    steps: Option<String>,
    /// Starting height for --steps.
    #[arg(long, default_value_t = 0)]
    start: u32,
    /// JSON file holding a path, or a previous `biject` document.
    #[arg(long)]
    path: Option<PathBuf>,
    /// Also list the peaks under the ASCII drawing.
    #[arg(long)]
    annotate: bool,
    /// ascii or svg.
    #[arg(long, default_value = "ascii")]
    style: String,
    #[command(flatten)]
    common: Common,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = config::load(cli.config.as_deref()).and_then(|cfg| match cli.command {
        Command::Verify(args) => commands::verify(args, &cfg),
        Command::Count(args) => commands::count(args, &cfg),
        Command::Biject(args) => commands::biject(args, &cfg),
        Command::Series(args) => commands::series(args, &cfg),
        Command::Render(args) => commands::render(args, &cfg),
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("rrg: {e}");
            ExitCode::from(match e {
                CliError::Usage(_) | CliError::Io(_) => 2,
                CliError::Input(_) => 3,
            })
        }
    }
}
