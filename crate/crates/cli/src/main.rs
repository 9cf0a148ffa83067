//! `pentagram`: run the game, the relation-problem circuit, and the
//! lightcone experiments from the command line.
//!
//! Reports go to stdout (or `--out`) as JSON or CSV. Exit codes: 0 success,
//! 2 invalid input, 3 domain precondition failed, 4 internal check failed.

mod bound;
mod error;
mod game;
mod lightcone;
mod mpp;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::report::{Format, Report};

#[derive(Debug, Parser)]
#[command(name = "pentagram", version, about = "Magic pentagram game and relation-problem experiments")]
struct Cli {
    /// Seed for every random choice; sample i uses stream (seed, i).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for sampling loops. Results do not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Add wall-clock runtime to the report (makes reports run-dependent).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(untagged)]
enum Command {
    /// The two-player game.
    #[command(subcommand)]
    Game(game::GameCmd),
    /// The magic pentagram relation problem.
    #[command(subcommand)]
    Mpp(mpp::MppCmd),
    /// Depth lower bounds for classical circuits.
    #[command(subcommand)]
    Bound(bound::BoundCmd),
    /// Lightcone analysis of classical circuits.
    #[command(subcommand)]
    Lightcone(lightcone::LightconeCmd),
}

impl Command {
    fn name(&self) -> String {
        let (group, sub) = match self {
            Command::Game(c) => ("game", c.name()),
            Command::Mpp(c) => ("mpp", c.name()),
            Command::Bound(c) => ("bound", c.name()),
            Command::Lightcone(c) => ("lightcone", c.name()),
        };
        format!("{group} {sub}")
    }
}

/// What a command produces: a report result, or a raw artifact (such as a
/// circuit file) written verbatim.
pub enum Output {
    Result(serde_json::Value),
    Artifact(String),
}

pub struct Ctx {
    pub seed: u64,
}

fn run(cli: &Cli) -> CliResult<()> {
    if cli.threads == 0 {
        return Err(CliError::Validation("--threads must be at least 1".into()));
    }
    // the global pool can only be built once per process; ignore a repeat
    let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global();
    let ctx = Ctx { seed: cli.seed };
    let start = Instant::now();
    let output = match &cli.command {
        Command::Game(c) => game::run(c, &ctx)?,
        Command::Mpp(c) => mpp::run(c, &ctx)?,
        Command::Bound(c) => bound::run(c)?,
        Command::Lightcone(c) => lightcone::run(c, &ctx)?,
    };
    let text = match output {
        Output::Artifact(s) => s,
        Output::Result(result) => Report {
            command: cli.command.name(),
            seed: cli.seed,
            config: serde_json::to_value(&cli.command)?,
            result,
            runtime_secs: cli.timing.then(|| start.elapsed().as_secs_f64()),
        }
        .render(cli.format),
    };
    report::emit(&text, cli.out.as_deref())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match std::panic::catch_unwind(|| run(&cli)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
        Err(_) => ExitCode::from(CliError::Internal(String::new()).exit_code() as u8),
    }
}
