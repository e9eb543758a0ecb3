use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mirrorloc_cli::commands::{self, Overrides};
use mirrorloc_cli::{CliError, ScenarioConfig};

/// Locate a hidden target seen through an unknown planar mirror.
#[derive(Parser)]
#[command(name = "mirrorloc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Beacon placement stations and visiting paths.
    Plan(Common),
    /// Recover reflector and target from an observation file.
    Solve(Common),
    /// Monte Carlo error study over the configured noise rows.
    Simulate(Common),
}

#[derive(Args)]
struct Common {
    #[arg(long, value_name = "PATH")]
    config: PathBuf,
    /// Observation CSV (solve).
    #[arg(long, value_name = "PATH")]
    obs: Option<PathBuf>,
    #[arg(long, value_name = "DIR", default_value = ".")]
    out: PathBuf,
    /// Overrides the config seed.
    #[arg(long, value_name = "N")]
    seed: Option<u64>,
    /// Overrides the config iteration count.
    #[arg(long, value_name = "N")]
    iterations: Option<usize>,
}

fn run(cli: Cli) -> Result<Vec<PathBuf>, CliError> {
    match cli.command {
        Command::Plan(c) => commands::plan(&ScenarioConfig::load(&c.config)?, &c.out),
        Command::Solve(c) => {
            let cfg = ScenarioConfig::load(&c.config)?;
            let obs = c.obs.ok_or_else(|| CliError::config("solve needs --obs PATH"))?;
            commands::solve_file(&cfg, &obs, &c.out)
        }
        Command::Simulate(c) => {
            let cfg = ScenarioConfig::load(&c.config)?;
            let overrides = Overrides {
                seed: c.seed,
                iterations: c.iterations,
            };
            commands::simulate(&cfg, overrides, &c.out)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(files) => {
            for f in files {
                println!("{}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
