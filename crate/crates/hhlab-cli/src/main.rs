//! `hhlab` command-line driver.

mod commands;
mod context;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use context::{CliError, Context, GridFlags};

#[derive(Parser, Debug)]
#[command(name = "hhlab", version, about = "Experiments for the inverse-square heat semigroup and the Hardy-Henon equation")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Configuration file of `key = value` lines.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<std::path::PathBuf>,

    /// Output directory, created if missing.
    #[arg(long, global = true, value_name = "DIR", default_value = "out")]
    out: std::path::PathBuf,

    /// Number of radial grid nodes.
    #[arg(long, global = true, value_name = "N")]
    nodes: Option<usize>,

    /// Smallest grid radius.
    #[arg(long, global = true, value_name = "R")]
    rmin: Option<f64>,

    /// Largest grid radius.
    #[arg(long, global = true, value_name = "R")]
    rmax: Option<f64>,

    /// Output times per decade.
    #[arg(long, global = true, value_name = "PTS")]
    tgrid: Option<usize>,

    /// Seed for randomized sweeps.
    #[arg(long, global = true, value_name = "N", default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Exponents and well-posedness verdicts for one parameter set.
    Classify,
    /// SVG map of the (alpha, tau) plane.
    RegionPlot,
    /// Linear evolution of radial data, one CSV per time.
    Evolve,
    /// Measured large-time decay slope against the predicted exponent.
    DecayFit,
    /// Picard iteration for the integral equation.
    Picard,
    /// Lifespan sweep over power-law data amplitudes.
    Blowup,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Classify => "classify",
            Command::RegionPlot => "region-plot",
            Command::Evolve => "evolve",
            Command::DecayFit => "decay-fit",
            Command::Picard => "picard",
            Command::Blowup => "blowup",
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let path = cli.config.ok_or_else(|| CliError::usage("--config PATH is required"))?;
    let grid = GridFlags { nodes: cli.nodes, rmin: cli.rmin, rmax: cli.rmax };
    let mut ctx = Context::load(cli.command.name(), &path, cli.out, grid, cli.tgrid, cli.seed)?;
    match cli.command {
        Command::Classify => commands::classify::run(&mut ctx)?,
        Command::RegionPlot => commands::region::run(&mut ctx)?,
        Command::Evolve => commands::linear::evolve(&mut ctx)?,
        Command::DecayFit => commands::linear::decay_fit(&mut ctx)?,
        Command::Picard => commands::dynamics::picard(&mut ctx)?,
        Command::Blowup => commands::dynamics::blowup(&mut ctx)?,
    }
    ctx.finish()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
