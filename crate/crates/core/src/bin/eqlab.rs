use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use eqlab::experiments::{run_with_jobs, Command, ExperimentConfig, RunOptions};

#[derive(Parser)]
#[command(name = "eqlab", version, about = "Local equilibration experiments")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Distance to equilibrium over the time grid (CSV).
    Trace(Common),
    /// Bound violation statistics over many Hamiltonians (JSON).
    Ensemble(Common),
    /// |mu(t)| by every applicable method (CSV).
    Mu(Common),
    /// Fourth moment prediction against Monte Carlo (JSON).
    Moments(Common),
    /// Formula evaluation only (JSON).
    Bounds(Common),
    /// Shallow circuits that miss the subsystem (JSON).
    CircuitDemo(Common),
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    config: PathBuf,
    /// Replaces master_seed.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Record wall-clock time (output is then not reproducible).
    #[arg(long)]
    timing: bool,
    /// Config overrides, `key.path=value`.
    overrides: Vec<String>,
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    let (cmd, args) = match cli.command {
        Cmd::Trace(a) => (Command::Trace, a),
        Cmd::Ensemble(a) => (Command::Ensemble, a),
        Cmd::Mu(a) => (Command::Mu, a),
        Cmd::Moments(a) => (Command::Moments, a),
        Cmd::Bounds(a) => (Command::Bounds, a),
        Cmd::CircuitDemo(a) => (Command::CircuitDemo, a),
    };
    match execute(cmd, &args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("eqlab {cmd}: {e}");
            ExitCode::from(if e.is_numerical() { 3 } else { 2 })
        }
    }
}

fn execute(cmd: Command, args: &Common) -> eqlab::Result<()> {
    let mut overrides = args.overrides.clone();
    if let Some(seed) = args.seed {
        overrides.push(format!("master_seed={seed}"));
    }
    let cfg = ExperimentConfig::load(&args.config, &overrides)?;
    let text = run_with_jobs(cmd, &cfg, RunOptions { timing: args.timing }, args.jobs)?;
    match &args.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}
