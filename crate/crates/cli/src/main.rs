use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use memaco_cli::config::{self, Overrides};
use memaco_cli::runner;

#[derive(Parser)]
#[command(
    name = "memaco",
    version,
    about = "Shortest paths by ant colonies and adaptive-resistor circuits, cross-checked against a classical oracle"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment from a named preset or a JSON config file
    Run {
        /// Preset name (fig2_two_path, fig4_multipath, fig6_threshold) or
        /// path to a config JSON
        source: String,
        /// Engine override: aco_discrete, aco_continuous, memnet, compare
        #[arg(long)]
        engine: Option<String>,
        /// Output directory (default: the config's out_dir)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Seed override for stochastic engines
        #[arg(long)]
        seed: Option<u64>,
        /// Time-step override for the selected engines
        #[arg(long)]
        dt: Option<f64>,
        /// Horizon override for the selected engines, in engine time units
        #[arg(long)]
        t_end: Option<f64>,
    },
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Run {
            source,
            engine,
            out,
            seed,
            dt,
            t_end,
        } => run(source, engine, out, seed, dt, t_end),
    }
}

fn run(
    source: String,
    engine: Option<String>,
    out: Option<PathBuf>,
    seed: Option<u64>,
    dt: Option<f64>,
    t_end: Option<f64>,
) -> ExitCode {
    let overrides = Overrides {
        engine,
        seed,
        dt,
        t_end,
    };
    let cfg = match config::load(&source).and_then(|c| c.apply_overrides(&overrides)) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let out_dir = out.unwrap_or_else(|| PathBuf::from(&cfg.out_dir));
    match runner::run_experiment(&cfg, &out_dir) {
        Ok(outcome) => {
            println!("oracle path: {:?}", outcome.oracle_path);
            for (key, path, agrees) in &outcome.engine_reports {
                println!(
                    "{key}: path {path:?} ({})",
                    if *agrees { "agrees" } else { "DISAGREES" }
                );
            }
            println!("wrote {} files to {}", outcome.files.len(), out_dir.display());
            if outcome.all_agree {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: at least one engine disagrees with the oracle");
                ExitCode::from(3)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
