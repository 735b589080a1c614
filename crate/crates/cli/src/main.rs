use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use airy_cli::{list_scenarios, run_all};
use airy_core::Exec;

#[derive(Parser)]
#[command(
    name = "airy",
    version,
    about = "Airy equation boundary value problems by spectral decomposition"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one or more scenario files.
    Run {
        #[arg(required = true)]
        configs: Vec<PathBuf>,
        /// Output directory; one subdirectory per scenario when several are given.
        #[arg(long, default_value = "out")]
        out_dir: PathBuf,
        /// Number of scenarios run concurrently.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Accepted for compatibility; every method is deterministic.
        #[arg(long)]
        seed: Option<u64>,
        /// Evaluate each scenario on a single thread.
        #[arg(long)]
        serial: bool,
    },
    /// List boundary families, datum kinds and config keys.
    List,
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::List => {
            print!("{}", list_scenarios());
            ExitCode::SUCCESS
        }
        Command::Run {
            configs,
            out_dir,
            jobs,
            seed: _,
            serial,
        } => {
            let exec = if serial {
                Exec::Serial
            } else {
                Exec::default()
            };
            let outcomes = run_all(&configs, &out_dir, jobs, exec);
            let mut worst = 0;
            for outcome in &outcomes {
                if outcome.code == 0 {
                    println!("{}", outcome.message);
                } else {
                    eprintln!("error: {}", outcome.message);
                }
                worst = worst.max(outcome.code);
            }
            ExitCode::from(worst as u8)
        }
    }
}
