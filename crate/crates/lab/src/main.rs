use clap::{Parser, Subcommand};
use lab::{run_scenario, write_outcome, Scenario, ScenarioConfig};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "beltrami-lab", version, about = "Numerical experiments on planar conductivity stability")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario and write its artifacts
    Run {
        scenario: String,
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long = "grid-n")]
        grid_n: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// List the registered scenarios
    List,
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match cli.command {
        Command::List => {
            for s in Scenario::ALL {
                println!("{:<16} {}", s.name(), s.description());
            }
            ExitCode::SUCCESS
        }
        Command::Run { scenario, config, out, grid_n, seed, workers } => {
            let scenario: Scenario = match scenario.parse() {
                Ok(s) => s,
                Err(e) => return usage(e),
            };
            let mut cfg = match ScenarioConfig::load(&config) {
                Ok(c) => c,
                Err(e) => return usage(e),
            };
            if cfg.scenario != scenario {
                return usage(format!("config describes scenario {}, not {}", cfg.scenario.name(), scenario.name()));
            }
            if let Some(n) = grid_n {
                cfg.grid_n = n;
            }
            if let Some(s) = seed {
                cfg.seed = s;
            }
            if let Some(w) = workers {
                cfg.workers = w;
            }
            if let Err(e) = cfg.validate() {
                return usage(e);
            }
            let outcome = match run_scenario(&cfg) {
                Ok(o) => o,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(e.exit_code() as u8);
                }
            };
            if let Err(e) = write_outcome(&outcome, &out) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            for a in &outcome.assertions {
                println!("{} {} (value {:e}, bound {:e})", if a.passed { "ok  " } else { "FAIL" }, a.name, a.value, a.bound);
            }
            if let Some(e) = &outcome.error {
                eprintln!("error: {e}");
            }
            if outcome.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
