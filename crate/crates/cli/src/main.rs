use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use fewformany::experiment::{cmd_radar, cmd_run, cmd_stats, ExperimentConfig, RunOptions};
use fewformany::optimize::Method;
use fewformany::Problem;

#[derive(Parser)]
#[command(name = "fewformany", version, about = "Few solutions for many objectives: experiment runner")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment grid and write result tables.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Master seed (overrides the config).
        #[arg(long)]
        seed: Option<u64>,
        /// Output directory (overrides the config).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, env = "FEWFORMANY_WORKERS")]
        workers: Option<usize>,
        /// Number of runs per cell (overrides the config).
        #[arg(long)]
        runs: Option<usize>,
        /// Only run these methods; repeatable.
        #[arg(long = "method")]
        methods: Vec<Method>,
    },
    /// Emit per-solution values on sampled objectives for one run.
    Radar {
        #[arg(long)]
        results: PathBuf,
        #[arg(long, default_value_t = 0)]
        run: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Output file (default: RESULTS/radar_run<N>.json).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recompute rank-sum statistics against STCH-Set from runs.csv.
    Stats {
        #[arg(long)]
        results: PathBuf,
    },
    /// Print the regenerable description of a configured problem.
    Gen {
        #[arg(long)]
        config: PathBuf,
        /// Problem seed (default: the config's master seed).
        #[arg(long)]
        seed: Option<u64>,
        /// Number of solutions, used as the ground-truth count when unset.
        #[arg(long)]
        k: Option<usize>,
        /// Also write the raw regression data as CSV.
        #[arg(long)]
        data_csv: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match real_main() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn emit(text: &str) -> Result<()> {
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        other => other.context("writing to stdout"),
    }
}

fn real_main() -> Result<ExitCode> {
    match Cli::parse().command {
        Command::Run {
            config,
            seed,
            out,
            workers,
            runs,
            methods,
        } => {
            let options = RunOptions {
                seed,
                out,
                workers,
                runs,
                methods,
            };
            let summary = cmd_run(&config, &options)?;
            println!(
                "wrote {} cells to {} ({} failed)",
                summary.cells,
                summary.out_dir.display(),
                summary.failed
            );
            if summary.failed > 0 {
                eprintln!("warning: {} of {} runs failed; see runs.csv", summary.failed, summary.cells);
                return Ok(ExitCode::from(2));
            }
        }
        Command::Radar {
            results,
            run,
            samples,
            out,
        } => {
            let report = cmd_radar(&results, run, samples)?;
            let path = out.unwrap_or_else(|| results.join(format!("radar_run{run}.json")));
            std::fs::write(&path, serde_json::to_string_pretty(&report)? + "\n")
                .with_context(|| format!("writing {}", path.display()))?;
            println!("wrote {}", path.display());
        }
        Command::Stats { results } => {
            let table = cmd_stats(&results)?;
            emit(&table.render())?;
        }
        Command::Gen {
            config,
            seed,
            k,
            data_csv,
        } => {
            let config = ExperimentConfig::load(&config)?;
            let k = k.unwrap_or(config.k_values[0]);
            let spec = config
                .problem
                .with_default_k_true(k)
                .with_seed(seed.unwrap_or(config.master_seed));
            let problem = spec.generate()?;
            let description = serde_json::json!({
                "descriptor": problem.descriptor(),
                "num_objectives": problem.num_objectives(),
                "dim": problem.dim(),
                "spec": spec,
            });
            emit(&(serde_json::to_string_pretty(&description)? + "\n"))?;
            if let Some(path) = data_csv {
                if problem.regression_data().is_none() {
                    bail!("--data-csv needs a regression problem");
                }
                let file = std::fs::File::create(&path).with_context(|| format!("creating {}", path.display()))?;
                problem.write_data_csv(file)?;
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
