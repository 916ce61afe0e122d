//! Experiment orchestration: a JSON-described grid of (method, K, run)
//! cells, CSV result tables, rank-sum statistics and radar data.

mod config;
mod format;
mod radar;
mod run;
mod stats;

pub use config::{ExperimentConfig, SCHEMA_VERSION};
pub use format::fmt_sci;
pub use radar::{cmd_radar, RadarEntry, RadarReport};
pub use run::{cmd_run, read_runs_csv, run_experiment, CellResult, RunOptions, RunRow, RunStatus, RunSummary};
pub use stats::{cmd_stats, compute_stats, StatsRow, StatsTable, REFERENCE_METHOD};

pub const RUNS_CSV: &str = "runs.csv";
pub const SUMMARY_CSV: &str = "summary.csv";
pub const STATS_CSV: &str = "stats.csv";
pub const TIMINGS_CSV: &str = "timings.csv";
pub const CONFIG_JSON: &str = "config.json";
pub const SOLUTIONS_JSON: &str = "solutions.json";
