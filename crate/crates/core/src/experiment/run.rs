use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::RunRecord;
use crate::model::{evaluate_matrix, SolutionSet};
use crate::optimize::{initial_solutions, run_method, Method};

use super::config::ExperimentConfig;
use super::format::fmt_sci;
use super::stats::compute_stats;
use super::{CONFIG_JSON, RUNS_CSV, SOLUTIONS_JSON, SUMMARY_CSV, TIMINGS_CSV};

/// Command-line adjustments applied on top of a loaded config.
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub workers: Option<usize>,
    pub runs: Option<usize>,
    pub methods: Vec<Method>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunStatus {
    Ok,
    Failed,
}

/// One `(method, K, run)` cell.
#[derive(Debug, Clone, PartialEq)]
pub struct CellResult {
    pub method: Method,
    pub k: usize,
    pub run: usize,
    pub seed: u64,
    pub outcome: std::result::Result<(RunRecord, SolutionSet), String>,
}

/// A row of `runs.csv`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRow {
    pub method: Method,
    #[serde(rename = "K")]
    pub k: usize,
    pub run: usize,
    pub seed: u64,
    pub status: RunStatus,
    pub worst: Option<f64>,
    pub average: Option<f64>,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub out_dir: PathBuf,
    pub cells: usize,
    pub failed: usize,
}

#[derive(Serialize)]
struct SolutionsEntry<'a> {
    method: Method,
    #[serde(rename = "K")]
    k: usize,
    run: usize,
    seed: u64,
    solutions: &'a SolutionSet,
}

fn run_cell(config: &ExperimentConfig, method: Method, k: usize, run: usize) -> CellResult {
    let seed = config.run_seed(run);
    let outcome = (|| -> Result<(RunRecord, SolutionSet)> {
        let start = Instant::now();
        let problem = config.problem.with_default_k_true(k).with_seed(seed).generate()?;
        let mut opt = config.method_config(method)?;
        opt.seed = seed;
        let init = initial_solutions(crate::model::Problem::dim(&problem), k, seed);
        let out = run_method(&problem, &init, &opt)?;
        let f = evaluate_matrix(&problem, &out.solutions)?;
        let record = RunRecord::from_matrix(method.as_str(), seed, &f, start.elapsed().as_secs_f64())?;
        Ok((record, out.solutions))
    })()
    .map_err(|e| e.to_string());
    CellResult {
        method,
        k,
        run,
        seed,
        outcome,
    }
}

/// Runs every cell of the grid on a pool of `workers` threads. Results come
/// back in grid order (K, run, method) regardless of scheduling.
pub fn run_experiment(config: &ExperimentConfig, workers: Option<usize>) -> Result<Vec<CellResult>> {
    config.validate()?;
    let mut cells = Vec::new();
    for &k in &config.k_values {
        for run in 0..config.runs {
            for &method in &config.methods {
                cells.push((method, k, run));
            }
        }
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = workers {
        builder = builder.num_threads(w.max(1));
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(|| {
        cells
            .par_iter()
            .map(|&(method, k, run)| run_cell(config, method, k, run))
            .collect()
    }))
}

fn opt_sci(v: Option<f64>) -> String {
    v.map(fmt_sci).unwrap_or_default()
}

fn rows(results: &[CellResult]) -> Vec<RunRow> {
    results
        .iter()
        .map(|c| match &c.outcome {
            Ok((r, _)) => RunRow {
                method: c.method,
                k: c.k,
                run: c.run,
                seed: c.seed,
                status: RunStatus::Ok,
                worst: Some(r.worst),
                average: Some(r.average),
                error: String::new(),
            },
            Err(e) => RunRow {
                method: c.method,
                k: c.k,
                run: c.run,
                seed: c.seed,
                status: RunStatus::Failed,
                worst: None,
                average: None,
                error: e.clone(),
            },
        })
        .collect()
}

fn write_runs_csv(path: &Path, rows: &[RunRow]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["method", "K", "run", "seed", "status", "worst", "average", "error"])?;
    for r in rows {
        w.write_record([
            r.method.to_string(),
            r.k.to_string(),
            r.run.to_string(),
            r.seed.to_string(),
            match r.status {
                RunStatus::Ok => "ok".into(),
                RunStatus::Failed => "failed".into(),
            },
            opt_sci(r.worst),
            opt_sci(r.average),
            r.error.clone(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_runs_csv(path: &Path) -> Result<Vec<RunRow>> {
    let mut reader = csv::Reader::from_path(path)?;
    let mut out = Vec::new();
    for record in reader.records() {
        let record = record?;
        let field = |i: usize| record.get(i).unwrap_or("");
        let bad = |what: &str| Error::Config(format!("{}: malformed {what} in row {}", path.display(), out.len() + 1));
        let num = |s: &str| -> Result<Option<f64>> {
            if s.is_empty() {
                Ok(None)
            } else {
                s.parse::<f64>().map(Some).map_err(|_| bad("number"))
            }
        };
        out.push(RunRow {
            method: field(0).parse()?,
            k: field(1).parse().map_err(|_| bad("K"))?,
            run: field(2).parse().map_err(|_| bad("run"))?,
            seed: field(3).parse().map_err(|_| bad("seed"))?,
            status: match field(4) {
                "ok" => RunStatus::Ok,
                "failed" => RunStatus::Failed,
                _ => return Err(bad("status")),
            },
            worst: num(field(5))?,
            average: num(field(6))?,
            error: field(7).to_string(),
        });
    }
    Ok(out)
}

/// Cells in first-appearance order with their successful runs.
pub(crate) fn group_cells(rows: &[RunRow]) -> Vec<((Method, usize), Vec<&RunRow>)> {
    let mut cells: Vec<((Method, usize), Vec<&RunRow>)> = Vec::new();
    for r in rows {
        match cells.iter_mut().find(|(key, _)| *key == (r.method, r.k)) {
            Some((_, v)) => v.push(r),
            None => cells.push(((r.method, r.k), vec![r])),
        }
    }
    cells
}

fn write_summary_csv(path: &Path, rows: &[RunRow]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["method", "K", "runs_ok", "runs_failed", "mean_worst", "mean_average", "status"])?;
    for ((method, k), cell) in group_cells(rows) {
        let ok: Vec<&&RunRow> = cell.iter().filter(|r| r.status == RunStatus::Ok).collect();
        let failed = cell.len() - ok.len();
        let mean = |f: fn(&RunRow) -> Option<f64>| -> Option<f64> {
            if ok.is_empty() {
                None
            } else {
                Some(ok.iter().map(|r| f(r).unwrap_or(f64::NAN)).sum::<f64>() / ok.len() as f64)
            }
        };
        let status = match (ok.len(), failed) {
            (_, 0) => "complete",
            (0, _) => "failed",
            _ => "partial",
        };
        w.write_record([
            method.to_string(),
            k.to_string(),
            ok.len().to_string(),
            failed.to_string(),
            opt_sci(mean(|r| r.worst)),
            opt_sci(mean(|r| r.average)),
            status.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn write_timings_csv(path: &Path, results: &[CellResult]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["method", "K", "run", "wall_time_s"])?;
    for c in results {
        let t = c.outcome.as_ref().map(|(r, _)| r.wall_time).ok();
        w.write_record([c.method.to_string(), c.k.to_string(), c.run.to_string(), opt_sci(t)])?;
    }
    w.flush()?;
    Ok(())
}

fn write_solutions_json(path: &Path, results: &[CellResult]) -> Result<()> {
    let entries: Vec<SolutionsEntry> = results
        .iter()
        .filter_map(|c| {
            c.outcome.as_ref().ok().map(|(_, s)| SolutionsEntry {
                method: c.method,
                k: c.k,
                run: c.run,
                seed: c.seed,
                solutions: s,
            })
        })
        .collect();
    let mut file = fs::File::create(path)?;
    serde_json::to_writer(&mut file, &entries)?;
    file.write_all(b"\n")?;
    Ok(())
}

/// Loads `config_path`, applies `options`, runs the grid and writes
/// `runs.csv`, `summary.csv`, `stats.csv`, `timings.csv`, `config.json`
/// and `solutions.json` into the output directory.
pub fn cmd_run(config_path: &Path, options: &RunOptions) -> Result<RunSummary> {
    let mut config = ExperimentConfig::load(config_path)?;
    if let Some(seed) = options.seed {
        config.master_seed = seed;
    }
    if let Some(runs) = options.runs {
        config.runs = runs;
    }
    if !options.methods.is_empty() {
        config.methods.retain(|m| options.methods.contains(m));
        if config.methods.is_empty() {
            return Err(Error::Config("--method filter removed every configured method".into()));
        }
    }
    let out_dir = options
        .out
        .clone()
        .or_else(|| config.output_dir.clone())
        .ok_or_else(|| Error::Config("no output directory: pass --out or set output_dir".into()))?;
    config.output_dir = None;
    config.validate()?;
    fs::create_dir_all(&out_dir)?;

    let results = run_experiment(&config, options.workers)?;
    let rows = rows(&results);
    write_runs_csv(&out_dir.join(RUNS_CSV), &rows)?;
    write_summary_csv(&out_dir.join(SUMMARY_CSV), &rows)?;
    write_timings_csv(&out_dir.join(TIMINGS_CSV), &results)?;
    write_solutions_json(&out_dir.join(SOLUTIONS_JSON), &results)?;
    fs::write(out_dir.join(CONFIG_JSON), config.to_json()?)?;
    if config.methods.len() >= 2 && config.methods.contains(&super::REFERENCE_METHOD) {
        compute_stats(&rows)?.write_csv(&out_dir.join(super::STATS_CSV))?;
    }
    Ok(RunSummary {
        out_dir,
        cells: results.len(),
        failed: results.iter().filter(|c| c.outcome.is_err()).count(),
    })
}
