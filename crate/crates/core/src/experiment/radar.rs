use std::path::Path;

use rand::seq::index;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Problem, SolutionSet};
use crate::optimize::Method;
use crate::seed::{stream_rng, Stream};

use super::config::ExperimentConfig;
use super::{CONFIG_JSON, SOLUTIONS_JSON};

/// Values of one solution set on a sample of objectives.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RadarEntry {
    pub method: Method,
    #[serde(rename = "K")]
    pub k: usize,
    /// Descriptor of the instance the values were computed on.
    pub problem: String,
    /// `values[s][j]`: solution `s` on sampled objective `j`.
    pub values: Vec<Vec<f64>>,
    /// `envelope[j] = min_s values[s][j]`.
    pub envelope: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RadarReport {
    pub run: usize,
    pub seed: u64,
    /// Sampled objective indices, ascending.
    pub objectives: Vec<usize>,
    pub entries: Vec<RadarEntry>,
}

#[derive(Deserialize)]
struct StoredSolutions {
    method: Method,
    #[serde(rename = "K")]
    k: usize,
    run: usize,
    seed: u64,
    solutions: SolutionSet,
}

/// Per-solution values of run `run_index` on `sample_count` objectives drawn
/// from the radar stream of that run's seed (all objectives when
/// `sample_count >= m`).
pub fn cmd_radar(results_dir: &Path, run_index: usize, sample_count: usize) -> Result<RadarReport> {
    if sample_count == 0 {
        return Err(Error::Config("sample count must be at least 1".into()));
    }
    let config = ExperimentConfig::load(&results_dir.join(CONFIG_JSON))?;
    let stored: Vec<StoredSolutions> =
        serde_json::from_reader(std::io::BufReader::new(std::fs::File::open(results_dir.join(SOLUTIONS_JSON))?))?;
    let selected: Vec<&StoredSolutions> = stored.iter().filter(|s| s.run == run_index).collect();
    let Some(first) = selected.first() else {
        return Err(Error::Config(format!(
            "no successful results for run {run_index} in {}",
            results_dir.display()
        )));
    };
    let seed = first.seed;
    let m = config.problem.num_objectives();
    let objectives: Vec<usize> = if sample_count >= m {
        (0..m).collect()
    } else {
        let mut rng = stream_rng(seed, Stream::Radar);
        let mut v = index::sample(&mut rng, m, sample_count).into_vec();
        v.sort_unstable();
        v
    };
    let mut entries = Vec::new();
    for s in selected {
        let problem = config.problem.with_default_k_true(s.k).with_seed(seed).generate()?;
        crate::error::check_len("stored solution dimension", problem.dim(), s.solutions.dim())?;
        let values: Vec<Vec<f64>> = s
            .solutions
            .iter()
            .map(|x| objectives.iter().map(|&i| problem.value(i, x)).collect())
            .collect();
        let envelope = (0..objectives.len())
            .map(|j| values.iter().map(|v| v[j]).fold(f64::INFINITY, f64::min))
            .collect();
        entries.push(RadarEntry {
            method: s.method,
            k: s.k,
            problem: problem.descriptor(),
            values,
            envelope,
        });
    }
    Ok(RadarReport {
        run: run_index,
        seed,
        objectives,
        entries,
    })
}
