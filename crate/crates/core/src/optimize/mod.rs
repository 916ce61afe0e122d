//! Gradient-descent drivers for set scalarizations, single-solution
//! baselines and the sum-of-minimum baseline.

mod descent;
mod som;
mod stationarity;
mod trace;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{PreferenceVector, Problem, SmoothingConfig, SolutionSet};
use crate::problems::Concentration;
use crate::seed::{stream_rng, Stream};

pub use descent::{run_baseline_scalarization, run_set_descent};
pub use som::{sample_loss_proportional, som_init, som_optimize, sum_of_min, SomInit, SomRound};
pub use stationarity::{stationarity_report, SolutionStationarity};
pub use trace::{Checkpoint, Trace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "LS")]
    Ls,
    #[serde(rename = "TCH")]
    Tch,
    #[serde(rename = "STCH")]
    Stch,
    #[serde(rename = "TCH-Set")]
    TchSet,
    #[serde(rename = "STCH-Set")]
    StchSet,
    #[serde(rename = "SoM")]
    Som,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::Ls,
        Method::Tch,
        Method::Stch,
        Method::TchSet,
        Method::StchSet,
        Method::Som,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Ls => "LS",
            Method::Tch => "TCH",
            Method::Stch => "STCH",
            Method::TchSet => "TCH-Set",
            Method::StchSet => "STCH-Set",
            Method::Som => "SoM",
        }
    }

    pub fn is_set_scalarization(self) -> bool {
        matches!(self, Method::TchSet | Method::StchSet)
    }

    pub fn is_single_solution(self) -> bool {
        matches!(self, Method::Ls | Method::Tch | Method::Stch)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Config(format!("unknown method {s:?}; expected one of LS, TCH, STCH, TCH-Set, STCH-Set, SoM")))
    }
}

/// Step size `eta_t` as a function of the iteration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum StepSchedule {
    #[default]
    Constant,
    /// `eta / (1 + rate * t)`.
    InverseTime { rate: f64 },
}

impl StepSchedule {
    pub fn step(&self, eta: f64, iteration: usize) -> f64 {
        match *self {
            StepSchedule::Constant => eta,
            StepSchedule::InverseTime { rate } => eta / (1.0 + rate * iteration as f64),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SomConfig {
    /// Gradient steps spent on each objective picked during initialization.
    pub init_steps: usize,
    /// Gradient steps per group in every update round.
    pub update_steps: usize,
    pub rounds: usize,
}

impl Default for SomConfig {
    fn default() -> Self {
        Self {
            init_steps: 200,
            update_steps: 50,
            rounds: 20,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OptimizerConfig {
    pub method: Method,
    pub iterations: usize,
    pub step_size: f64,
    pub step_schedule: StepSchedule,
    pub smoothing: SmoothingConfig,
    /// Preference for the set scalarizations (uniform when absent). For the
    /// single-solution baselines, forces every slot onto this preference
    /// instead of sampling one per slot.
    pub preference: Option<PreferenceVector>,
    /// Distribution of per-slot baseline preferences.
    pub concentration: Concentration,
    /// Record a checkpoint every this many iterations (0: only first and last).
    pub checkpoint_every: usize,
    pub seed: u64,
    pub som: SomConfig,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            method: Method::StchSet,
            iterations: 10_000,
            step_size: 1e-2,
            step_schedule: StepSchedule::Constant,
            smoothing: SmoothingConfig::default(),
            preference: None,
            concentration: Concentration::default(),
            checkpoint_every: 100,
            seed: 0,
            som: SomConfig::default(),
        }
    }
}

impl OptimizerConfig {
    pub fn new(method: Method) -> Self {
        Self {
            method,
            ..Self::default()
        }
    }

    pub fn validate(&self, m: usize) -> Result<()> {
        if self.iterations == 0 {
            return Err(Error::Config("iterations must be at least 1".into()));
        }
        if !(self.step_size > 0.0 && self.step_size.is_finite()) {
            return Err(Error::Config(format!("step_size must be positive, got {}", self.step_size)));
        }
        if let StepSchedule::InverseTime { rate } = self.step_schedule {
            if !(rate >= 0.0 && rate.is_finite()) {
                return Err(Error::Config(format!("step decay rate must be nonnegative, got {rate}")));
            }
        }
        self.smoothing.validate(m)?;
        if let Some(p) = &self.preference {
            crate::error::check_len("preference vector", m, p.len())?;
        }
        self.concentration.validate()?;
        if self.method == Method::Som && (self.som.rounds == 0 || self.som.update_steps == 0) {
            return Err(Error::Config("SoM needs rounds >= 1 and update_steps >= 1".into()));
        }
        Ok(())
    }

    pub(crate) fn step(&self, iteration: usize) -> f64 {
        self.step_schedule.step(self.step_size, iteration)
    }

    pub(crate) fn records(&self, iteration: usize) -> bool {
        iteration == 0 || (self.checkpoint_every > 0 && iteration.is_multiple_of(self.checkpoint_every))
    }
}

/// `k` standard-normal starting points from the initialization stream.
pub fn initial_solutions(dim: usize, k: usize, seed: u64) -> SolutionSet {
    let mut rng = stream_rng(seed, Stream::Init);
    SolutionSet::standard_normal(k, dim, &mut rng)
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    pub solutions: SolutionSet,
    pub trace: Trace,
    /// Lloyd-round diagnostics, SoM only.
    pub som_rounds: Option<Vec<SomRound>>,
}

/// Runs `config.method` from `init`; `K = init.len()`.
pub fn run_method<P: Problem + ?Sized>(problem: &P, init: &SolutionSet, config: &OptimizerConfig) -> Result<RunOutput> {
    match config.method {
        Method::TchSet | Method::StchSet => {
            let (solutions, trace) = run_set_descent(problem, init, config)?;
            Ok(RunOutput {
                solutions,
                trace,
                som_rounds: None,
            })
        }
        Method::Ls | Method::Tch | Method::Stch => {
            let (solutions, trace) = run_baseline_scalarization(problem, init, config)?;
            Ok(RunOutput {
                solutions,
                trace,
                som_rounds: None,
            })
        }
        Method::Som => {
            let start = som_init(problem, init, config)?;
            let (solutions, trace, rounds) = som_optimize(problem, &start.solutions, config)?;
            Ok(RunOutput {
                solutions,
                trace,
                som_rounds: Some(rounds),
            })
        }
    }
}
