use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::optimize::{Method, OptimizerConfig};
use crate::problems::ProblemSpec;

pub const SCHEMA_VERSION: u32 = 1;

fn default_runs() -> usize {
    50
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub schema_version: u32,
    /// Benchmark family and parameters. Its `seed` is ignored: run `r` uses
    /// `master_seed + r` for the problem, the initial set and preferences.
    pub problem: ProblemSpec,
    pub methods: Vec<Method>,
    pub k_values: Vec<usize>,
    #[serde(default = "default_runs")]
    pub runs: usize,
    #[serde(default)]
    pub master_seed: u64,
    /// Settings shared by all methods.
    #[serde(default)]
    pub optimizer: OptimizerConfig,
    /// Per-method partial optimizer settings, merged over `optimizer`.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub overrides: BTreeMap<Method, serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: Self = serde_json::from_str(text).map_err(|e| Error::Config(format!("invalid experiment config: {e}")))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text).map_err(|e| match e {
            Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Config(format!(
                "schema_version: expected {SCHEMA_VERSION}, found {}",
                self.schema_version
            )));
        }
        if self.methods.is_empty() {
            return Err(Error::Config("methods: at least one method is required".into()));
        }
        if self.k_values.is_empty() || self.k_values.contains(&0) {
            return Err(Error::Config("k_values: need at least one K, each >= 1".into()));
        }
        if self.runs == 0 {
            return Err(Error::Config("runs: must be at least 1".into()));
        }
        for (i, m) in self.methods.iter().enumerate() {
            if self.methods[..i].contains(m) {
                return Err(Error::Config(format!("methods: {m} listed twice")));
            }
        }
        for &k in &self.k_values {
            let spec = self.problem.with_default_k_true(k);
            spec.validate().map_err(|e| Error::Config(format!("problem: {e}")))?;
            for &method in &self.methods {
                self.method_config(method)?
                    .validate(spec.num_objectives())
                    .map_err(|e| Error::Config(format!("optimizer ({method}): {e}")))?;
            }
        }
        Ok(())
    }

    /// Effective optimizer settings for `method` (seed still unset).
    pub fn method_config(&self, method: Method) -> Result<OptimizerConfig> {
        let mut value = serde_json::to_value(&self.optimizer)?;
        if let Some(patch) = self.overrides.get(&method) {
            let serde_json::Value::Object(fields) = patch else {
                return Err(Error::Config(format!("overrides.{method}: expected an object")));
            };
            let target = value.as_object_mut().expect("optimizer serializes to an object");
            for (key, v) in fields {
                if key == "method" {
                    return Err(Error::Config(format!("overrides.{method}: method cannot be overridden")));
                }
                target.insert(key.clone(), v.clone());
            }
        }
        let mut config: OptimizerConfig =
            serde_json::from_value(value).map_err(|e| Error::Config(format!("overrides.{method}: {e}")))?;
        config.method = method;
        Ok(config)
    }

    pub fn run_seed(&self, run: usize) -> u64 {
        self.master_seed.wrapping_add(run as u64)
    }
}
