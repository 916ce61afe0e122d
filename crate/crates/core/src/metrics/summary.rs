use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::ObjectiveMatrix;

/// `min_k F[i][k]` for every objective `i`.
pub fn per_objective_best(f: &ObjectiveMatrix) -> Result<Vec<f64>> {
    if !f.is_finite() {
        return Err(Error::NonFinite("objective matrix"));
    }
    Ok((0..f.num_objectives())
        .map(|i| f.row(i).iter().copied().fold(f64::INFINITY, f64::min))
        .collect())
}

/// `(max, mean)` of a per-objective best vector.
pub fn worst_and_average(best: &[f64]) -> Result<(f64, f64)> {
    if best.is_empty() {
        return Err(Error::Empty("per-objective best vector"));
    }
    let worst = best.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let average = best.iter().sum::<f64>() / best.len() as f64;
    Ok((worst, average))
}

/// Outcome of one optimization run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub method: String,
    pub seed: u64,
    pub worst: f64,
    pub average: f64,
    pub per_objective_best: Vec<f64>,
    pub wall_time: f64,
}

impl RunRecord {
    pub fn from_matrix(method: impl Into<String>, seed: u64, f: &ObjectiveMatrix, wall_time: f64) -> Result<Self> {
        let best = per_objective_best(f)?;
        let (worst, average) = worst_and_average(&best)?;
        Ok(Self {
            method: method.into(),
            seed,
            worst,
            average,
            per_objective_best: best,
            wall_time,
        })
    }
}
