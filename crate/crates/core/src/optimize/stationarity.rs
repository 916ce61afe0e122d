//! Pareto-stationarity diagnostics for STCH-Set solutions.

use crate::error::Result;
use crate::metrics::min_norm_convex_combination;
use crate::model::{evaluate_with_gradients, PreferenceVector, Problem, Smoothing, SolutionSet};
use crate::scalarize::stch_set_value_grad;

#[derive(Debug, Clone, PartialEq)]
pub struct SolutionStationarity {
    /// `|grad_{x^(k)} STCH-Set|`.
    pub gradient_norm: f64,
    /// `sum_i w_ik`, the mass the smooth set scalarization puts on solution `k`.
    pub weight_mass: f64,
    /// `|sum_i wbar_ik grad f_i(x^(k))|` with `wbar` the weights normalized
    /// onto the simplex.
    pub weighted_residual: f64,
    /// Min-norm convex combination of all objective gradients at `x^(k)`.
    pub min_norm_residual: f64,
}

/// Per-solution stationarity report at `set` under `smoothing`.
pub fn stationarity_report<P: Problem + ?Sized>(
    problem: &P,
    set: &SolutionSet,
    lambda: &PreferenceVector,
    smoothing: &Smoothing,
    min_norm_iters: usize,
) -> Result<Vec<SolutionStationarity>> {
    let (f, grads) = evaluate_with_gradients(problem, set)?;
    let out = stch_set_value_grad(&f, &grads, lambda, problem.ideal_point(), smoothing)?;
    let weights = out.weights.as_ref().expect("smooth set scalarization reports weights");
    let (m, n) = (problem.num_objectives(), set.dim());
    (0..set.len())
        .map(|k| {
            let g = out.gradient_of(k);
            let gradient_norm = g.iter().map(|v| v * v).sum::<f64>().sqrt();
            let weight_mass: f64 = (0..m).map(|i| weights.weight(i, k)).sum();
            let wbar = weights.normalized_column(k);
            let mut combo = vec![0.0; n];
            for (i, w) in wbar.iter().enumerate() {
                for (c, gi) in combo.iter_mut().zip(grads.get(i, k)) {
                    *c += w * gi;
                }
            }
            let all: Vec<Vec<f64>> = (0..m).map(|i| grads.get(i, k).to_vec()).collect();
            let min_norm = min_norm_convex_combination(&all, min_norm_iters)?;
            Ok(SolutionStationarity {
                gradient_norm,
                weight_mass,
                weighted_residual: combo.iter().map(|v| v * v).sum::<f64>().sqrt(),
                min_norm_residual: min_norm.residual_norm,
            })
        })
        .collect()
}
