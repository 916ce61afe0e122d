//! Plain gradient descent on set scalarizations and on independent
//! single-solution baselines.

use crate::error::{Error, Result};
use crate::metrics::{per_objective_best, worst_and_average};
use crate::model::{evaluate_with_gradients_into, ObjectiveGradients, ObjectiveMatrix, PreferenceVector, Problem, SolutionSet};
use crate::problems::sample_preference;
use crate::scalarize::{ls_value_grad, stch_set_value_grad, stch_value_grad, tch_set_value_subgrad, tch_value_subgrad};
use crate::seed::{stream_rng, Stream};

use super::{Checkpoint, Method, OptimizerConfig, Trace};

fn divergence(method: Method, iteration: usize, detail: impl Into<String>) -> Error {
    Error::Divergence {
        method: method.to_string(),
        iteration,
        detail: detail.into(),
    }
}

fn checkpoint(iteration: usize, value: f64, f: &ObjectiveMatrix) -> Result<Checkpoint> {
    let best = per_objective_best(f)?;
    let (worst, average) = worst_and_average(&best)?;
    Ok(Checkpoint {
        iteration,
        value,
        worst,
        average,
    })
}

fn check_init<P: Problem + ?Sized>(problem: &P, init: &SolutionSet, config: &OptimizerConfig) -> Result<()> {
    crate::error::check_len("solution dimension", problem.dim(), init.dim())?;
    crate::error::check_finite("initial solutions", init.as_flat())?;
    config.validate(problem.num_objectives())
}

/// Algorithm 1: `X <- X - eta_t grad g(X)` for TCH-Set (subgradient) or
/// STCH-Set (with the configured smoothing schedule).
pub fn run_set_descent<P: Problem + ?Sized>(
    problem: &P,
    init: &SolutionSet,
    config: &OptimizerConfig,
) -> Result<(SolutionSet, Trace)> {
    if !config.method.is_set_scalarization() {
        return Err(Error::Config(format!("{} is not a set scalarization", config.method)));
    }
    check_init(problem, init, config)?;
    let m = problem.num_objectives();
    let lambda = config.preference.clone().unwrap_or_else(|| PreferenceVector::uniform(m));
    let z = problem.ideal_point().to_vec();
    crate::error::check_len("ideal point", m, z.len())?;

    let mut x = init.clone();
    let mut values = Vec::new();
    let mut grads = ObjectiveGradients::zeros(m, x.len(), x.dim());
    let mut trace = Trace::new();
    let total = config.iterations;
    for t in 0..=total {
        evaluate_with_gradients_into(problem, &x, &mut values, &mut grads)?;
        let f = ObjectiveMatrix::new(m, x.len(), std::mem::take(&mut values))?;
        if !f.is_finite() {
            return Err(divergence(config.method, t, "objective value is not finite"));
        }
        let out = match config.method {
            Method::TchSet => tch_set_value_subgrad(&f, &grads, &lambda, &z)?,
            _ => stch_set_value_grad(&f, &grads, &lambda, &z, &config.smoothing.at(t))?,
        };
        if !out.value.is_finite() {
            return Err(divergence(config.method, t, "scalarization value is not finite"));
        }
        if t == total || config.records(t) {
            trace.push(checkpoint(t, out.value, &f)?);
        }
        values = f.into_values();
        if t == total {
            break;
        }
        let eta = config.step(t);
        for k in 0..x.len() {
            for (xi, gi) in x.solution_mut(k).iter_mut().zip(out.gradient_of(k)) {
                *xi -= eta * gi;
            }
        }
    }
    Ok((x, trace))
}

/// Preference of each baseline slot: forced, or drawn from the slot's own
/// stream so that slot `k` never depends on how many slots exist.
pub(crate) fn slot_preferences(m: usize, k: usize, config: &OptimizerConfig) -> Result<Vec<PreferenceVector>> {
    (0..k)
        .map(|slot| match &config.preference {
            Some(p) => Ok(p.clone()),
            None => {
                let mut rng = stream_rng(config.seed, Stream::Preference(slot));
                sample_preference(m, config.concentration, &mut rng)
            }
        })
        .collect()
}

/// Solves `K = init.len()` independent single-solution problems (LS, TCH or
/// STCH), one per slot, each with its own preference and starting point.
/// Slots advance in lockstep so checkpoints describe the whole set.
pub fn run_baseline_scalarization<P: Problem + ?Sized>(
    problem: &P,
    init: &SolutionSet,
    config: &OptimizerConfig,
) -> Result<(SolutionSet, Trace)> {
    if !config.method.is_single_solution() {
        return Err(Error::Config(format!("{} is not a single-solution scalarization", config.method)));
    }
    check_init(problem, init, config)?;
    let (m, k, n) = (problem.num_objectives(), init.len(), init.dim());
    let prefs = slot_preferences(m, k, config)?;
    let z = problem.ideal_point().to_vec();
    crate::error::check_len("ideal point", m, z.len())?;

    let mut slots: Vec<SolutionSet> = (0..k)
        .map(|s| SolutionSet::from_flat(1, n, init.solution(s).to_vec()))
        .collect::<Result<_>>()?;
    let mut values = vec![Vec::new(); k];
    let mut grads: Vec<ObjectiveGradients> = (0..k).map(|_| ObjectiveGradients::zeros(m, 1, n)).collect();
    let mut joint = vec![0.0; m * k];
    let mut trace = Trace::new();
    let total = config.iterations;
    for t in 0..=total {
        let record = t == total || config.records(t);
        let mut value_sum = 0.0;
        let eta = config.step(t);
        for s in 0..k {
            evaluate_with_gradients_into(problem, &slots[s], &mut values[s], &mut grads[s])?;
            let f = ObjectiveMatrix::new(m, 1, std::mem::take(&mut values[s]))?;
            if !f.is_finite() {
                return Err(divergence(config.method, t, format!("slot {s}: objective value is not finite")));
            }
            let out = match config.method {
                Method::Ls => ls_value_grad(&f, &grads[s], &prefs[s])?,
                Method::Tch => tch_value_subgrad(&f, &grads[s], &prefs[s], &z)?,
                _ => stch_value_grad(&f, &grads[s], &prefs[s], &z, config.smoothing.at(t).outer)?,
            };
            if !out.value.is_finite() {
                return Err(divergence(config.method, t, format!("slot {s}: scalarization value is not finite")));
            }
            value_sum += out.value;
            if record {
                for i in 0..m {
                    joint[i * k + s] = f.get(i, 0);
                }
            }
            values[s] = f.into_values();
            if t < total {
                for (xi, gi) in slots[s].solution_mut(0).iter_mut().zip(out.gradient_of(0)) {
                    *xi -= eta * gi;
                }
            }
        }
        if record {
            let f = ObjectiveMatrix::new(m, k, joint.clone())?;
            trace.push(checkpoint(t, value_sum / k as f64, &f)?);
        }
    }
    let flat: Vec<f64> = slots.iter().flat_map(|s| s.as_flat().iter().copied()).collect();
    Ok((SolutionSet::from_flat(k, n, flat)?, trace))
}
