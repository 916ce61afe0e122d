//! Sum-of-minimum baseline: k-means++ style seeding followed by Lloyd rounds
//! of assignment and per-group gradient descent.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::{per_objective_best, worst_and_average};
use crate::model::{evaluate_matrix, ObjectiveMatrix, Problem, SolutionSet};
use crate::seed::{stream_rng, Stream};

use super::{Checkpoint, Method, OptimizerConfig, Trace};

/// `(1/m) sum_i min_k F[i][k]`.
pub fn sum_of_min(f: &ObjectiveMatrix) -> Result<f64> {
    let best = per_objective_best(f)?;
    Ok(best.iter().sum::<f64>() / best.len() as f64)
}

/// Index drawn with probability proportional to `losses` (negative entries
/// count as zero). Falls back to uniform when no loss is positive.
pub fn sample_loss_proportional<R: Rng + ?Sized>(losses: &[f64], rng: &mut R) -> usize {
    assert!(!losses.is_empty(), "cannot sample from an empty loss vector");
    let total: f64 = losses.iter().map(|&l| l.max(0.0)).sum();
    if !(total > 0.0 && total.is_finite()) {
        return rng.random_range(0..losses.len());
    }
    let target = rng.random::<f64>() * total;
    let mut acc = 0.0;
    let mut last_positive = 0;
    for (i, &l) in losses.iter().enumerate() {
        let l = l.max(0.0);
        if l > 0.0 {
            acc += l;
            last_positive = i;
            if target < acc {
                return i;
            }
        }
    }
    last_positive
}

/// Runs `steps` gradient steps on `(1/|group|) sum_{i in group} f_i` at `x`.
fn descend_group<P: Problem + ?Sized>(
    problem: &P,
    group: &[usize],
    x: &mut [f64],
    steps: usize,
    config: &OptimizerConfig,
) -> Result<()> {
    let n = x.len();
    let mut g = vec![0.0; n];
    let mut total = vec![0.0; n];
    let scale = 1.0 / group.len() as f64;
    for step in 0..steps {
        total.iter_mut().for_each(|v| *v = 0.0);
        let mut value = 0.0;
        for &i in group {
            value += problem.value_and_gradient(i, x, &mut g);
            for (t, gi) in total.iter_mut().zip(&g) {
                *t += gi;
            }
        }
        if !value.is_finite() {
            return Err(Error::Divergence {
                method: Method::Som.to_string(),
                iteration: step,
                detail: "group objective is not finite".into(),
            });
        }
        let eta = config.step(step) * scale;
        for (xi, ti) in x.iter_mut().zip(&total) {
            *xi -= eta * ti;
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SomInit {
    pub solutions: SolutionSet,
    /// Objective each solution was fitted to, in order of selection.
    pub chosen: Vec<usize>,
}

/// Solution `j` starts at `init[j]` and is fitted to one objective: the first
/// uniformly at random, each later one with probability proportional to its
/// current best loss over the solutions fitted so far.
pub fn som_init<P: Problem + ?Sized>(problem: &P, init: &SolutionSet, config: &OptimizerConfig) -> Result<SomInit> {
    crate::error::check_len("solution dimension", problem.dim(), init.dim())?;
    let m = problem.num_objectives();
    let mut rng = stream_rng(config.seed, Stream::Som);
    let mut solutions = init.clone();
    let mut best = vec![f64::INFINITY; m];
    let mut chosen = Vec::with_capacity(init.len());
    for j in 0..init.len() {
        let i = if j == 0 {
            rng.random_range(0..m)
        } else {
            sample_loss_proportional(&best, &mut rng)
        };
        chosen.push(i);
        descend_group(problem, &[i], solutions.solution_mut(j), config.som.init_steps, config)?;
        let x = solutions.solution(j);
        for (l, b) in best.iter_mut().enumerate() {
            *b = b.min(problem.value(l, x));
        }
    }
    Ok(SomInit { solutions, chosen })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SomRound {
    pub round: usize,
    /// `(1/m) sum_i f_i(x^(c_i))` under the previous round's assignment.
    pub assigned_before: Option<f64>,
    /// The same quantity right after reassignment, i.e. the sum-of-minimum.
    pub assigned_after: f64,
    pub empty_groups: usize,
}

/// First index of the smallest entry.
fn argmin_first(row: &[f64]) -> usize {
    let mut best = 0;
    for (k, &v) in row.iter().enumerate() {
        if v < row[best] {
            best = k;
        }
    }
    best
}

pub fn som_optimize<P: Problem + ?Sized>(
    problem: &P,
    init: &SolutionSet,
    config: &OptimizerConfig,
) -> Result<(SolutionSet, Trace, Vec<SomRound>)> {
    config.validate(problem.num_objectives())?;
    let (m, k) = (problem.num_objectives(), init.len());
    let mut x = init.clone();
    let mut trace = Trace::new();
    let mut rounds = Vec::with_capacity(config.som.rounds);
    let mut assignment: Option<Vec<usize>> = None;
    let record = |trace: &mut Trace, iteration: usize, f: &ObjectiveMatrix| -> Result<()> {
        let best = per_objective_best(f)?;
        let (worst, average) = worst_and_average(&best)?;
        trace.push(Checkpoint {
            iteration,
            value: average,
            worst,
            average,
        });
        Ok(())
    };

    let mut f = evaluate_matrix(problem, &x)?;
    if !f.is_finite() {
        return Err(Error::NonFinite("SoM initial objective values"));
    }
    record(&mut trace, 0, &f)?;
    for round in 0..config.som.rounds {
        let before = assignment
            .as_ref()
            .map(|c| c.iter().enumerate().map(|(i, &kk)| f.get(i, kk)).sum::<f64>() / m as f64);
        let c: Vec<usize> = (0..m).map(|i| argmin_first(f.row(i))).collect();
        let after = c.iter().enumerate().map(|(i, &kk)| f.get(i, kk)).sum::<f64>() / m as f64;
        if let Some(b) = before {
            assert!(
                after <= b + 1e-12 * b.abs().max(1.0),
                "assignment increased the sum-of-minimum objective: {b} -> {after}"
            );
        }
        let mut groups = vec![Vec::new(); k];
        for (i, &kk) in c.iter().enumerate() {
            groups[kk].push(i);
        }
        let empty_groups = groups.iter().filter(|g| g.is_empty()).count();
        for (kk, group) in groups.iter().enumerate() {
            if !group.is_empty() {
                descend_group(problem, group, x.solution_mut(kk), config.som.update_steps, config)?;
            }
        }
        rounds.push(SomRound {
            round,
            assigned_before: before,
            assigned_after: after,
            empty_groups,
        });
        assignment = Some(c);
        f = evaluate_matrix(problem, &x)?;
        if !f.is_finite() {
            return Err(Error::Divergence {
                method: Method::Som.to_string(),
                iteration: round,
                detail: "objective value is not finite after the update step".into(),
            });
        }
        record(&mut trace, (round + 1) * config.som.update_steps, &f)?;
    }
    Ok((x, trace, rounds))
}
