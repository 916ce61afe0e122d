//! Reference implementations used as test oracles. They follow the textbook
//! definitions with different arithmetic from the library code paths.

#![allow(dead_code)]

use fewformany::model::{ObjectiveMatrix, Problem, SolutionSet};
use rand::Rng;

/// `log sum exp(v)` as `top + ln(1 + sum_{j != top} exp(v_j - top))`, summing
/// the small terms in ascending order.
pub fn log_sum_exp(v: &[f64]) -> f64 {
    let mut s = v.to_vec();
    s.sort_by(|a, b| b.total_cmp(a));
    let top = s[0];
    let mut rest: Vec<f64> = s[1..].iter().map(|x| (x - top).exp()).collect();
    rest.sort_by(f64::total_cmp);
    top + rest.iter().sum::<f64>().ln_1p()
}

pub fn smax(v: &[f64], mu: f64) -> f64 {
    let scaled: Vec<f64> = v.iter().map(|x| x / mu).collect();
    mu * log_sum_exp(&scaled)
}

pub fn smin(v: &[f64], mu: f64) -> f64 {
    let scaled: Vec<f64> = v.iter().map(|x| -x / mu).collect();
    -mu * log_sum_exp(&scaled)
}

/// `max_i lambda_i (min_k F[i][k] - z_i)`.
pub fn tch_set(f: &ObjectiveMatrix, lambda: &[f64], z: &[f64]) -> f64 {
    (0..f.num_objectives())
        .map(|i| lambda[i] * (f.row(i).iter().copied().fold(f64::INFINITY, f64::min) - z[i]))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// `smax_mu_i lambda_i (smin_{mu_i} F[i][.] - z_i)`.
pub fn stch_set(f: &ObjectiveMatrix, lambda: &[f64], z: &[f64], mu: f64, mu_inner: &[f64]) -> f64 {
    let terms: Vec<f64> = (0..f.num_objectives())
        .map(|i| lambda[i] * (smin(f.row(i), mu_inner[i]) - z[i]))
        .collect();
    smax(&terms, mu)
}

pub fn random_simplex<R: Rng>(m: usize, rng: &mut R) -> Vec<f64> {
    let raw: Vec<f64> = (0..m).map(|_| -rng.random_range(1e-3f64..1.0).ln()).collect();
    let s: f64 = raw.iter().sum();
    raw.iter().map(|x| x / s).collect()
}

pub fn random_matrix<R: Rng>(m: usize, k: usize, scale: f64, rng: &mut R) -> ObjectiveMatrix {
    let values = (0..m * k).map(|_| rng.random_range(-scale..scale)).collect();
    ObjectiveMatrix::new(m, k, values).unwrap()
}

/// Central differences of `value` with respect to every coordinate of `set`.
pub fn central_difference_set<P, F>(problem: &P, set: &SolutionSet, value: F) -> Vec<f64>
where
    P: Problem,
    F: Fn(&ObjectiveMatrix) -> f64,
{
    let eval = |s: &SolutionSet| value(&fewformany::evaluate_matrix(problem, s).unwrap());
    let mut out = Vec::with_capacity(set.as_flat().len());
    for j in 0..set.as_flat().len() {
        let x = set.as_flat()[j];
        let h = 1e-6 * x.abs().max(1.0);
        let mut plus = set.clone();
        plus.as_flat_mut()[j] = x + h;
        let mut minus = set.clone();
        minus.as_flat_mut()[j] = x - h;
        out.push((eval(&plus) - eval(&minus)) / (2.0 * h));
    }
    out
}

/// Two-sided rank-sum p-value by enumerating every `na`-subset of the pooled
/// midranks.
pub fn rank_sum_p_enumerated(a: &[f64], b: &[f64]) -> f64 {
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let n = pooled.len();
    let ranks: Vec<f64> = pooled
        .iter()
        .map(|&x| {
            let below = pooled.iter().filter(|&&y| y < x).count() as f64;
            let equal = pooled.iter().filter(|&&y| y == x).count() as f64;
            below + (equal + 1.0) / 2.0
        })
        .collect();
    let na = a.len();
    let centre = na as f64 * (n as f64 + 1.0) / 2.0;
    let observed = (ranks[..na].iter().sum::<f64>() - centre).abs();
    let (mut hits, mut total) = (0u64, 0u64);
    let mut idx: Vec<usize> = (0..na).collect();
    loop {
        let s: f64 = idx.iter().map(|&i| ranks[i]).sum();
        total += 1;
        if (s - centre).abs() >= observed - 1e-9 {
            hits += 1;
        }
        // next combination in lexicographic order
        let mut i = na;
        loop {
            if i == 0 {
                return hits as f64 / total as f64;
            }
            i -= 1;
            if idx[i] != i + n - na {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..na {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
