//! Random strongly convex quadratics with known zero minima.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::model::Problem;
use crate::seed::{stream_rng, Stream};

use super::{default_ideal_epsilon, ideal_point};

/// Ridge added to every curvature matrix so each objective is strongly convex.
pub const CURVATURE_RIDGE: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadraticProblemSpec {
    pub m: usize,
    #[serde(default = "default_dim")]
    pub n: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_ideal_epsilon")]
    pub ideal_epsilon: f64,
}

fn default_dim() -> usize {
    10
}

impl QuadraticProblemSpec {
    pub fn new(m: usize, n: usize, seed: u64) -> Self {
        Self {
            m,
            n,
            seed,
            ideal_epsilon: default_ideal_epsilon(),
        }
    }
}

/// `f_i(x) = (x - c_i)^T A_i (x - c_i)` with `A_i = B_i^T B_i + 0.1 I`,
/// `B_i` and `c_i` standard normal. Each objective attains 0 at `c_i`.
#[derive(Debug, Clone)]
pub struct QuadraticProblem {
    spec: QuadraticProblemSpec,
    /// `m` row-major `n x n` symmetric positive definite matrices.
    curvature: Vec<f64>,
    centers: Vec<f64>,
    ideal: Vec<f64>,
}

pub fn gen_quadratics(spec: &QuadraticProblemSpec) -> QuadraticProblem {
    assert!(spec.m >= 1 && spec.n >= 1, "quadratics need m, n >= 1");
    let (m, n) = (spec.m, spec.n);
    let mut rng = stream_rng(spec.seed, Stream::Problem);
    let mut curvature = vec![0.0; m * n * n];
    let mut centers = vec![0.0; m * n];
    let mut b = vec![0.0; n * n];
    for i in 0..m {
        b.iter_mut().for_each(|v| *v = rng.sample(StandardNormal));
        let a = &mut curvature[i * n * n..(i + 1) * n * n];
        for r in 0..n {
            for c in r..n {
                let dot: f64 = (0..n).map(|l| b[l * n + r] * b[l * n + c]).sum::<f64>();
                a[r * n + c] = dot;
                a[c * n + r] = dot;
            }
            a[r * n + r] += CURVATURE_RIDGE;
        }
        centers[i * n..(i + 1) * n]
            .iter_mut()
            .for_each(|v| *v = rng.sample(StandardNormal));
    }
    QuadraticProblem {
        ideal: ideal_point(m, spec.ideal_epsilon),
        spec: spec.clone(),
        curvature,
        centers,
    }
}

impl QuadraticProblem {
    pub fn spec(&self) -> &QuadraticProblemSpec {
        &self.spec
    }

    pub fn center(&self, i: usize) -> &[f64] {
        let n = self.spec.n;
        &self.centers[i * n..(i + 1) * n]
    }

    pub fn curvature(&self, i: usize) -> &[f64] {
        let n = self.spec.n;
        &self.curvature[i * n * n..(i + 1) * n * n]
    }

    /// Writes `A_i (x - c_i)` into `out` and returns `(x - c_i)^T A_i (x - c_i)`.
    #[inline]
    fn apply(&self, i: usize, x: &[f64], out: &mut [f64]) -> f64 {
        let n = self.spec.n;
        let a = self.curvature(i);
        let c = self.center(i);
        let mut value = 0.0;
        for r in 0..n {
            let row = &a[r * n..(r + 1) * n];
            let mut acc = 0.0;
            for l in 0..n {
                acc += row[l] * (x[l] - c[l]);
            }
            out[r] = acc;
            value += acc * (x[r] - c[r]);
        }
        value
    }
}

impl Problem for QuadraticProblem {
    fn num_objectives(&self) -> usize {
        self.spec.m
    }

    fn dim(&self) -> usize {
        self.spec.n
    }

    fn value(&self, i: usize, x: &[f64]) -> f64 {
        let mut scratch = vec![0.0; self.spec.n];
        self.apply(i, x, &mut scratch)
    }

    fn gradient_into(&self, i: usize, x: &[f64], out: &mut [f64]) {
        self.value_and_gradient(i, x, out);
    }

    fn value_and_gradient(&self, i: usize, x: &[f64], out: &mut [f64]) -> f64 {
        let value = self.apply(i, x, out);
        out.iter_mut().for_each(|g| *g *= 2.0);
        value
    }

    fn ideal_point(&self) -> &[f64] {
        &self.ideal
    }

    fn descriptor(&self) -> String {
        format!(
            "quadratic(m={}, n={}, seed={})",
            self.spec.m, self.spec.n, self.spec.seed
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::testing::assert_gradients_match;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn minimum_is_zero_at_each_center() {
        let p = gen_quadratics(&QuadraticProblemSpec::new(12, 6, 3));
        for i in 0..12 {
            let c = p.center(i).to_vec();
            assert_eq!(p.value(i, &c), 0.0);
            assert!(p.gradient(i, &c).iter().all(|&g| g == 0.0));
        }
    }

    #[test]
    fn values_are_nonnegative() {
        let p = gen_quadratics(&QuadraticProblemSpec::new(8, 10, 4));
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..1000 {
            let x: Vec<f64> = (0..10).map(|_| rng.random_range(-5.0..5.0)).collect();
            let i = rng.random_range(0..8);
            assert!(p.value(i, &x) >= 0.0);
        }
    }

    #[test]
    fn curvature_is_symmetric_with_ridge() {
        let p = gen_quadratics(&QuadraticProblemSpec::new(3, 5, 0));
        for i in 0..3 {
            let a = p.curvature(i);
            for r in 0..5 {
                assert!(a[r * 5 + r] >= CURVATURE_RIDGE);
                for c in 0..5 {
                    assert_eq!(a[r * 5 + c], a[c * 5 + r]);
                }
            }
        }
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let p = gen_quadratics(&QuadraticProblemSpec::new(5, 10, 1));
        assert_gradients_match(&p, 10, 1e-6, 21);
    }

    #[test]
    fn same_seed_same_problem() {
        let a = gen_quadratics(&QuadraticProblemSpec::new(4, 3, 77));
        let b = gen_quadratics(&QuadraticProblemSpec::new(4, 3, 77));
        let c = gen_quadratics(&QuadraticProblemSpec::new(4, 3, 78));
        assert_eq!(a.curvature, b.curvature);
        assert_eq!(a.centers, b.centers);
        assert_ne!(a.centers, c.centers);
    }
}
