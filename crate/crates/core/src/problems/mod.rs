//! Seeded synthetic benchmark families and preference sampling.
//!
//! Every family has objectives bounded below by 0, so the ideal point is
//! `z* = (-eps, ..., -eps)` with a small positive `eps`.

mod mlp;
mod preferences;
mod quadratic;
mod regression;

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::Problem;

pub use mlp::MlpParams;
pub use preferences::{sample_preference, sample_preferences, Concentration};
pub use quadratic::{gen_quadratics, QuadraticProblem, QuadraticProblemSpec, CURVATURE_RIDGE};
pub use regression::{
    gen_mixed_linear, gen_mixed_nonlinear, MixedLinearProblem, MixedNonlinearProblem,
    MixedRegressionSpec, RegressionData, DEFAULT_RIDGE,
};

pub fn default_ideal_epsilon() -> f64 {
    0.1
}

pub fn ideal_point(m: usize, epsilon: f64) -> Vec<f64> {
    vec![-epsilon; m]
}

/// Serializable description of a benchmark, sufficient to regenerate it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum ProblemSpec {
    Quadratic(QuadraticProblemSpec),
    MixedLinear(MixedRegressionSpec),
    MixedNonlinear(MixedRegressionSpec),
}

impl ProblemSpec {
    pub fn family(&self) -> &'static str {
        match self {
            ProblemSpec::Quadratic(_) => "quadratic",
            ProblemSpec::MixedLinear(_) => "mixed_linear",
            ProblemSpec::MixedNonlinear(_) => "mixed_nonlinear",
        }
    }

    pub fn seed(&self) -> u64 {
        match self {
            ProblemSpec::Quadratic(s) => s.seed,
            ProblemSpec::MixedLinear(s) | ProblemSpec::MixedNonlinear(s) => s.seed,
        }
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        let mut out = self.clone();
        match &mut out {
            ProblemSpec::Quadratic(s) => s.seed = seed,
            ProblemSpec::MixedLinear(s) | ProblemSpec::MixedNonlinear(s) => s.seed = seed,
        }
        out
    }

    /// Fills an unset ground-truth count with `k` (regression families).
    pub fn with_default_k_true(&self, k: usize) -> Self {
        let mut out = self.clone();
        if let ProblemSpec::MixedLinear(s) | ProblemSpec::MixedNonlinear(s) = &mut out {
            s.k_true.get_or_insert(k);
        }
        out
    }

    pub fn num_objectives(&self) -> usize {
        match self {
            ProblemSpec::Quadratic(s) => s.m,
            ProblemSpec::MixedLinear(s) | ProblemSpec::MixedNonlinear(s) => s.m,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::Config(format!("{}: {msg}", self.family())));
        match self {
            ProblemSpec::Quadratic(s) => {
                if s.m == 0 || s.n == 0 {
                    return bad("m and n must be at least 1");
                }
                check_epsilon(s.ideal_epsilon)
            }
            ProblemSpec::MixedLinear(s) | ProblemSpec::MixedNonlinear(s) => {
                if s.m == 0 || s.d == 0 || s.hidden == 0 {
                    return bad("m, d and hidden must be at least 1");
                }
                match s.k_true {
                    None => return bad("k_true is not set"),
                    Some(0) => return bad("k_true must be at least 1"),
                    Some(_) => {}
                }
                if !(s.sigma >= 0.0 && s.sigma.is_finite()) {
                    return bad("sigma must be finite and nonnegative");
                }
                if !(s.beta >= 0.0 && s.beta.is_finite()) {
                    return bad("beta must be finite and nonnegative");
                }
                check_epsilon(s.ideal_epsilon)
            }
        }
    }

    pub fn generate(&self) -> Result<BenchmarkProblem> {
        self.validate()?;
        Ok(match self {
            ProblemSpec::Quadratic(s) => BenchmarkProblem::Quadratic(gen_quadratics(s)),
            ProblemSpec::MixedLinear(s) => BenchmarkProblem::MixedLinear(gen_mixed_linear(s)),
            ProblemSpec::MixedNonlinear(s) => BenchmarkProblem::MixedNonlinear(gen_mixed_nonlinear(s)),
        })
    }
}

fn check_epsilon(eps: f64) -> Result<()> {
    if eps > 0.0 && eps.is_finite() {
        Ok(())
    } else {
        Err(Error::Config(format!("ideal_epsilon must be positive, got {eps}")))
    }
}

/// A generated benchmark of any family.
#[derive(Debug, Clone)]
pub enum BenchmarkProblem {
    Quadratic(QuadraticProblem),
    MixedLinear(MixedLinearProblem),
    MixedNonlinear(MixedNonlinearProblem),
}

macro_rules! dispatch {
    ($self:ident, $p:ident => $body:expr) => {
        match $self {
            BenchmarkProblem::Quadratic($p) => $body,
            BenchmarkProblem::MixedLinear($p) => $body,
            BenchmarkProblem::MixedNonlinear($p) => $body,
        }
    };
}

impl BenchmarkProblem {
    pub fn regression_data(&self) -> Option<(&RegressionData, usize)> {
        match self {
            BenchmarkProblem::Quadratic(_) => None,
            BenchmarkProblem::MixedLinear(p) => Some((p.data(), p.spec().d)),
            BenchmarkProblem::MixedNonlinear(p) => Some((p.data(), p.spec().d)),
        }
    }

    /// Writes the raw `(a, b)` pairs of a regression benchmark as CSV.
    pub fn write_data_csv<W: Write>(&self, writer: W) -> Result<()> {
        match self.regression_data() {
            Some((data, d)) => data.write_csv(d, writer),
            None => Err(Error::Config("quadratic benchmarks carry no raw data".into())),
        }
    }
}

impl Problem for BenchmarkProblem {
    fn num_objectives(&self) -> usize {
        dispatch!(self, p => p.num_objectives())
    }

    fn dim(&self) -> usize {
        dispatch!(self, p => p.dim())
    }

    fn value(&self, i: usize, x: &[f64]) -> f64 {
        dispatch!(self, p => p.value(i, x))
    }

    fn gradient_into(&self, i: usize, x: &[f64], out: &mut [f64]) {
        dispatch!(self, p => p.gradient_into(i, x, out))
    }

    fn value_and_gradient(&self, i: usize, x: &[f64], out: &mut [f64]) -> f64 {
        dispatch!(self, p => p.value_and_gradient(i, x, out))
    }

    fn ideal_point(&self) -> &[f64] {
        dispatch!(self, p => p.ideal_point())
    }

    fn descriptor(&self) -> String {
        dispatch!(self, p => p.descriptor())
    }
}

#[cfg(test)]
pub(crate) mod testing {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;

    use crate::model::Problem;

    pub fn central_difference<P: Problem + ?Sized>(p: &P, i: usize, x: &[f64], h: f64) -> Vec<f64> {
        let mut probe = x.to_vec();
        (0..x.len())
            .map(|j| {
                let step = h * x[j].abs().max(1.0);
                probe[j] = x[j] + step;
                let up = p.value(i, &probe);
                probe[j] = x[j] - step;
                let down = p.value(i, &probe);
                probe[j] = x[j];
                (up - down) / (2.0 * step)
            })
            .collect()
    }

    pub fn relative_error(analytic: &[f64], numeric: &[f64]) -> f64 {
        let diff: f64 = analytic.iter().zip(numeric).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
        let scale: f64 = numeric.iter().map(|v| v * v).sum::<f64>().sqrt();
        diff / scale.max(1e-8)
    }

    /// Compares analytic gradients of every objective with central
    /// differences at `points` standard-normal points.
    pub fn assert_gradients_match<P: Problem>(p: &P, points: usize, tol: f64, seed: u64) {
        assert_gradients_match_where(p, points, tol, seed, |_, _| true);
    }

    /// As [`assert_gradients_match`], skipping `(objective, point)` pairs
    /// rejected by `accept` (used to stay away from nondifferentiable kinks).
    pub fn assert_gradients_match_where<P: Problem>(
        p: &P,
        points: usize,
        tol: f64,
        seed: u64,
        accept: impl Fn(usize, &[f64]) -> bool,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut checked = 0;
        for _ in 0..points {
            let x: Vec<f64> = (0..p.dim()).map(|_| rng.sample(StandardNormal)).collect();
            for i in 0..p.num_objectives() {
                if !accept(i, &x) {
                    continue;
                }
                let numeric = central_difference(p, i, &x, 1e-6);
                let analytic = p.gradient(i, &x);
                let err = relative_error(&analytic, &numeric);
                assert!(err <= tol, "objective {i}: relative error {err:e} > {tol:e}");
                checked += 1;
            }
        }
        assert!(checked > 0, "no gradient was checked");
    }
}
