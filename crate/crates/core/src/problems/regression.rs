//! Noisy mixed regression benchmarks: every data point is one objective and
//! was generated by one of `k_true` hidden ground-truth models.

use rand::Rng;
use rand_distr::{Distribution, Normal, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::model::Problem;
use crate::seed::{stream_rng, Stream};

use super::mlp::MlpParams;
use super::{default_ideal_epsilon, ideal_point};

pub const DEFAULT_RIDGE: f64 = 0.01;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MixedRegressionSpec {
    /// Number of data points, i.e. objectives.
    #[serde(default = "default_points")]
    pub m: usize,
    /// Feature dimension.
    #[serde(default = "default_features")]
    pub d: usize,
    /// Ground-truth model count. When absent, experiment drivers substitute
    /// the number of solutions `K`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_true: Option<usize>,
    pub sigma: f64,
    #[serde(default = "default_ridge")]
    pub beta: f64,
    /// Hidden width of the network models; ignored by the linear family.
    #[serde(default = "default_features")]
    pub hidden: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_ideal_epsilon")]
    pub ideal_epsilon: f64,
}

fn default_points() -> usize {
    1000
}

fn default_features() -> usize {
    10
}

fn default_ridge() -> f64 {
    DEFAULT_RIDGE
}

impl MixedRegressionSpec {
    pub fn new(m: usize, d: usize, k_true: usize, sigma: f64, seed: u64) -> Self {
        Self {
            m,
            d,
            k_true: Some(k_true),
            sigma,
            beta: DEFAULT_RIDGE,
            hidden: default_features(),
            seed,
            ideal_epsilon: default_ideal_epsilon(),
        }
    }

    /// Ground-truth count; panics if it was never set.
    pub fn k_true(&self) -> usize {
        self.k_true.expect("k_true must be set before generating data")
    }

    fn check(&self) {
        assert!(
            self.m >= 1 && self.d >= 1 && self.k_true.is_some_and(|k| k >= 1),
            "mixed regression needs m, d, k_true >= 1"
        );
        assert!(self.sigma >= 0.0, "noise level must be nonnegative");
    }
}

/// Sampled data shared by both regression families.
#[derive(Debug, Clone)]
pub struct RegressionData {
    /// `m x d` row-major features.
    pub features: Vec<f64>,
    pub targets: Vec<f64>,
    /// Ground-truth model index of each point.
    pub classes: Vec<usize>,
}

impl RegressionData {
    pub fn feature(&self, i: usize, d: usize) -> &[f64] {
        &self.features[i * d..(i + 1) * d]
    }

    pub fn write_csv<W: std::io::Write>(&self, d: usize, writer: W) -> crate::Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        let mut header = vec!["index".to_string(), "class".into(), "b".into()];
        header.extend((0..d).map(|j| format!("a{j}")));
        w.write_record(&header)?;
        for (i, (&b, &c)) in self.targets.iter().zip(&self.classes).enumerate() {
            let mut row = vec![i.to_string(), c.to_string(), format!("{b:e}")];
            row.extend(self.feature(i, d).iter().map(|v| format!("{v:e}")));
            w.write_record(&row)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Draws features, classes and noise, then asks `predict(class, a)` for the
/// noiseless target. Sampling order is fixed: truths (by the caller), then
/// all features, then all classes, then all noise.
fn sample_data<R: Rng>(
    spec: &MixedRegressionSpec,
    rng: &mut R,
    predict: impl Fn(usize, &[f64]) -> f64,
) -> RegressionData {
    let (m, d) = (spec.m, spec.d);
    let features: Vec<f64> = (0..m * d).map(|_| rng.sample(StandardNormal)).collect();
    let classes: Vec<usize> = (0..m).map(|_| rng.random_range(0..spec.k_true())).collect();
    let noise = Normal::new(0.0, spec.sigma).expect("sigma validated");
    let targets = (0..m)
        .map(|i| predict(classes[i], &features[i * d..(i + 1) * d]) + noise.sample(rng))
        .collect();
    RegressionData {
        features,
        targets,
        classes,
    }
}

/// `f_i(x) = 1/2 (a_i^T x - b_i)^2 + beta/2 |x|^2`.
#[derive(Debug, Clone)]
pub struct MixedLinearProblem {
    spec: MixedRegressionSpec,
    truths: Vec<Vec<f64>>,
    data: RegressionData,
    ideal: Vec<f64>,
}

pub fn gen_mixed_linear(spec: &MixedRegressionSpec) -> MixedLinearProblem {
    spec.check();
    let mut rng = stream_rng(spec.seed, Stream::Problem);
    let truths: Vec<Vec<f64>> = (0..spec.k_true())
        .map(|_| (0..spec.d).map(|_| rng.sample(StandardNormal)).collect())
        .collect();
    let data = sample_data(spec, &mut rng, |c, a| dot(a, &truths[c]));
    MixedLinearProblem {
        ideal: ideal_point(spec.m, spec.ideal_epsilon),
        spec: spec.clone(),
        truths,
        data,
    }
}

impl MixedLinearProblem {
    pub fn spec(&self) -> &MixedRegressionSpec {
        &self.spec
    }

    pub fn ground_truths(&self) -> &[Vec<f64>] {
        &self.truths
    }

    pub fn data(&self) -> &RegressionData {
        &self.data
    }

    #[inline]
    fn residual(&self, i: usize, x: &[f64]) -> f64 {
        dot(self.data.feature(i, self.spec.d), x) - self.data.targets[i]
    }
}

impl Problem for MixedLinearProblem {
    fn num_objectives(&self) -> usize {
        self.spec.m
    }

    fn dim(&self) -> usize {
        self.spec.d
    }

    fn value(&self, i: usize, x: &[f64]) -> f64 {
        let r = self.residual(i, x);
        0.5 * r * r + 0.5 * self.spec.beta * dot(x, x)
    }

    fn gradient_into(&self, i: usize, x: &[f64], out: &mut [f64]) {
        self.value_and_gradient(i, x, out);
    }

    fn value_and_gradient(&self, i: usize, x: &[f64], out: &mut [f64]) -> f64 {
        let a = self.data.feature(i, self.spec.d);
        let r = self.residual(i, x);
        let beta = self.spec.beta;
        for ((g, &aj), &xj) in out.iter_mut().zip(a).zip(x) {
            *g = r * aj + beta * xj;
        }
        0.5 * r * r + 0.5 * beta * dot(x, x)
    }

    fn ideal_point(&self) -> &[f64] {
        &self.ideal
    }

    fn descriptor(&self) -> String {
        format!(
            "mixed_linear(m={}, d={}, k_true={}, sigma={}, seed={})",
            self.spec.m, self.spec.d, self.spec.k_true(), self.spec.sigma, self.spec.seed
        )
    }
}

/// `f_i(x) = 1/2 (psi(a_i; x) - b_i)^2 + beta/2 |x|^2` with `psi` a one-hidden
/// layer ReLU network whose parameters are flattened into `x`.
#[derive(Debug, Clone)]
pub struct MixedNonlinearProblem {
    spec: MixedRegressionSpec,
    truths: Vec<MlpParams>,
    data: RegressionData,
    ideal: Vec<f64>,
}

pub fn gen_mixed_nonlinear(spec: &MixedRegressionSpec) -> MixedNonlinearProblem {
    spec.check();
    assert!(spec.hidden >= 1, "network needs at least one hidden unit");
    let mut rng = stream_rng(spec.seed, Stream::Problem);
    let truths: Vec<MlpParams> = (0..spec.k_true())
        .map(|_| MlpParams::standard_normal(spec.d, spec.hidden, &mut rng))
        .collect();
    let data = sample_data(spec, &mut rng, |c, a| truths[c].forward(a));
    MixedNonlinearProblem {
        ideal: ideal_point(spec.m, spec.ideal_epsilon),
        spec: spec.clone(),
        truths,
        data,
    }
}

impl MixedNonlinearProblem {
    pub fn spec(&self) -> &MixedRegressionSpec {
        &self.spec
    }

    pub fn ground_truths(&self) -> &[MlpParams] {
        &self.truths
    }

    pub fn data(&self) -> &RegressionData {
        &self.data
    }
}

impl Problem for MixedNonlinearProblem {
    fn num_objectives(&self) -> usize {
        self.spec.m
    }

    fn dim(&self) -> usize {
        MlpParams::flat_len(self.spec.d, self.spec.hidden)
    }

    fn value(&self, i: usize, x: &[f64]) -> f64 {
        let (d, h) = (self.spec.d, self.spec.hidden);
        let psi = MlpParams::forward_flat(x, d, h, self.data.feature(i, d));
        let r = psi - self.data.targets[i];
        0.5 * r * r + 0.5 * self.spec.beta * dot(x, x)
    }

    fn gradient_into(&self, i: usize, x: &[f64], out: &mut [f64]) {
        self.value_and_gradient(i, x, out);
    }

    fn value_and_gradient(&self, i: usize, x: &[f64], out: &mut [f64]) -> f64 {
        let (d, h) = (self.spec.d, self.spec.hidden);
        let psi = MlpParams::forward_backward_flat(x, d, h, self.data.feature(i, d), out);
        let r = psi - self.data.targets[i];
        let beta = self.spec.beta;
        for (g, &xj) in out.iter_mut().zip(x) {
            *g = r * *g + beta * xj;
        }
        0.5 * r * r + 0.5 * beta * dot(x, x)
    }

    fn ideal_point(&self) -> &[f64] {
        &self.ideal
    }

    fn descriptor(&self) -> String {
        format!(
            "mixed_nonlinear(m={}, d={}, hidden={}, k_true={}, sigma={}, seed={})",
            self.spec.m, self.spec.d, self.spec.hidden, self.spec.k_true(), self.spec.sigma, self.spec.seed
        )
    }
}

#[inline]
fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
