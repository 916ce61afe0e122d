//! Shared domain types: objective bundles, solution sets, preferences,
//! smoothing configuration and batched evaluation.
//!
//! Matrices indexed by objective and solution are stored row-major by
//! objective. Gradients with respect to a whole solution set are flattened
//! solution-major: solution `k` occupies `k * n .. (k + 1) * n`.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{check_finite, check_len, Error, Result};

/// A bundle of `m` differentiable objectives over `R^n`.
///
/// Implementations must be immutable after construction so that a problem can
/// be evaluated from several worker threads at once.
pub trait Problem: Send + Sync {
    fn num_objectives(&self) -> usize;

    fn dim(&self) -> usize;

    fn value(&self, i: usize, x: &[f64]) -> f64;

    /// Writes the gradient of objective `i` at `x` into `out` (length `dim()`).
    fn gradient_into(&self, i: usize, x: &[f64], out: &mut [f64]);

    /// Value and gradient in one pass. Override when the two share work.
    fn value_and_gradient(&self, i: usize, x: &[f64], out: &mut [f64]) -> f64 {
        self.gradient_into(i, x, out);
        self.value(i, x)
    }

    fn gradient(&self, i: usize, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim()];
        self.gradient_into(i, x, &mut out);
        out
    }

    /// Ideal point `z*`, one entry per objective, slightly below each
    /// objective's known lower bound.
    fn ideal_point(&self) -> &[f64];

    /// Human-readable provenance (generator name and seed).
    fn descriptor(&self) -> String;
}

/// `K` candidate solutions of common dimension `n`, stored contiguously.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<f64>>", into = "Vec<Vec<f64>>")]
pub struct SolutionSet {
    n: usize,
    data: Vec<f64>,
}

impl SolutionSet {
    pub fn from_solutions(solutions: Vec<Vec<f64>>) -> Result<Self> {
        let first = solutions.first().ok_or(Error::Empty("solution set"))?;
        let n = first.len();
        if n == 0 {
            return Err(Error::Empty("solution dimension"));
        }
        let mut data = Vec::with_capacity(n * solutions.len());
        for s in &solutions {
            check_len("solution set", n, s.len())?;
            data.extend_from_slice(s);
        }
        Ok(Self { n, data })
    }

    pub fn from_flat(k: usize, n: usize, data: Vec<f64>) -> Result<Self> {
        if k == 0 || n == 0 {
            return Err(Error::Empty("solution set"));
        }
        check_len("flat solution set", k * n, data.len())?;
        Ok(Self { n, data })
    }

    pub fn zeros(k: usize, n: usize) -> Self {
        assert!(k > 0 && n > 0, "solution set needs k >= 1 and n >= 1");
        Self {
            n,
            data: vec![0.0; k * n],
        }
    }

    /// Entries drawn i.i.d. from the standard normal distribution.
    pub fn standard_normal<R: Rng + ?Sized>(k: usize, n: usize, rng: &mut R) -> Self {
        let mut set = Self::zeros(k, n);
        for v in &mut set.data {
            *v = rng.sample(StandardNormal);
        }
        set
    }

    pub fn len(&self) -> usize {
        self.data.len() / self.n
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn solution(&self, k: usize) -> &[f64] {
        &self.data[k * self.n..(k + 1) * self.n]
    }

    pub fn solution_mut(&mut self, k: usize) -> &mut [f64] {
        &mut self.data[k * self.n..(k + 1) * self.n]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.n)
    }

    pub fn as_flat(&self) -> &[f64] {
        &self.data
    }

    pub fn as_flat_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn to_vecs(&self) -> Vec<Vec<f64>> {
        self.iter().map(<[f64]>::to_vec).collect()
    }
}

impl TryFrom<Vec<Vec<f64>>> for SolutionSet {
    type Error = Error;

    fn try_from(value: Vec<Vec<f64>>) -> Result<Self> {
        Self::from_solutions(value)
    }
}

impl From<SolutionSet> for Vec<Vec<f64>> {
    fn from(value: SolutionSet) -> Self {
        value.to_vecs()
    }
}

/// Tolerance on the simplex constraint for preference vectors.
pub const SIMPLEX_TOL: f64 = 1e-12;

/// Nonnegative weights over the `m` objectives, summing to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct PreferenceVector(Vec<f64>);

impl PreferenceVector {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Empty("preference vector"));
        }
        check_finite("preference vector", &weights)?;
        if weights.iter().any(|&w| w < 0.0) {
            return Err(Error::InvalidParameter(
                "preference entries must be nonnegative".into(),
            ));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > SIMPLEX_TOL * weights.len().max(1) as f64 {
            return Err(Error::InvalidParameter(format!(
                "preference entries must sum to 1, got {sum}"
            )));
        }
        Ok(Self(weights))
    }

    /// Rescales nonnegative weights onto the simplex.
    pub fn normalized(mut weights: Vec<f64>) -> Result<Self> {
        let sum: f64 = weights.iter().sum();
        if !(sum > 0.0 && sum.is_finite()) {
            return Err(Error::InvalidParameter(
                "cannot normalize a preference with zero or non-finite mass".into(),
            ));
        }
        weights.iter_mut().for_each(|w| *w /= sum);
        Self::new(weights)
    }

    pub fn uniform(m: usize) -> Self {
        assert!(m > 0, "uniform preference needs m >= 1");
        Self(vec![1.0 / m as f64; m])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.0.iter().all(|&w| w > 0.0)
    }
}

impl TryFrom<Vec<f64>> for PreferenceVector {
    type Error = Error;

    fn try_from(value: Vec<f64>) -> Result<Self> {
        Self::new(value)
    }
}

impl From<PreferenceVector> for Vec<f64> {
    fn from(value: PreferenceVector) -> Self {
        value.0
    }
}

/// How the smoothing parameters evolve over descent iterations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SmoothingSchedule {
    Fixed,
    /// `mu(t) = mu0 * max(exp(-rate * t), floor)`; the floor is relative to
    /// each starting value `mu0`.
    ExponentialDecay { rate: f64, floor: f64 },
}

/// Per-objective inner smoothing parameters `mu_i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InnerSmoothing {
    /// One value shared by every objective.
    Shared(f64),
    PerObjective(Vec<f64>),
}

impl InnerSmoothing {
    #[inline]
    pub fn get(&self, i: usize) -> f64 {
        match self {
            InnerSmoothing::Shared(mu) => *mu,
            InnerSmoothing::PerObjective(mus) => mus[i],
        }
    }

    fn check(&self, m: usize) -> Result<()> {
        match self {
            InnerSmoothing::Shared(mu) => check_positive("inner smoothing", *mu),
            InnerSmoothing::PerObjective(mus) => {
                check_len("inner smoothing", m, mus.len())?;
                mus.iter()
                    .try_for_each(|&mu| check_positive("inner smoothing", mu))
            }
        }
    }
}

pub(crate) fn check_positive(what: &str, mu: f64) -> Result<()> {
    if mu > 0.0 && mu.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "{what} must be positive and finite, got {mu}"
        )))
    }
}

/// Resolved smoothing parameters for a single evaluation: the outer
/// smooth-max parameter and the inner smooth-min parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct Smoothing {
    pub outer: f64,
    pub inner: InnerSmoothing,
}

impl Smoothing {
    pub fn shared(mu: f64) -> Self {
        Self {
            outer: mu,
            inner: InnerSmoothing::Shared(mu),
        }
    }

    pub fn validate(&self, m: usize) -> Result<()> {
        check_positive("outer smoothing", self.outer)?;
        self.inner.check(m)
    }

    /// Largest inner parameter, used in approximation bounds.
    pub fn max_inner(&self, m: usize) -> f64 {
        (0..m).map(|i| self.inner.get(i)).fold(0.0, f64::max)
    }
}

/// Smoothing parameters plus their schedule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SmoothingConfig {
    pub mu_outer: f64,
    pub mu_inner: InnerSmoothing,
    pub schedule: SmoothingSchedule,
}

impl Default for SmoothingConfig {
    fn default() -> Self {
        Self::adaptive()
    }
}

impl SmoothingConfig {
    pub fn fixed(mu: f64) -> Self {
        Self {
            mu_outer: mu,
            mu_inner: InnerSmoothing::Shared(mu),
            schedule: SmoothingSchedule::Fixed,
        }
    }

    /// `mu(t) = exp(-3e-3 t)` starting from 1, clipped below at 0.05.
    pub fn adaptive() -> Self {
        Self {
            mu_outer: 1.0,
            mu_inner: InnerSmoothing::Shared(1.0),
            schedule: SmoothingSchedule::ExponentialDecay {
                rate: 3e-3,
                floor: 0.05,
            },
        }
    }

    pub fn validate(&self, m: usize) -> Result<()> {
        check_positive("mu_outer", self.mu_outer)?;
        self.mu_inner.check(m)?;
        if let SmoothingSchedule::ExponentialDecay { rate, floor } = self.schedule {
            if !(rate >= 0.0 && rate.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "decay rate must be nonnegative, got {rate}"
                )));
            }
            check_positive("smoothing floor", floor)?;
        }
        Ok(())
    }

    fn scale(&self, base: f64, iteration: usize) -> f64 {
        match self.schedule {
            SmoothingSchedule::Fixed => base,
            SmoothingSchedule::ExponentialDecay { rate, floor } => {
                base * (-rate * iteration as f64).exp().max(floor)
            }
        }
    }

    /// Parameters in effect at descent iteration `iteration` (0-based).
    pub fn at(&self, iteration: usize) -> Smoothing {
        let inner = match &self.mu_inner {
            InnerSmoothing::Shared(mu) => InnerSmoothing::Shared(self.scale(*mu, iteration)),
            InnerSmoothing::PerObjective(mus) => InnerSmoothing::PerObjective(
                mus.iter().map(|&mu| self.scale(mu, iteration)).collect(),
            ),
        };
        Smoothing {
            outer: self.scale(self.mu_outer, iteration),
            inner,
        }
    }
}

/// `F[i][k] = f_i(x^(k))`, row-major by objective.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectiveMatrix {
    m: usize,
    k: usize,
    values: Vec<f64>,
}

impl ObjectiveMatrix {
    pub fn new(m: usize, k: usize, values: Vec<f64>) -> Result<Self> {
        if m == 0 || k == 0 {
            return Err(Error::Empty("objective matrix"));
        }
        check_len("objective matrix", m * k, values.len())?;
        Ok(Self { m, k, values })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let k = rows.first().map(Vec::len).ok_or(Error::Empty("objective matrix"))?;
        let mut values = Vec::with_capacity(rows.len() * k);
        for row in rows {
            check_len("objective matrix row", k, row.len())?;
            values.extend_from_slice(row);
        }
        Self::new(rows.len(), k, values)
    }

    pub fn num_objectives(&self) -> usize {
        self.m
    }

    pub fn num_solutions(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn get(&self, i: usize, k: usize) -> f64 {
        self.values[i * self.k + k]
    }

    pub fn set(&mut self, i: usize, k: usize, v: f64) {
        self.values[i * self.k + k] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.k..(i + 1) * self.k]
    }

    pub fn column(&self, k: usize) -> Vec<f64> {
        (0..self.m).map(|i| self.get(i, k)).collect()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }
}

/// Per-objective, per-solution gradients `grad f_i(x^(k))`.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectiveGradients {
    m: usize,
    k: usize,
    n: usize,
    data: Vec<f64>,
}

impl ObjectiveGradients {
    pub fn zeros(m: usize, k: usize, n: usize) -> Self {
        Self {
            m,
            k,
            n,
            data: vec![0.0; m * k * n],
        }
    }

    /// Builds a single-solution gradient bundle from `m` n-vectors.
    pub fn from_single(grads: &[Vec<f64>]) -> Result<Self> {
        let n = grads.first().map(Vec::len).ok_or(Error::Empty("gradients"))?;
        let mut out = Self::zeros(grads.len(), 1, n);
        for (i, g) in grads.iter().enumerate() {
            check_len("gradient", n, g.len())?;
            out.get_mut(i, 0).copy_from_slice(g);
        }
        Ok(out)
    }

    pub fn num_objectives(&self) -> usize {
        self.m
    }

    pub fn num_solutions(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, k: usize) -> &[f64] {
        let start = (i * self.k + k) * self.n;
        &self.data[start..start + self.n]
    }

    #[inline]
    pub fn get_mut(&mut self, i: usize, k: usize) -> &mut [f64] {
        let start = (i * self.k + k) * self.n;
        &mut self.data[start..start + self.n]
    }

    pub(crate) fn check_shape(&self, f: &ObjectiveMatrix) -> Result<()> {
        check_len("gradient objectives", f.m, self.m)?;
        check_len("gradient solutions", f.k, self.k)
    }
}

/// Whether a returned direction is a true gradient or a subgradient of a
/// non-smooth scalarization. The optimizer treats both identically.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GradientKind {
    Gradient,
    Subgradient,
}

/// Softmax factors of the smooth set scalarization.
///
/// `weights[i][k] = lambda_i * outer[i] * inner[i][k]`, so the gradient for
/// solution `k` is `sum_i weights[i][k] * grad f_i(x^(k))`.
#[derive(Debug, Clone, PartialEq)]
pub struct SmoothWeights {
    pub m: usize,
    pub k: usize,
    /// Outer softmax over objectives, length `m`, sums to one.
    pub outer: Vec<f64>,
    /// Inner softmax over solutions, `m x K` row-major, each row sums to one.
    pub inner: Vec<f64>,
    /// Combined weights, `m x K` row-major.
    pub weights: Vec<f64>,
}

impl SmoothWeights {
    #[inline]
    pub fn weight(&self, i: usize, k: usize) -> f64 {
        self.weights[i * self.k + k]
    }

    #[inline]
    pub fn inner(&self, i: usize, k: usize) -> f64 {
        self.inner[i * self.k + k]
    }

    /// Weights of solution `k` renormalized onto the simplex.
    pub fn normalized_column(&self, k: usize) -> Vec<f64> {
        let col: Vec<f64> = (0..self.m).map(|i| self.weight(i, k)).collect();
        let s: f64 = col.iter().sum();
        col.into_iter().map(|w| w / s).collect()
    }
}

/// Value and (sub)gradient of a scalarization.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarizationOutput {
    pub value: f64,
    n: usize,
    /// Solution-major flattened gradient, length `K * n`.
    pub gradient: Vec<f64>,
    pub kind: GradientKind,
    /// Present only for the smooth set scalarization.
    pub weights: Option<SmoothWeights>,
    /// Active (objective, solution) pair for the non-smooth scalarizations.
    pub active: Option<(usize, usize)>,
}

impl ScalarizationOutput {
    pub(crate) fn new(value: f64, k: usize, n: usize, kind: GradientKind) -> Self {
        Self {
            value,
            n,
            gradient: vec![0.0; k * n],
            kind,
            weights: None,
            active: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn num_solutions(&self) -> usize {
        self.gradient.len() / self.n
    }

    pub fn gradient_of(&self, k: usize) -> &[f64] {
        &self.gradient[k * self.n..(k + 1) * self.n]
    }

    pub(crate) fn gradient_of_mut(&mut self, k: usize) -> &mut [f64] {
        &mut self.gradient[k * self.n..(k + 1) * self.n]
    }
}

/// Evaluates every objective at every solution.
pub fn evaluate_matrix<P: Problem + ?Sized>(problem: &P, set: &SolutionSet) -> Result<ObjectiveMatrix> {
    check_len("solution dimension", problem.dim(), set.dim())?;
    let m = problem.num_objectives();
    let k = set.len();
    let mut values = Vec::with_capacity(m * k);
    for i in 0..m {
        for x in set.iter() {
            values.push(problem.value(i, x));
        }
    }
    ObjectiveMatrix::new(m, k, values)
}

/// Evaluates values and gradients of every objective at every solution.
pub fn evaluate_with_gradients<P: Problem + ?Sized>(
    problem: &P,
    set: &SolutionSet,
) -> Result<(ObjectiveMatrix, ObjectiveGradients)> {
    let mut values = Vec::new();
    let mut grads = ObjectiveGradients::zeros(0, 0, 0);
    evaluate_with_gradients_into(problem, set, &mut values, &mut grads)?;
    let m = problem.num_objectives();
    Ok((ObjectiveMatrix::new(m, set.len(), values)?, grads))
}

/// Buffer-reusing variant for the descent hot loop.
pub(crate) fn evaluate_with_gradients_into<P: Problem + ?Sized>(
    problem: &P,
    set: &SolutionSet,
    values: &mut Vec<f64>,
    grads: &mut ObjectiveGradients,
) -> Result<()> {
    check_len("solution dimension", problem.dim(), set.dim())?;
    let (m, k, n) = (problem.num_objectives(), set.len(), set.dim());
    if grads.m != m || grads.k != k || grads.n != n {
        *grads = ObjectiveGradients::zeros(m, k, n);
    }
    values.clear();
    values.reserve(m * k);
    for i in 0..m {
        for (kk, x) in set.iter().enumerate() {
            values.push(problem.value_and_gradient(i, x, grads.get_mut(i, kk)));
        }
    }
    Ok(())
}

/// Pareto dominance between two objective vectors (minimization).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dominance {
    /// `a_i < b_i` for every objective.
    StrictlyDominates,
    /// `a_i <= b_i` for every objective with at least one strict inequality.
    Dominates,
    Neither,
}

pub fn dominates(a: &[f64], b: &[f64]) -> Result<Dominance> {
    check_len("dominance", a.len(), b.len())?;
    if a.iter().zip(b).all(|(x, y)| x < y) && !a.is_empty() {
        return Ok(Dominance::StrictlyDominates);
    }
    let weakly = a.iter().zip(b).all(|(x, y)| x <= y);
    let strict_somewhere = a.iter().zip(b).any(|(x, y)| x < y);
    Ok(if weakly && strict_somewhere {
        Dominance::Dominates
    } else {
        Dominance::Neither
    })
}
