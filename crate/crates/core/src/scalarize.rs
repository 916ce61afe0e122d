//! Scalarizations of a vector (or matrix) of objective values.
//!
//! Single-solution scalarizations (linear, Tchebycheff, smooth Tchebycheff)
//! take an objective matrix with exactly one column. The set scalarizations
//! take the full `m x K` matrix:
//!
//! ```text
//! TCH-Set(X)  = max_i  lambda_i (min_k  F[i][k] - z_i)
//! STCH-Set(X) = smax_i lambda_i (smin_k F[i][k] - z_i)
//! smax_mu(v)  =  mu log sum exp( v / mu)
//! smin_mu(v)  = -mu log sum exp(-v / mu)
//! ```
//!
//! Every log-sum-exp is shifted by its extremal element, so no exponent is
//! ever positive and small smoothing parameters cannot overflow.
//! Ties in the non-smooth max/min are broken towards the smallest index.

use crate::error::{check_finite, check_len, Error, Result};
use crate::model::{
    check_positive, GradientKind, ObjectiveGradients, ObjectiveMatrix, PreferenceVector,
    ScalarizationOutput, SmoothWeights, Smoothing,
};

/// Value of a smooth reduction and the softmax weight of each input.
#[derive(Debug, Clone, PartialEq)]
pub struct SmoothReduceResult {
    pub value: f64,
    pub softmax_weights: Vec<f64>,
}

fn check_reduce_input(values: &[f64], mu: f64) -> Result<()> {
    if values.is_empty() {
        return Err(Error::Empty("smooth reduction input"));
    }
    check_finite("smooth reduction input", values)?;
    check_positive("smoothing parameter", mu)
}

/// `mu * log(sum exp(v / mu))`, writing the softmax weights into `weights`.
/// Inputs are assumed validated.
#[inline]
fn smax_into(values: &[f64], mu: f64, weights: &mut [f64]) -> f64 {
    let top = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut sum = 0.0;
    for (w, &v) in weights.iter_mut().zip(values) {
        *w = ((v - top) / mu).exp();
        sum += *w;
    }
    weights.iter_mut().for_each(|w| *w /= sum);
    top + mu * sum.ln()
}

/// `-mu * log(sum exp(-v / mu))`, writing the softmax weights into `weights`.
#[inline]
fn smin_into(values: &[f64], mu: f64, weights: &mut [f64]) -> f64 {
    let bottom = values.iter().copied().fold(f64::INFINITY, f64::min);
    let mut sum = 0.0;
    for (w, &v) in weights.iter_mut().zip(values) {
        *w = (-(v - bottom) / mu).exp();
        sum += *w;
    }
    weights.iter_mut().for_each(|w| *w /= sum);
    bottom - mu * sum.ln()
}

/// Smooth maximum. Satisfies `max(v) <= value <= max(v) + mu log n`.
pub fn smooth_max(values: &[f64], mu: f64) -> Result<SmoothReduceResult> {
    check_reduce_input(values, mu)?;
    let mut softmax_weights = vec![0.0; values.len()];
    let value = smax_into(values, mu, &mut softmax_weights);
    Ok(SmoothReduceResult {
        value,
        softmax_weights,
    })
}

/// Smooth minimum. Satisfies `min(v) - mu log n <= value <= min(v)`.
pub fn smooth_min(values: &[f64], mu: f64) -> Result<SmoothReduceResult> {
    check_reduce_input(values, mu)?;
    let mut softmax_weights = vec![0.0; values.len()];
    let value = smin_into(values, mu, &mut softmax_weights);
    Ok(SmoothReduceResult {
        value,
        softmax_weights,
    })
}

/// Index of the first minimal element.
fn argmin_first(values: &[f64]) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (i, &v) in values.iter().enumerate() {
        if v < best.1 {
            best = (i, v);
        }
    }
    best
}

fn check_common(f: &ObjectiveMatrix, lambda: &PreferenceVector, z_star: Option<&[f64]>) -> Result<()> {
    let m = f.num_objectives();
    check_len("preference vector", m, lambda.len())?;
    if let Some(z) = z_star {
        check_len("ideal point", m, z.len())?;
        check_finite("ideal point", z)?;
    }
    if !f.is_finite() {
        return Err(Error::NonFinite("objective matrix"));
    }
    Ok(())
}

fn check_single(f: &ObjectiveMatrix) -> Result<()> {
    check_len("single-solution scalarization", 1, f.num_solutions())
}

/// Linear scalarization `sum_i lambda_i f_i(x)` of a single solution.
pub fn ls_value_grad(
    f: &ObjectiveMatrix,
    grads: &ObjectiveGradients,
    lambda: &PreferenceVector,
) -> Result<ScalarizationOutput> {
    check_single(f)?;
    check_common(f, lambda, None)?;
    grads.check_shape(f)?;
    let lam = lambda.as_slice();
    let value = (0..f.num_objectives()).map(|i| lam[i] * f.get(i, 0)).sum();
    let mut out = ScalarizationOutput::new(value, 1, grads.dim(), GradientKind::Gradient);
    let g = out.gradient_of_mut(0);
    for (i, &l) in lam.iter().enumerate() {
        axpy(l, grads.get(i, 0), g);
    }
    Ok(out)
}

/// Tchebycheff scalarization `max_i lambda_i (f_i(x) - z_i)` with the
/// subgradient of the first active objective.
pub fn tch_value_subgrad(
    f: &ObjectiveMatrix,
    grads: &ObjectiveGradients,
    lambda: &PreferenceVector,
    z_star: &[f64],
) -> Result<ScalarizationOutput> {
    check_single(f)?;
    tch_set_value_subgrad(f, grads, lambda, z_star)
}

/// Smooth Tchebycheff scalarization
/// `mu log sum_i exp(lambda_i (f_i(x) - z_i) / mu)` of a single solution.
pub fn stch_value_grad(
    f: &ObjectiveMatrix,
    grads: &ObjectiveGradients,
    lambda: &PreferenceVector,
    z_star: &[f64],
    mu: f64,
) -> Result<ScalarizationOutput> {
    check_single(f)?;
    check_common(f, lambda, Some(z_star))?;
    check_positive("smoothing parameter", mu)?;
    grads.check_shape(f)?;
    let lam = lambda.as_slice();
    let m = f.num_objectives();
    let terms: Vec<f64> = (0..m).map(|i| lam[i] * (f.get(i, 0) - z_star[i])).collect();
    let mut omega = vec![0.0; m];
    let value = smax_into(&terms, mu, &mut omega);
    let mut out = ScalarizationOutput::new(value, 1, grads.dim(), GradientKind::Gradient);
    let g = out.gradient_of_mut(0);
    for i in 0..m {
        axpy(omega[i] * lam[i], grads.get(i, 0), g);
    }
    Ok(out)
}

/// TCH-Set value and its active `(objective, solution)` pair.
pub fn tch_set_value(
    f: &ObjectiveMatrix,
    lambda: &PreferenceVector,
    z_star: &[f64],
) -> Result<(f64, (usize, usize))> {
    check_common(f, lambda, Some(z_star))?;
    let lam = lambda.as_slice();
    let mut best = (f64::NEG_INFINITY, (0, 0));
    for i in 0..f.num_objectives() {
        let (k, row_min) = argmin_first(f.row(i));
        let term = lam[i] * (row_min - z_star[i]);
        if term > best.0 {
            best = (term, (i, k));
        }
    }
    Ok(best)
}

/// TCH-Set value with the subgradient `lambda_i* grad f_i*(x^(k*))` placed on
/// the active solution `k*`; every other solution receives zero.
pub fn tch_set_value_subgrad(
    f: &ObjectiveMatrix,
    grads: &ObjectiveGradients,
    lambda: &PreferenceVector,
    z_star: &[f64],
) -> Result<ScalarizationOutput> {
    grads.check_shape(f)?;
    let (value, (i, k)) = tch_set_value(f, lambda, z_star)?;
    let mut out = ScalarizationOutput::new(
        value,
        f.num_solutions(),
        grads.dim(),
        GradientKind::Subgradient,
    );
    let l = lambda.as_slice()[i];
    axpy(l, grads.get(i, k), out.gradient_of_mut(k));
    out.active = Some((i, k));
    Ok(out)
}

/// STCH-Set value and the softmax weight decomposition of its gradient.
pub fn stch_set_value_weights(
    f: &ObjectiveMatrix,
    lambda: &PreferenceVector,
    z_star: &[f64],
    smoothing: &Smoothing,
) -> Result<(f64, SmoothWeights)> {
    check_common(f, lambda, Some(z_star))?;
    let (m, k) = (f.num_objectives(), f.num_solutions());
    smoothing.validate(m)?;
    let lam = lambda.as_slice();

    let mut inner = vec![0.0; m * k];
    let mut terms = vec![0.0; m];
    for i in 0..m {
        let smin = smin_into(f.row(i), smoothing.inner.get(i), &mut inner[i * k..(i + 1) * k]);
        terms[i] = lam[i] * (smin - z_star[i]);
    }
    let mut outer = vec![0.0; m];
    let value = smax_into(&terms, smoothing.outer, &mut outer);

    let mut weights = vec![0.0; m * k];
    for i in 0..m {
        let scale = lam[i] * outer[i];
        for kk in 0..k {
            weights[i * k + kk] = scale * inner[i * k + kk];
        }
    }
    Ok((
        value,
        SmoothWeights {
            m,
            k,
            outer,
            inner,
            weights,
        },
    ))
}

pub fn stch_set_value(
    f: &ObjectiveMatrix,
    lambda: &PreferenceVector,
    z_star: &[f64],
    smoothing: &Smoothing,
) -> Result<f64> {
    stch_set_value_weights(f, lambda, z_star, smoothing).map(|(v, _)| v)
}

/// STCH-Set value and exact gradient with respect to every solution:
/// `grad_{x^(k)} = sum_i w_ik grad f_i(x^(k))`.
pub fn stch_set_value_grad(
    f: &ObjectiveMatrix,
    grads: &ObjectiveGradients,
    lambda: &PreferenceVector,
    z_star: &[f64],
    smoothing: &Smoothing,
) -> Result<ScalarizationOutput> {
    grads.check_shape(f)?;
    let (value, weights) = stch_set_value_weights(f, lambda, z_star, smoothing)?;
    let k = f.num_solutions();
    let mut out = ScalarizationOutput::new(value, k, grads.dim(), GradientKind::Gradient);
    for kk in 0..k {
        let g = out.gradient_of_mut(kk);
        for i in 0..f.num_objectives() {
            let w = weights.weight(i, kk);
            if w != 0.0 {
                axpy(w, grads.get(i, kk), g);
            }
        }
    }
    out.weights = Some(weights);
    Ok(out)
}

#[inline]
fn axpy(a: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn col(values: &[f64]) -> ObjectiveMatrix {
        ObjectiveMatrix::new(values.len(), 1, values.to_vec()).unwrap()
    }

    fn unit_grads(m: usize) -> ObjectiveGradients {
        // grad f_i = e_i in R^m, so gradient entries expose the weights.
        let rows: Vec<Vec<f64>> = (0..m)
            .map(|i| (0..m).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        ObjectiveGradients::from_single(&rows).unwrap()
    }

    fn pref(v: &[f64]) -> PreferenceVector {
        PreferenceVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn smooth_max_examples() {
        let r = smooth_max(&[0.0, 0.0], 1.0).unwrap();
        assert!((r.value - std::f64::consts::LN_2).abs() < 1e-15);
        assert_eq!(r.softmax_weights, vec![0.5, 0.5]);
        assert_eq!(smooth_max(&[7.0], 0.05).unwrap().value, 7.0);
        // 0.5 * ln(e^2 + e^4 + e^6), 40-digit reference
        let r = smooth_max(&[1.0, 2.0, 3.0], 0.5).unwrap();
        assert!((r.value - 3.071_465_814_249_95).abs() < 1e-14);
    }

    #[test]
    fn smooth_min_examples() {
        let r = smooth_min(&[0.0, 0.0], 1.0).unwrap();
        assert!((r.value + std::f64::consts::LN_2).abs() < 1e-15);
        assert_eq!(smooth_min(&[5.0], 0.1).unwrap().value, 5.0);
        // -ln(e^-1 + e^-2), 40-digit reference
        let r = smooth_min(&[1.0, 2.0], 1.0).unwrap();
        assert!((r.value - 0.686_738_312_481_777_2).abs() < 1e-14);
    }

    #[test]
    fn smooth_reductions_reject_bad_input() {
        assert!(matches!(smooth_max(&[], 1.0), Err(Error::Empty(_))));
        assert!(matches!(smooth_min(&[1.0, f64::NAN], 1.0), Err(Error::NonFinite(_))));
        assert!(smooth_max(&[1.0], 0.0).is_err());
        assert!(smooth_min(&[1.0], -2.0).is_err());
    }

    #[test]
    fn smooth_reductions_survive_extreme_ratios() {
        let v = [1e6, -1e6, 0.0];
        let mx = smooth_max(&v, 1.0).unwrap();
        let mn = smooth_min(&v, 1.0).unwrap();
        assert_eq!(mx.value, 1e6);
        assert_eq!(mn.value, -1e6);
        assert!(mx.softmax_weights.iter().all(|w| w.is_finite()));
    }

    #[test]
    fn linear_scalarization_examples() {
        let out = ls_value_grad(&col(&[2.0, 4.0]), &unit_grads(2), &pref(&[0.5, 0.5])).unwrap();
        assert_eq!(out.value, 3.0);
        assert_eq!(out.gradient, vec![0.5, 0.5]);
        let c = 1.7;
        let out = ls_value_grad(&col(&[c; 4]), &unit_grads(4), &PreferenceVector::uniform(4)).unwrap();
        assert!((out.value - c).abs() < 1e-15);
        let out = ls_value_grad(&col(&[1.0, 2.0, 3.0]), &unit_grads(3), &pref(&[0.2, 0.3, 0.5])).unwrap();
        assert!((out.value - 2.3).abs() < 1e-15);
    }

    #[test]
    fn single_solution_scalarizations_require_one_column() {
        let f = ObjectiveMatrix::from_rows(&[vec![1.0, 2.0]]).unwrap();
        let g = ObjectiveGradients::zeros(1, 2, 1);
        assert!(ls_value_grad(&f, &g, &PreferenceVector::uniform(1)).is_err());
        assert!(stch_value_grad(&f, &g, &PreferenceVector::uniform(1), &[0.0], 0.1).is_err());
    }

    #[test]
    fn tchebycheff_examples() {
        let out = tch_value_subgrad(&col(&[2.0, 4.0]), &unit_grads(2), &pref(&[0.5, 0.5]), &[0.0, 0.0]).unwrap();
        assert_eq!(out.value, 2.0);
        assert_eq!(out.active, Some((1, 0)));
        assert_eq!(out.gradient, vec![0.0, 0.5]);
        assert_eq!(out.kind, GradientKind::Subgradient);

        let out = tch_value_subgrad(&col(&[3.0, 3.0]), &unit_grads(2), &pref(&[0.5, 0.5]), &[0.0, 0.0]).unwrap();
        assert_eq!(out.value, 1.5);
        assert_eq!(out.active, Some((0, 0)));

        let out = tch_value_subgrad(
            &col(&[1.0, 3.0, 2.0]),
            &unit_grads(3),
            &pref(&[0.5, 0.25, 0.25]),
            &[0.0; 3],
        )
        .unwrap();
        assert_eq!(out.value, 0.75);
        assert_eq!(out.active, Some((1, 0)));
    }

    #[test]
    fn smooth_tchebycheff_single_objective_is_exact() {
        let g = ObjectiveGradients::from_single(&[vec![2.0, -1.0]]).unwrap();
        let out = stch_value_grad(&col(&[3.0]), &g, &PreferenceVector::uniform(1), &[-0.5], 0.3).unwrap();
        assert_eq!(out.value, 3.5);
        assert_eq!(out.gradient, vec![2.0, -1.0]);
    }

    #[test]
    fn smooth_tchebycheff_identical_terms() {
        let c = 2.4;
        let out = stch_value_grad(&col(&[c, c]), &unit_grads(2), &pref(&[0.5, 0.5]), &[0.0, 0.0], 1.0).unwrap();
        assert!((out.value - (c / 2.0 + std::f64::consts::LN_2)).abs() < 1e-14);
    }

    #[test]
    fn tch_set_examples() {
        let f = ObjectiveMatrix::from_rows(&[vec![1.0, 3.0], vec![4.0, 2.0]]).unwrap();
        let g = ObjectiveGradients::zeros(2, 2, 1);
        let out = tch_set_value_subgrad(&f, &g, &pref(&[0.5, 0.5]), &[0.0, 0.0]).unwrap();
        assert_eq!(out.value, 1.0);
        assert_eq!(out.active, Some((1, 1)));

        let f = ObjectiveMatrix::from_rows(&[vec![2.0], vec![4.0]]).unwrap();
        let (v, _) = tch_set_value(&f, &pref(&[0.5, 0.5]), &[0.0, 0.0]).unwrap();
        let single = tch_value_subgrad(&f, &unit_grads(2), &pref(&[0.5, 0.5]), &[0.0, 0.0]).unwrap();
        assert_eq!(v, 2.0);
        assert_eq!(single.value, v);

        let f = ObjectiveMatrix::new(4, 3, vec![2.5; 12]).unwrap();
        let (v, active) = tch_set_value(&f, &PreferenceVector::uniform(4), &[0.0; 4]).unwrap();
        assert_eq!(v, 2.5 / 4.0);
        assert_eq!(active, (0, 0));
    }

    #[test]
    fn tch_set_subgradient_lands_on_active_solution() {
        let f = ObjectiveMatrix::from_rows(&[vec![1.0, 3.0], vec![4.0, 2.0]]).unwrap();
        let mut g = ObjectiveGradients::zeros(2, 2, 2);
        g.get_mut(1, 1).copy_from_slice(&[1.0, -2.0]);
        g.get_mut(0, 0).copy_from_slice(&[9.0, 9.0]);
        let out = tch_set_value_subgrad(&f, &g, &pref(&[0.5, 0.5]), &[0.0, 0.0]).unwrap();
        assert_eq!(out.gradient_of(0), &[0.0, 0.0]);
        assert_eq!(out.gradient_of(1), &[0.5, -1.0]);
    }

    #[test]
    fn stch_set_identical_entries_closed_form() {
        let (m, k, c, mu) = (5usize, 3usize, 1.3, 0.2);
        let f = ObjectiveMatrix::new(m, k, vec![c; m * k]).unwrap();
        let v = stch_set_value(&f, &PreferenceVector::uniform(m), &vec![0.0; m], &Smoothing::shared(mu)).unwrap();
        let expected = (c - mu * (k as f64).ln()) / m as f64 + mu * (m as f64).ln();
        assert!((v - expected).abs() < 1e-14);
    }

    #[test]
    fn stch_set_rejects_nonpositive_smoothing() {
        let f = ObjectiveMatrix::new(2, 2, vec![1.0; 4]).unwrap();
        let lam = PreferenceVector::uniform(2);
        assert!(stch_set_value(&f, &lam, &[0.0, 0.0], &Smoothing::shared(0.0)).is_err());
        let bad = Smoothing {
            outer: 0.1,
            inner: crate::model::InnerSmoothing::PerObjective(vec![0.1, -0.1]),
        };
        assert!(stch_set_value(&f, &lam, &[0.0, 0.0], &bad).is_err());
    }

    #[test]
    fn stch_set_is_stable_for_huge_exponents() {
        // |lambda (f - z) / mu| reaches 1e6.
        let f = ObjectiveMatrix::from_rows(&[vec![2e5, -2e5], vec![-2e5, 1e5]]).unwrap();
        let v = stch_set_value(&f, &pref(&[0.5, 0.5]), &[0.0, 0.0], &Smoothing::shared(0.1)).unwrap();
        assert!(v.is_finite());
        let (t, _) = tch_set_value(&f, &pref(&[0.5, 0.5]), &[0.0, 0.0]).unwrap();
        assert!((v - t).abs() < 1.0);
    }

    fn random_instance(rng: &mut ChaCha8Rng) -> (ObjectiveMatrix, PreferenceVector, Vec<f64>) {
        let m = rng.random_range(1..10);
        let k = rng.random_range(1..5);
        let vals = (0..m * k).map(|_| rng.random_range(-3.0..3.0)).collect();
        let raw: Vec<f64> = (0..m).map(|_| rng.random_range(0.05..1.0)).collect();
        let z = (0..m).map(|_| rng.random_range(-1.0..0.0)).collect();
        (
            ObjectiveMatrix::new(m, k, vals).unwrap(),
            PreferenceVector::normalized(raw).unwrap(),
            z,
        )
    }

    #[test]
    fn stch_set_weight_structure() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let (f, lam, z) = random_instance(&mut rng);
            let (_, w) = stch_set_value_weights(&f, &lam, &z, &Smoothing::shared(0.3)).unwrap();
            assert!((w.outer.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            for i in 0..w.m {
                let s: f64 = (0..w.k).map(|k| w.inner(i, k)).sum();
                assert!((s - 1.0).abs() < 1e-12);
            }
            assert!(w.weights.iter().all(|&x| x >= 0.0));
        }
    }

    #[test]
    fn stch_set_value_is_permutation_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..100 {
            let (f, lam, z) = random_instance(&mut rng);
            let (m, k) = (f.num_objectives(), f.num_solutions());
            let s = Smoothing::shared(0.25);
            let base_s = stch_set_value(&f, &lam, &z, &s).unwrap();
            let base_t = tch_set_value(&f, &lam, &z).unwrap().0;

            // reverse solutions
            let rev: Vec<f64> = (0..m)
                .flat_map(|i| f.row(i).iter().rev().copied().collect::<Vec<_>>())
                .collect();
            let fr = ObjectiveMatrix::new(m, k, rev).unwrap();
            assert!((stch_set_value(&fr, &lam, &z, &s).unwrap() - base_s).abs() < 1e-12);
            assert_eq!(tch_set_value(&fr, &lam, &z).unwrap().0, base_t);

            // rotate objectives together with lambda and z
            let rot = |v: &[f64]| -> Vec<f64> { v.iter().cycle().skip(1).take(v.len()).copied().collect() };
            let rows: Vec<Vec<f64>> = rot(&(0..m).map(|i| i as f64).collect::<Vec<_>>())
                .into_iter()
                .map(|i| f.row(i as usize).to_vec())
                .collect();
            let fo = ObjectiveMatrix::from_rows(&rows).unwrap();
            let lo = PreferenceVector::normalized(rot(lam.as_slice())).unwrap();
            let zo = rot(&z);
            assert!((stch_set_value(&fo, &lo, &zo, &s).unwrap() - base_s).abs() < 1e-12);
            assert!((tch_set_value(&fo, &lo, &zo).unwrap().0 - base_t).abs() < 1e-15);
        }
    }

    proptest! {
        #[test]
        fn row_and_ideal_translation_cancels(
            seed in 0u64..1000,
            shifts in prop::collection::vec(-5.0f64..5.0, 10),
        ) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (f, lam, z) = random_instance(&mut rng);
            let (m, k) = (f.num_objectives(), f.num_solutions());
            let shifted: Vec<f64> = (0..m)
                .flat_map(|i| f.row(i).iter().map(|v| v + shifts[i]).collect::<Vec<_>>())
                .collect();
            let fs = ObjectiveMatrix::new(m, k, shifted).unwrap();
            let zs: Vec<f64> = z.iter().zip(&shifts).map(|(a, b)| a + b).collect();
            let s = Smoothing::shared(0.2);
            let a = stch_set_value(&f, &lam, &z, &s).unwrap();
            let b = stch_set_value(&fs, &lam, &zs, &s).unwrap();
            prop_assert!((a - b).abs() < 1e-10);
            let a = tch_set_value(&f, &lam, &z).unwrap().0;
            let b = tch_set_value(&fs, &lam, &zs).unwrap().0;
            prop_assert!((a - b).abs() < 1e-10);
        }

        #[test]
        fn smooth_bounds_hold(
            values in prop::collection::vec(-50.0f64..50.0, 1..20),
            mu in 0.001f64..10.0,
        ) {
            let n = values.len() as f64;
            let mx = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let mn = values.iter().copied().fold(f64::INFINITY, f64::min);
            let smax = smooth_max(&values, mu).unwrap();
            let smin = smooth_min(&values, mu).unwrap();
            prop_assert!(smax.value >= mx - 1e-12 && smax.value <= mx + mu * n.ln() + 1e-12);
            prop_assert!(smin.value <= mn + 1e-12 && smin.value >= mn - mu * n.ln() - 1e-12);
            prop_assert!((smax.softmax_weights.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            prop_assert!((smin.softmax_weights.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }
}
