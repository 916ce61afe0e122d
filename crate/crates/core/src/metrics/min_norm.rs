//! Minimum-norm point in the convex hull of a set of gradients, by
//! Frank-Wolfe with away steps and exact line search on the Gram matrix.

use crate::error::{Error, Result};

pub const DEFAULT_MIN_NORM_ITERS: usize = 1000;

#[derive(Debug, Clone, PartialEq)]
pub struct MinNormResult {
    /// Simplex weights over the input gradients.
    pub weights: Vec<f64>,
    /// `|sum_i weights_i g_i|`.
    pub residual_norm: f64,
    pub iterations: usize,
}

pub fn min_norm_convex_combination(gradients: &[Vec<f64>], iters: usize) -> Result<MinNormResult> {
    if iters == 0 {
        return Err(Error::InvalidParameter("min-norm solver needs iters >= 1".into()));
    }
    let m = gradients.len();
    if m == 0 {
        return Err(Error::Empty("gradient list"));
    }
    let n = gradients[0].len();
    for g in gradients {
        crate::error::check_len("gradient length", n, g.len())?;
        crate::error::check_finite("gradient", g)?;
    }
    let mut gram = vec![0.0; m * m];
    for i in 0..m {
        for j in i..m {
            let d: f64 = gradients[i].iter().zip(&gradients[j]).map(|(a, b)| a * b).sum();
            gram[i * m + j] = d;
            gram[j * m + i] = d;
        }
    }

    let mut alpha = vec![1.0 / m as f64; m];
    // g_alpha = G alpha, the gradient of 1/2 alpha^T G alpha.
    let mut g_alpha: Vec<f64> = (0..m).map(|i| dot(&gram[i * m..(i + 1) * m], &alpha)).collect();
    let mut it = 0;
    while it < iters {
        it += 1;
        let quad = dot(&alpha, &g_alpha);
        let s = argmin(&g_alpha);
        let v = (0..m)
            .filter(|&i| alpha[i] > 0.0)
            .max_by(|&a, &b| g_alpha[a].total_cmp(&g_alpha[b]))
            .expect("simplex weights are never all zero");
        let fw_gap = quad - g_alpha[s];
        let away_gap = g_alpha[v] - quad;
        if fw_gap.max(away_gap) <= 1e-15 * quad.abs().max(1e-300) {
            break;
        }
        // Direction d expressed as `coef_alpha * alpha + e_target * sign`.
        let (target, toward, gamma_max) = if fw_gap >= away_gap {
            (s, true, 1.0)
        } else {
            (v, false, alpha[v] / (1.0 - alpha[v]))
        };
        // d = e_s - alpha (toward) or d = alpha - e_v (away).
        let sign = if toward { 1.0 } else { -1.0 };
        let slope = sign * (g_alpha[target] - quad);
        let curvature = gram[target * m + target] - 2.0 * g_alpha[target] + quad;
        if slope >= 0.0 {
            break;
        }
        let gamma = if curvature > 0.0 {
            (-slope / curvature).min(gamma_max)
        } else {
            gamma_max
        };
        if gamma.is_nan() || gamma <= 0.0 {
            break;
        }
        for (i, a) in alpha.iter_mut().enumerate() {
            let e = if i == target { 1.0 } else { 0.0 };
            *a += gamma * sign * (e - *a);
            if *a < 0.0 {
                *a = 0.0;
            }
        }
        if !toward && gamma == gamma_max {
            alpha[target] = 0.0;
        }
        for i in 0..m {
            let e = gram[i * m + target];
            g_alpha[i] += gamma * sign * (e - g_alpha[i]);
        }
    }
    let total: f64 = alpha.iter().sum();
    alpha.iter_mut().for_each(|a| *a /= total);
    let mut combo = vec![0.0; n];
    for (a, g) in alpha.iter().zip(gradients) {
        for (c, x) in combo.iter_mut().zip(g) {
            *c += a * x;
        }
    }
    Ok(MinNormResult {
        weights: alpha,
        residual_norm: dot(&combo, &combo).sqrt(),
        iterations: it,
    })
}

fn argmin(v: &[f64]) -> usize {
    let mut best = 0;
    for (i, &x) in v.iter().enumerate() {
        if x < v[best] {
            best = i;
        }
    }
    best
}

#[inline]
fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
