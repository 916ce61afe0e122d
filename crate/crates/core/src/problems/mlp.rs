//! One-hidden-layer ReLU network `psi(a) = p^T ReLU(W a + q) + o` with a
//! hand-written backward pass.
//!
//! Flattened parameter layout: `W` (row-major, `hidden x input`), then `p`,
//! then `q`, then `o`.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MlpParams {
    pub input: usize,
    pub hidden: usize,
    pub w: Vec<f64>,
    pub p: Vec<f64>,
    pub q: Vec<f64>,
    pub o: f64,
}

impl MlpParams {
    pub fn flat_len(input: usize, hidden: usize) -> usize {
        hidden * input + 2 * hidden + 1
    }

    pub fn zeros(input: usize, hidden: usize) -> Self {
        Self {
            input,
            hidden,
            w: vec![0.0; hidden * input],
            p: vec![0.0; hidden],
            q: vec![0.0; hidden],
            o: 0.0,
        }
    }

    pub fn standard_normal<R: Rng + ?Sized>(input: usize, hidden: usize, rng: &mut R) -> Self {
        let flat: Vec<f64> = (0..Self::flat_len(input, hidden))
            .map(|_| rng.sample(StandardNormal))
            .collect();
        Self::unflatten(&flat, input, hidden)
    }

    pub fn flatten(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(Self::flat_len(self.input, self.hidden));
        out.extend_from_slice(&self.w);
        out.extend_from_slice(&self.p);
        out.extend_from_slice(&self.q);
        out.push(self.o);
        out
    }

    pub fn unflatten(flat: &[f64], input: usize, hidden: usize) -> Self {
        assert_eq!(flat.len(), Self::flat_len(input, hidden), "flat parameter length");
        let (w, rest) = flat.split_at(hidden * input);
        let (p, rest) = rest.split_at(hidden);
        let (q, rest) = rest.split_at(hidden);
        Self {
            input,
            hidden,
            w: w.to_vec(),
            p: p.to_vec(),
            q: q.to_vec(),
            o: rest[0],
        }
    }

    pub fn forward(&self, a: &[f64]) -> f64 {
        Self::forward_flat(&self.flatten(), self.input, self.hidden, a)
    }

    pub fn forward_flat(x: &[f64], input: usize, hidden: usize, a: &[f64]) -> f64 {
        let (w, p, q, o) = split(x, input, hidden);
        let mut out = o;
        for j in 0..hidden {
            let pre = q[j] + dot(&w[j * input..(j + 1) * input], a);
            if pre > 0.0 {
                out += p[j] * pre;
            }
        }
        out
    }

    /// Returns `psi(a)` and writes `d psi / d x` into `grad`. The ReLU
    /// derivative is taken as 0 at exactly 0.
    pub fn forward_backward_flat(x: &[f64], input: usize, hidden: usize, a: &[f64], grad: &mut [f64]) -> f64 {
        let (w, p, q, o) = split(x, input, hidden);
        let (gw, rest) = grad.split_at_mut(hidden * input);
        let (gp, rest) = rest.split_at_mut(hidden);
        let (gq, go) = rest.split_at_mut(hidden);
        let mut out = o;
        for j in 0..hidden {
            let pre = q[j] + dot(&w[j * input..(j + 1) * input], a);
            let row = &mut gw[j * input..(j + 1) * input];
            if pre > 0.0 {
                out += p[j] * pre;
                gp[j] = pre;
                gq[j] = p[j];
                for (g, &al) in row.iter_mut().zip(a) {
                    *g = p[j] * al;
                }
            } else {
                gp[j] = 0.0;
                gq[j] = 0.0;
                row.iter_mut().for_each(|g| *g = 0.0);
            }
        }
        go[0] = 1.0;
        out
    }
}

fn split(x: &[f64], input: usize, hidden: usize) -> (&[f64], &[f64], &[f64], f64) {
    let (w, rest) = x.split_at(hidden * input);
    let (p, rest) = rest.split_at(hidden);
    let (q, rest) = rest.split_at(hidden);
    (w, p, q, rest[0])
}

#[inline]
fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
