//! Step-size and smoothing grid search on held-out seeds.
//!
//! `cargo run --release --example tune -- quadratic|mixed_linear [METHOD...]`
//!
//! Every method is tuned on seeds 100..105 (disjoint from the evaluation
//! seeds 0..10). A setting is eligible only if no tuning run diverges; the
//! eligible setting with the lowest mean worst metric is selected.

use fewformany::model::{SmoothingConfig, SmoothingSchedule};
use fewformany::optimize::{initial_solutions, run_method, Method, OptimizerConfig};
use fewformany::problems::{MixedRegressionSpec, ProblemSpec, QuadraticProblemSpec};
use rayon::prelude::*;

const STEPS: [f64; 12] = [1e-3, 3e-3, 1e-2, 3e-2, 0.1, 0.3, 1.0, 3.0, 10.0, 30.0, 60.0, 100.0];
const OUTER_MU: [f64; 3] = [1.0, 0.1, 0.01];
const DECAY: [f64; 2] = [3e-3, 3e-4];

fn candidates(method: Method) -> Vec<OptimizerConfig> {
    let mut out = Vec::new();
    for &step_size in &STEPS {
        let base = OptimizerConfig {
            step_size,
            checkpoint_every: 0,
            ..OptimizerConfig::new(method)
        };
        if method == Method::StchSet {
            for &mu in &OUTER_MU {
                for &rate in &DECAY {
                    let mut c = base.clone();
                    c.smoothing = SmoothingConfig {
                        mu_outer: mu,
                        schedule: SmoothingSchedule::ExponentialDecay { rate, floor: 0.05 },
                        ..SmoothingConfig::adaptive()
                    };
                    out.push(c);
                }
            }
        } else {
            out.push(base);
        }
    }
    out
}

fn main() {
    let family = std::env::args().nth(1).unwrap_or_else(|| "quadratic".into());
    let spec = match family.as_str() {
        "quadratic" => ProblemSpec::Quadratic(QuadraticProblemSpec::new(128, 10, 0)),
        "mixed_linear" => ProblemSpec::MixedLinear(MixedRegressionSpec::new(1000, 10, 5, 0.1, 0)),
        other => panic!("unknown family {other}"),
    };
    let k = 5;
    let seeds: Vec<u64> = (100..105).collect();
    let problems: Vec<_> = seeds.iter().map(|&s| spec.with_seed(s).generate().unwrap()).collect();
    let only: Vec<Method> = std::env::args().skip(2).map(|a| a.parse().unwrap()).collect();
    for method in Method::ALL {
        if !only.is_empty() && !only.contains(&method) {
            continue;
        }
        let results: Vec<(OptimizerConfig, Option<(f64, f64)>)> = candidates(method)
            .into_par_iter()
            .map(|base| {
                let runs: Vec<Option<(f64, f64)>> = seeds
                    .iter()
                    .zip(&problems)
                    .map(|(&seed, p)| {
                        let c = OptimizerConfig { seed, ..base.clone() };
                        let init = initial_solutions(10, k, seed);
                        run_method(p, &init, &c).ok().map(|o| {
                            let l = o.trace.last().unwrap();
                            (l.worst, l.average)
                        })
                    })
                    .collect();
                let ok: Option<Vec<(f64, f64)>> = runs.into_iter().collect();
                let summary = ok.map(|v| {
                    let n = v.len() as f64;
                    (v.iter().map(|r| r.0).sum::<f64>() / n, v.iter().map(|r| r.1).sum::<f64>() / n)
                });
                (base, summary)
            })
            .collect();
        let mut best: Option<&(OptimizerConfig, Option<(f64, f64)>)> = None;
        for r in &results {
            let label = match r.0.smoothing.schedule {
                SmoothingSchedule::ExponentialDecay { rate, .. } if method == Method::StchSet => {
                    format!("eta={:<6} mu_outer={:<5} rate={rate}", r.0.step_size, r.0.smoothing.mu_outer)
                }
                _ => format!("eta={}", r.0.step_size),
            };
            match r.1 {
                Some((w, a)) => println!("{family} {method:<8} {label}: worst {w:.4e} average {a:.4e}"),
                None => println!("{family} {method:<8} {label}: diverged"),
            }
            if let Some((w, _)) = r.1 {
                if best.is_none_or(|b| w < b.1.unwrap().0) {
                    best = Some(r);
                }
            }
        }
        if let Some((c, Some((w, a)))) = best {
            println!(
                "SELECTED {family} {method}: step_size={} smoothing={} worst {w:.4e} average {a:.4e}",
                c.step_size,
                serde_json::to_string(&c.smoothing).unwrap()
            );
        }
    }
}
