use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::metrics::wilcoxon_rank_sum;
use crate::optimize::Method;

use super::format::fmt_sci;
use super::run::{group_cells, read_runs_csv, RunRow, RunStatus};

/// Every other method is compared against this one.
pub const REFERENCE_METHOD: Method = Method::StchSet;

const ALPHA: f64 = 0.05;

#[derive(Debug, Clone, PartialEq)]
pub struct StatsRow {
    pub k: usize,
    pub metric: &'static str,
    pub method: Method,
    /// `+` when the reference method is significantly better, `=`, `-`, or
    /// `n/a` when either cell has fewer than two successful runs.
    pub symbol: &'static str,
    pub p_value: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StatsTable {
    pub rows: Vec<StatsRow>,
    /// `(method, metric, plus, equal, minus)` in table order.
    pub totals: Vec<(Method, &'static str, usize, usize, usize)>,
}

fn sample(cell: &[&RunRow], metric: &str) -> Vec<f64> {
    cell.iter()
        .filter(|r| r.status == RunStatus::Ok)
        .filter_map(|r| if metric == "worst" { r.worst } else { r.average })
        .collect()
}

pub fn compute_stats(rows: &[RunRow]) -> Result<StatsTable> {
    let cells = group_cells(rows);
    let methods: Vec<Method> = {
        let mut v: Vec<Method> = Vec::new();
        for ((m, _), _) in &cells {
            if !v.contains(m) {
                v.push(*m);
            }
        }
        v
    };
    if methods.len() < 2 {
        return Err(Error::Config("statistics need at least two methods".into()));
    }
    if !methods.contains(&REFERENCE_METHOD) {
        return Err(Error::Config(format!("statistics need {REFERENCE_METHOD} results to compare against")));
    }
    let mut ks: Vec<usize> = cells.iter().map(|((_, k), _)| *k).collect();
    ks.dedup();
    let mut seen = Vec::new();
    ks.retain(|k| {
        let fresh = !seen.contains(k);
        seen.push(*k);
        fresh
    });

    let mut out = Vec::new();
    for &k in &ks {
        let find = |m: Method| cells.iter().find(|((cm, ck), _)| *cm == m && *ck == k).map(|(_, v)| v.as_slice());
        let Some(reference) = find(REFERENCE_METHOD) else { continue };
        for metric in ["worst", "average"] {
            let a = sample(reference, metric);
            for &method in methods.iter().filter(|&&m| m != REFERENCE_METHOD) {
                let Some(cell) = find(method) else { continue };
                let b = sample(cell, metric);
                let (symbol, p_value) = if a.len() < 2 || b.len() < 2 {
                    ("n/a", None)
                } else {
                    let t = wilcoxon_rank_sum(&a, &b, ALPHA)?;
                    (t.outcome.symbol(), Some(t.p_value))
                };
                out.push(StatsRow {
                    k,
                    metric,
                    method,
                    symbol,
                    p_value,
                });
            }
        }
    }
    let mut totals = Vec::new();
    for &method in methods.iter().filter(|&&m| m != REFERENCE_METHOD) {
        for metric in ["worst", "average"] {
            let count = |s: &str| out.iter().filter(|r| r.method == method && r.metric == metric && r.symbol == s).count();
            totals.push((method, metric, count("+"), count("="), count("-")));
        }
    }
    Ok(StatsTable { rows: out, totals })
}

impl StatsTable {
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(["K", "metric", "method", "symbol", "p_value"])?;
        for r in &self.rows {
            w.write_record([
                r.k.to_string(),
                r.metric.to_string(),
                r.method.to_string(),
                r.symbol.to_string(),
                r.p_value.map(fmt_sci).unwrap_or_default(),
            ])?;
        }
        for (method, metric, p, e, m) in &self.totals {
            w.write_record(["all".to_string(), metric.to_string(), method.to_string(), format!("{p}/{e}/{m}"), String::new()])?;
        }
        w.flush()?;
        Ok(())
    }

    /// Plain-text table: one line per cell, then the `+/=/-` tallies.
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{:<4} {:<8} {:<9} {:<4} p-value", "K", "metric", "method", "sym");
        for r in &self.rows {
            let p = r.p_value.map(fmt_sci).unwrap_or_else(|| "-".into());
            let _ = writeln!(s, "{:<4} {:<8} {:<9} {:<4} {p}", r.k, r.metric, r.method.as_str(), r.symbol);
        }
        let _ = writeln!(s, "rank-sum summary vs {REFERENCE_METHOD} (+/=/-):");
        for (method, metric, p, e, m) in &self.totals {
            let _ = writeln!(s, "  {:<9} {:<8} {p}/{e}/{m}", method.as_str(), metric);
        }
        s
    }
}

/// Recomputes the statistics from `runs.csv` in `results_dir`, rewrites
/// `stats.csv` and returns the table.
pub fn cmd_stats(results_dir: &Path) -> Result<StatsTable> {
    let path = results_dir.join(super::RUNS_CSV);
    if !path.exists() {
        return Err(Error::Config(format!("{} not found", path.display())));
    }
    let rows = read_runs_csv(&path)?;
    let table = compute_stats(&rows)?;
    table.write_csv(&results_dir.join(super::STATS_CSV))?;
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(method: Method, k: usize, run: usize, worst: f64, average: f64) -> RunRow {
        RunRow {
            method,
            k,
            run,
            seed: run as u64,
            status: RunStatus::Ok,
            worst: Some(worst),
            average: Some(average),
            error: String::new(),
        }
    }

    fn synthetic(shift: f64, runs: usize) -> Vec<RunRow> {
        let mut rows = Vec::new();
        for k in [3, 5] {
            for r in 0..runs {
                let w = 1.0 + 0.1 * r as f64 + k as f64;
                let a = 0.5 + 0.05 * r as f64;
                rows.push(row(Method::StchSet, k, r, w, a));
                rows.push(row(Method::Ls, k, r, w + shift, a + shift));
                rows.push(row(Method::TchSet, k, r, w, a));
            }
        }
        rows
    }

    #[test]
    fn separated_and_identical_samples() {
        let t = compute_stats(&synthetic(100.0, 10)).unwrap();
        for r in &t.rows {
            match r.method {
                Method::Ls => assert_eq!(r.symbol, "+"),
                Method::TchSet => assert_eq!(r.symbol, "="),
                _ => unreachable!(),
            }
        }
        assert!(t.totals.contains(&(Method::Ls, "worst", 2, 0, 0)));
        assert!(t.totals.contains(&(Method::TchSet, "average", 0, 2, 0)));
    }

    #[test]
    fn totals_equal_symbol_tallies() {
        let mut rows = synthetic(0.3, 8);
        rows.extend(synthetic(-50.0, 8).into_iter().filter(|r| r.method == Method::Ls).map(|mut r| {
            r.method = Method::Som;
            r
        }));
        let t = compute_stats(&rows).unwrap();
        for (method, metric, p, e, m) in &t.totals {
            let tally = |s: &str| t.rows.iter().filter(|r| r.method == *method && r.metric == *metric && r.symbol == s).count();
            assert_eq!((*p, *e, *m), (tally("+"), tally("="), tally("-")));
        }
        assert!(t.totals.contains(&(Method::Som, "worst", 0, 0, 2)));
    }

    #[test]
    fn too_few_runs_are_unavailable() {
        let t = compute_stats(&synthetic(100.0, 1)).unwrap();
        assert!(t.rows.iter().all(|r| r.symbol == "n/a" && r.p_value.is_none()));
        assert!(t.totals.iter().all(|&(_, _, p, e, m)| p + e + m == 0));
    }

    #[test]
    fn failed_runs_are_left_out_of_samples() {
        let mut rows = synthetic(100.0, 3);
        for r in rows.iter_mut().filter(|r| r.method == Method::Ls && r.run > 0) {
            r.status = RunStatus::Failed;
            r.worst = None;
            r.average = None;
        }
        let t = compute_stats(&rows).unwrap();
        assert!(t.rows.iter().filter(|r| r.method == Method::Ls).all(|r| r.symbol == "n/a"));
    }

    #[test]
    fn needs_reference_and_two_methods() {
        let only: Vec<RunRow> = synthetic(1.0, 3).into_iter().filter(|r| r.method == Method::StchSet).collect();
        assert!(compute_stats(&only).is_err());
        let no_ref: Vec<RunRow> = synthetic(1.0, 3).into_iter().filter(|r| r.method != Method::StchSet).collect();
        assert!(compute_stats(&no_ref).is_err());
    }
}
