//! Two-sided Wilcoxon rank-sum test.
//!
//! Small samples use the exact permutation distribution of the (midrank)
//! rank sum; larger ones use the normal approximation with tie and
//! continuity corrections.

use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;

use crate::error::{Error, Result};

/// Largest per-sample size for which the exact distribution is used.
pub const EXACT_MAX_SAMPLE: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    ABetter,
    BBetter,
    NoDifference,
}

impl Comparison {
    /// Paper-style symbol from the point of view of sample `a`:
    /// `+` when `a` is significantly better (lower).
    pub fn symbol(self) -> &'static str {
        match self {
            Comparison::ABetter => "+",
            Comparison::BBetter => "-",
            Comparison::NoDifference => "=",
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Comparison::ABetter => Comparison::BBetter,
            Comparison::BBetter => Comparison::ABetter,
            Comparison::NoDifference => Comparison::NoDifference,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RankSumTest {
    pub outcome: Comparison,
    pub p_value: f64,
    /// Rank sum of sample `a` (midranks for ties).
    pub rank_sum: f64,
    pub exact: bool,
}

/// Lower values are better. A significant result is attributed to the sample
/// with the smaller median; equal medians report no difference.
pub fn wilcoxon_rank_sum(a: &[f64], b: &[f64], alpha: f64) -> Result<RankSumTest> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Empty("rank-sum sample"));
    }
    crate::error::check_finite("rank-sum sample", a)?;
    crate::error::check_finite("rank-sum sample", b)?;
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter(format!("significance level must be in (0, 1), got {alpha}")));
    }
    let (na, nb) = (a.len(), b.len());
    let n = na + nb;
    let mut pooled: Vec<(f64, bool)> = a.iter().map(|&v| (v, true)).chain(b.iter().map(|&v| (v, false))).collect();
    pooled.sort_by(|x, y| x.0.total_cmp(&y.0));

    // Doubled midranks keep everything in integers.
    let mut doubled = vec![0u64; n];
    let mut tie_term = 0.0;
    let mut start = 0;
    while start < n {
        let mut end = start;
        while end + 1 < n && pooled[end + 1].0 == pooled[start].0 {
            end += 1;
        }
        let t = (end - start + 1) as f64;
        tie_term += t * t * t - t;
        for r in doubled.iter_mut().take(end + 1).skip(start) {
            *r = (start + end + 2) as u64;
        }
        start = end + 1;
    }
    if tie_term == (n * n * n - n) as f64 {
        return Ok(RankSumTest {
            outcome: Comparison::NoDifference,
            p_value: 1.0,
            rank_sum: (na * (n + 1)) as f64 / 2.0,
            exact: na <= EXACT_MAX_SAMPLE && nb <= EXACT_MAX_SAMPLE,
        });
    }
    let w2: u64 = pooled.iter().zip(&doubled).filter(|(p, _)| p.1).map(|(_, &r)| r).sum();
    let rank_sum = w2 as f64 / 2.0;

    let exact = na <= EXACT_MAX_SAMPLE && nb <= EXACT_MAX_SAMPLE;
    let p_value = if exact {
        exact_p_value(&doubled, na, w2)
    } else {
        normal_p_value(rank_sum, na, nb, tie_term)
    };
    let outcome = if p_value < alpha {
        let (ma, mb) = (median(a), median(b));
        if ma < mb {
            Comparison::ABetter
        } else if mb < ma {
            Comparison::BBetter
        } else {
            Comparison::NoDifference
        }
    } else {
        Comparison::NoDifference
    };
    Ok(RankSumTest {
        outcome,
        p_value,
        rank_sum,
        exact,
    })
}

/// `P(|W - E W| >= |w - E W|)` over all `C(n, na)` equally likely subsets.
fn exact_p_value(doubled: &[u64], na: usize, w2: u64) -> f64 {
    let total: u64 = doubled.iter().sum();
    let max_sum = total as usize;
    // counts[j][s]: number of j-subsets of the ranks seen so far with doubled sum s.
    let mut counts = vec![vec![0.0f64; max_sum + 1]; na + 1];
    counts[0][0] = 1.0;
    for &r in doubled {
        let r = r as usize;
        for j in (1..=na).rev() {
            let (lower, upper) = counts.split_at_mut(j);
            let prev = &lower[j - 1];
            let cur = &mut upper[0];
            for s in (r..=max_sum).rev() {
                cur[s] += prev[s - r];
            }
        }
    }
    // E[2W] = na * total / n; compare deviations scaled by n to stay integral.
    let n = doubled.len() as i128;
    let centre = na as i128 * total as i128;
    let observed = (n * w2 as i128 - centre).abs();
    let (mut extreme, mut all) = (0.0, 0.0);
    for (s, &c) in counts[na].iter().enumerate() {
        if c == 0.0 {
            continue;
        }
        all += c;
        if (n * s as i128 - centre).abs() >= observed {
            extreme += c;
        }
    }
    (extreme / all).min(1.0)
}

fn normal_p_value(rank_sum: f64, na: usize, nb: usize, tie_term: f64) -> f64 {
    let (fa, fb) = (na as f64, nb as f64);
    let n = fa + fb;
    let u = rank_sum - fa * (fa + 1.0) / 2.0;
    let mean = fa * fb / 2.0;
    let var = fa * fb / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
    let z = ((u - mean).abs() - 0.5).max(0.0) / var.sqrt();
    erfc(z / std::f64::consts::SQRT_2).min(1.0)
}

fn median(v: &[f64]) -> f64 {
    let mut s = v.to_vec();
    s.sort_by(f64::total_cmp);
    let h = s.len() / 2;
    if s.len() % 2 == 1 {
        s[h]
    } else {
        0.5 * (s[h - 1] + s[h])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Brute-force permutation p-value over explicit midranks.
    fn enumerate_p(a: &[f64], b: &[f64]) -> f64 {
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
        let expected = na as f64 * (n as f64 + 1.0) / 2.0;
        let observed: f64 = ranks[..na].iter().sum::<f64>() - expected;
        let (mut hits, mut total) = (0u64, 0u64);
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != na {
                continue;
            }
            let s: f64 = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| ranks[i]).sum();
            total += 1;
            if (s - expected).abs() >= observed.abs() - 1e-9 {
                hits += 1;
            }
        }
        hits as f64 / total as f64
    }

    #[test]
    fn identical_samples_are_equal() {
        let a = [0.3, 1.2, 0.7, 2.0, 0.1];
        let t = wilcoxon_rank_sum(&a, &a, 0.05).unwrap();
        assert_eq!(t.outcome, Comparison::NoDifference);
        assert!(t.p_value > 0.9);
    }

    #[test]
    fn all_values_equal_gives_unit_p() {
        let t = wilcoxon_rank_sum(&[2.0; 12], &[2.0; 20], 0.05).unwrap();
        assert_eq!(t.outcome, Comparison::NoDifference);
        assert_eq!(t.p_value, 1.0);
    }

    #[test]
    fn complete_separation() {
        let a: Vec<f64> = (1..=50).map(f64::from).collect();
        let b: Vec<f64> = (101..=150).map(f64::from).collect();
        let t = wilcoxon_rank_sum(&a, &b, 0.05).unwrap();
        assert_eq!(t.outcome, Comparison::ABetter);
        assert!(t.p_value < 1e-10);
        assert!(!t.exact);
        let r = wilcoxon_rank_sum(&b, &a, 0.05).unwrap();
        assert_eq!(r.outcome, Comparison::BBetter);
        assert_eq!(r.p_value, t.p_value);
    }

    #[test]
    fn normal_approximation_by_hand() {
        // a = 1..10, b = 6..15 (no ties between them except overlapping values).
        let a: Vec<f64> = (1..=10).map(f64::from).collect();
        let b: Vec<f64> = (6..=15).map(f64::from).collect();
        let t = wilcoxon_rank_sum(&a, &b, 0.05).unwrap();
        // Midranks: 1..5 -> 1..5, values 6..10 appear twice -> 6.5, 8.5, ... 14.5.
        assert_eq!(t.rank_sum, 15.0 + 6.5 + 8.5 + 10.5 + 12.5 + 14.5);
        let u = t.rank_sum - 55.0;
        let var: f64 = 100.0 / 12.0 * (21.0 - 5.0 * 6.0 / 380.0);
        let z = ((u - 50.0f64).abs() - 0.5) / var.sqrt();
        assert!((t.p_value - erfc(z / std::f64::consts::SQRT_2)).abs() < 1e-15);
    }

    #[test]
    fn exact_small_example() {
        // a = {1, 2}, b = {3, 4, 5}: rank sum 3 is the unique minimum of C(5,2)=10,
        // and the mirror sum 9 is equally extreme.
        let t = wilcoxon_rank_sum(&[1.0, 2.0], &[3.0, 4.0, 5.0], 0.05).unwrap();
        assert!(t.exact);
        assert!((t.p_value - 0.2).abs() < 1e-15);
        assert_eq!(t.outcome, Comparison::NoDifference);
    }

    #[test]
    fn exact_matches_enumeration_with_ties() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..300 {
            let na = rng.random_range(1..=EXACT_MAX_SAMPLE);
            let nb = rng.random_range(1..=EXACT_MAX_SAMPLE);
            let draw = |rng: &mut ChaCha8Rng| f64::from(rng.random_range(0..6u8));
            let a: Vec<f64> = (0..na).map(|_| draw(&mut rng)).collect();
            let b: Vec<f64> = (0..nb).map(|_| draw(&mut rng)).collect();
            let t = wilcoxon_rank_sum(&a, &b, 0.05).unwrap();
            let expected = if a.iter().chain(&b).all(|&v| v == a[0]) { 1.0 } else { enumerate_p(&a, &b) };
            assert!((t.p_value - expected).abs() < 1e-12, "{a:?} {b:?}: {} vs {expected}", t.p_value);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(wilcoxon_rank_sum(&[], &[1.0], 0.05).is_err());
        assert!(wilcoxon_rank_sum(&[1.0], &[f64::NAN], 0.05).is_err());
        assert!(wilcoxon_rank_sum(&[1.0], &[2.0], 1.5).is_err());
    }

    #[test]
    fn symbols() {
        assert_eq!(Comparison::ABetter.symbol(), "+");
        assert_eq!(Comparison::NoDifference.symbol(), "=");
        assert_eq!(Comparison::BBetter.symbol(), "-");
    }

    proptest! {
        #[test]
        fn swapping_samples_flips_direction(
            a in proptest::collection::vec(-5.0f64..5.0, 1..30),
            b in proptest::collection::vec(-5.0f64..5.0, 1..30),
            shift in -3.0f64..3.0,
        ) {
            let b: Vec<f64> = b.iter().map(|x| x + shift).collect();
            let ab = wilcoxon_rank_sum(&a, &b, 0.05).unwrap();
            let ba = wilcoxon_rank_sum(&b, &a, 0.05).unwrap();
            prop_assert!((ab.p_value - ba.p_value).abs() <= 1e-12);
            prop_assert_eq!(ab.outcome, ba.outcome.flipped());
            prop_assert!(ab.p_value > 0.0 && ab.p_value <= 1.0);
        }
    }
}
