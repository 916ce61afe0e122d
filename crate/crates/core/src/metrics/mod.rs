//! Evaluation metrics, the min-norm stationarity certificate and the rank-sum
//! comparison test.

mod min_norm;
mod summary;
mod wilcoxon;

pub use min_norm::{min_norm_convex_combination, MinNormResult, DEFAULT_MIN_NORM_ITERS};
pub use summary::{per_objective_best, worst_and_average, RunRecord};
pub use wilcoxon::{wilcoxon_rank_sum, Comparison, RankSumTest, EXACT_MAX_SAMPLE};
