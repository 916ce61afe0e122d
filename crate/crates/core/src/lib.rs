//! Few-for-many multi-objective optimization: find a small set of `K`
//! solutions that together cover `m >> K` objectives, by smooth Tchebycheff
//! set scalarization and its baselines.

pub mod error;
pub mod experiment;
pub mod metrics;
pub mod model;
pub mod optimize;
pub mod problems;
pub mod scalarize;
pub mod seed;

pub use error::{Error, Result};
pub use model::{
    evaluate_matrix, evaluate_with_gradients, ObjectiveGradients, ObjectiveMatrix, PreferenceVector, Problem,
    Smoothing, SmoothingConfig, SmoothingSchedule, SolutionSet,
};
