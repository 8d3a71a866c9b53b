//! Learning the most abstract perfect description of every event: tabular
//! Q-learning driven by a top-down pruning curriculum, next to two
//! baselines (single-phase flat RL over the whole constrained subset
//! lattice, and the non-semantic full-language transmitter).
//!
//! One learner instance owns one environment walk and one RNG and is
//! strictly single-threaded; runs parallelize as independent (scenario,
//! seed) replicas over the shared immutable [`semcom_env::Scenario`].

mod curriculum;
mod error;
mod eval;
mod flat;
mod hyper;
mod metrics;
mod qtable;
mod reward;

pub use curriculum::{
    action_space_step1, action_space_step_l, description_from_action, extract_pruned_set,
    run_cl, select_optimal_description, CurriculumRun, CurriculumState, PruneExtraction,
};
pub use error::LearnerError;
pub use eval::{evaluate_descriptions, run_non_semantic};
pub use flat::{flat_action_catalog, run_flat_rl, FlatRun};
pub use hyper::Hyperparams;
pub use metrics::{Method, MetricRecord};
pub use qtable::{q_update, QRow, QTable};
pub use reward::reward;
