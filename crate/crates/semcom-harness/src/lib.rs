//! Experiment harness: configuration files, the `semcom` CLI's engine,
//! metrics CSV output, and the method-comparison pipeline.

mod config;
mod csv_io;
mod error;
mod runner;
mod summary;

pub use config::{parse_config, ExperimentConfig, LearnerSection, RunSection};
pub use csv_io::{read_metrics_csv, write_metrics_csv};
pub use error::HarnessError;
pub use runner::{run_experiment, run_seed, SeedRun};
pub use summary::{
    compare_methods, summarize_method, summarize_seed, window_average, Comparison, RunSummary,
    SeedSummary, WindowPoint,
};
