use std::path::PathBuf;

use thiserror::Error;

/// Errors from configuration, experiment execution, and comparison.
#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("config file {path} does not exist")]
    MissingFile { path: PathBuf },

    #[error("config is not valid: {reason}")]
    BadConfig { reason: String },

    #[error("config value out of range: {reason}")]
    RangeViolation { reason: String },

    #[error("methods share no seeds; comparison needs overlapping seed sets")]
    SeedMismatch,

    #[error("metrics series is empty")]
    EmptySeries,

    #[error(transparent)]
    Env(#[from] semcom_env::EnvError),

    #[error(transparent)]
    Learner(#[from] semcom_learner::LearnerError),

    #[error("I/O failed: {0}")]
    Io(#[from] std::io::Error),

    #[error("CSV handling failed: {0}")]
    Csv(#[from] csv::Error),

    #[error("JSON handling failed: {0}")]
    Json(#[from] serde_json::Error),
}

impl HarnessError {
    /// Process exit code family: configuration problems, environment
    /// problems, learner problems, then I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::MissingFile { .. }
            | HarnessError::BadConfig { .. }
            | HarnessError::RangeViolation { .. } => 2,
            HarnessError::Env(_) => 3,
            HarnessError::Learner(_) => 4,
            HarnessError::SeedMismatch | HarnessError::EmptySeries => 5,
            HarnessError::Io(_) | HarnessError::Csv(_) | HarnessError::Json(_) => 6,
        }
    }
}
