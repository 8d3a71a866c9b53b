use semcom_core::{EventId, TaskId};
use thiserror::Error;

/// Errors from scenario generation, dynamics, and scenario file I/O.
#[derive(Debug, Error)]
pub enum EnvError {
    #[error("inconsistent generation config: {reason}")]
    InconsistentConfig { reason: String },

    #[error("event {0} does not exist in this scenario")]
    UnknownEvent(EventId),

    #[error("task {0} does not exist in this scenario")]
    UnknownTask(TaskId),

    #[error("episode is not active; begin a new episode before stepping")]
    EpisodeNotActive,

    #[error("description must contain at least one belief")]
    EmptyDescription,

    #[error("final event of task {0} is unreachable under the perfect-regime matrix")]
    NonAbsorbing(TaskId),

    #[error("scenario invariant violated: {reason}")]
    InvalidScenario { reason: String },

    #[error("scenario file I/O failed: {0}")]
    Io(#[from] std::io::Error),

    #[error("scenario file is not valid: {0}")]
    Format(#[from] serde_json::Error),
}
