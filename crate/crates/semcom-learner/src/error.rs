use semcom_core::EventId;
use thiserror::Error;

/// Errors from the learning layer.
#[derive(Debug, Error)]
pub enum LearnerError {
    #[error("no Q entry for state {state} action index {action}")]
    UnknownStateAction { state: EventId, action: usize },

    #[error("base set has {0} beliefs; pruning needs at least 2")]
    DegenerateBeliefSet(usize),

    #[error("action-space inputs have the wrong cardinality: {reason}")]
    CardinalityMismatch { reason: String },

    #[error("action is not a subset of the base set")]
    ActionNotSubset,

    #[error("removing the action would leave an empty description")]
    EmptyResult,

    #[error("flat action space would hold {size} actions, above the 2^20 limit")]
    ActionSpaceTooLarge { size: u128 },

    #[error(transparent)]
    Env(#[from] semcom_env::EnvError),

    #[error(transparent)]
    Core(#[from] semcom_core::CoreError),
}
