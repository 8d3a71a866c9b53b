use thiserror::Error;

/// Errors from the value-type and arithmetic layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoreError {
    #[error("belief cost at index {index} is {value}, expected > 0")]
    NonPositiveCost { index: usize, value: f64 },

    #[error("cost vector must contain at least one belief")]
    EmptyCostVector,

    #[error("description must contain at least one belief")]
    EmptyDescription,

    #[error("episode must contain at least one slot cost")]
    EmptyEpisode,

    #[error("episode length {length} is below the minimum task length of 3")]
    LengthBelowMinimum { length: u32 },

    #[error("requested cardinality {requested} outside [0, {available}]")]
    CardinalityOutOfRange { requested: usize, available: usize },
}
