//! Value types and pure arithmetic for belief-based event descriptions:
//! belief sets, per-slot and per-episode transmission costs, and the
//! cost/time objective they feed.
//!
//! Everything here is an immutable value with pure operations; there is no
//! randomness and no I/O, so all types are freely shareable across threads.

mod belief;
mod cost;
mod error;
mod events;

pub use belief::{subsets_of_cardinality, BeliefId, BeliefSet, MAX_BELIEFS};
pub use cost::{
    description_cost, episode_cost, normalize_costs, objective_contribution,
    satisfies_cardinality_constraint, CostParams, CostVector,
};
pub use error::CoreError;
pub use events::{Event, EventId, EventKind, TaskId, TaskType};
