//! Scenario worlds and their dynamics: reproducible generation of events,
//! tasks, belief costs, hidden semantic sets, and the two transition
//! regimes; plus the episode lifecycle and the absorbing-chain oracle for
//! expected episode length under perfect play.
//!
//! A [`Scenario`] is immutable after generation and freely shareable.
//! [`WorldState`] and the RNG are single-owner mutable state: one episode
//! stream per run, with parallelism achieved by independent (scenario,
//! seed) replicas.

mod analysis;
mod dynamics;
mod error;
mod generate;
mod io;
mod scenario;

pub use analysis::expected_perfect_length;
pub use dynamics::{
    begin_episode, is_perfect, listener_reconstruct, step, EndReason, StepOutcome, WorldState,
};
pub use error::EnvError;
pub use generate::generate_scenario;
pub use io::{read_scenario, scenario_to_string, write_scenario};
pub use scenario::{
    GroundTruth, Scenario, ScenarioConfig, TransitionModel, SCENARIO_FORMAT_VERSION,
};
