use rand::Rng;
use serde::{Deserialize, Serialize};

use semcom_core::{BeliefSet, EventId, EventKind, TaskId};

use crate::error::EnvError;
use crate::scenario::Scenario;

/// Why an episode ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EndReason {
    /// The task's final event was observed.
    Completed,
    /// The episode was cut off at the slot cap and scored at that length.
    Capped,
    /// Reserved for dynamics where reaching an initial event terminates the
    /// episode; the default dynamics continue through restarts instead.
    Restarted,
}

/// Mutable state of one in-flight episode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorldState {
    pub episode_index: u64,
    /// Slot of the event currently observed; the first slot is 1.
    pub slot_index: u32,
    pub current_event: EventId,
    pub current_task: TaskId,
    /// Mid-episode transitions back to the task's initial event.
    pub restarts_this_episode: u32,
    /// Transitions taken so far; `slot_index == slots_elapsed + 1`.
    pub slots_elapsed: u32,
}

impl WorldState {
    /// Whether the speaker can still act: the current event is not final
    /// and the slot cap has not fired.
    pub fn is_active(&self, scenario: &Scenario, slot_cap: u32) -> bool {
        self.slot_index < slot_cap
            && scenario
                .event(self.current_event)
                .map(|e| e.kind != EventKind::Final)
                .unwrap_or(false)
    }
}

/// Result of one slot's transmission and transition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StepOutcome {
    pub next_event: EventId,
    /// What the listener reconstructed from the transmitted description.
    pub listener_event: EventId,
    pub episode_ended: bool,
    pub ended_by: Option<EndReason>,
}

/// Whether `desc` perfectly describes `event`: it must cover the event's
/// hidden semantic set. The full language is therefore always perfect.
pub fn is_perfect(desc: BeliefSet, event: EventId, scenario: &Scenario) -> Result<bool, EnvError> {
    let truth = scenario
        .ground_truth
        .set_for(event)
        .ok_or(EnvError::UnknownEvent(event))?;
    Ok(desc.is_superset_of(truth))
}

/// The listener's reconstruction rule: a perfect description reproduces the
/// speaker's event; anything else lands uniformly on one of the other events.
pub fn listener_reconstruct<R: Rng>(
    desc: BeliefSet,
    speaker_event: EventId,
    scenario: &Scenario,
    rng: &mut R,
) -> Result<EventId, EnvError> {
    if is_perfect(desc, speaker_event, scenario)? {
        return Ok(speaker_event);
    }
    let n = scenario.event_count();
    let draw = rng.gen_range(0..n - 1);
    let picked = if draw >= speaker_event.index() { draw + 1 } else { draw };
    Ok(EventId(picked as u32))
}

/// Starts episode `episode_index` on a uniformly drawn task.
pub fn begin_episode<R: Rng>(scenario: &Scenario, episode_index: u64, rng: &mut R) -> WorldState {
    let task = &scenario.tasks[rng.gen_range(0..scenario.tasks.len())];
    WorldState {
        episode_index,
        slot_index: 1,
        current_event: task.initial_event,
        current_task: task.id,
        restarts_this_episode: 0,
        slots_elapsed: 0,
    }
}

fn sample_row<R: Rng>(row: &[f64], rng: &mut R) -> EventId {
    let u: f64 = rng.gen();
    let mut acc = 0.0;
    let mut last_nonzero = 0;
    for (i, &p) in row.iter().enumerate() {
        if p > 0.0 {
            acc += p;
            last_nonzero = i;
            if u < acc {
                return EventId(i as u32);
            }
        }
    }
    // Row sums to 1 within tolerance; rounding can leave u just above acc.
    EventId(last_nonzero as u32)
}

/// Transmits `desc` for the current event and advances one slot.
///
/// The next event is drawn from the perfect-regime row when the description
/// covers the event's semantic set and from the imperfect-regime row
/// otherwise. Landing on an initial event counts as a restart but the
/// episode continues from there; only a final event or the slot cap ends it.
///
/// Two RNG draws happen on the imperfect path (listener, then transition)
/// and one on the perfect path, in that fixed order.
pub fn step<R: Rng>(
    state: &mut WorldState,
    desc: BeliefSet,
    scenario: &Scenario,
    slot_cap: u32,
    rng: &mut R,
) -> Result<StepOutcome, EnvError> {
    if desc.is_empty() {
        return Err(EnvError::EmptyDescription);
    }
    if !state.is_active(scenario, slot_cap) {
        return Err(EnvError::EpisodeNotActive);
    }

    let current = state.current_event;
    let perfect = is_perfect(desc, current, scenario)?;
    let listener_event = if perfect {
        current
    } else {
        listener_reconstruct(desc, current, scenario, rng)?
    };
    let row = if perfect {
        scenario.transitions.perfect_row(current)
    } else {
        scenario.transitions.imperfect_row(current)
    };
    let next_event = sample_row(row, rng);
    let next_kind = scenario.event(next_event)?.kind;

    state.slots_elapsed += 1;
    state.slot_index += 1;
    state.current_event = next_event;
    if next_kind == EventKind::Initial {
        state.restarts_this_episode += 1;
    }

    let ended_by = if next_kind == EventKind::Final {
        Some(EndReason::Completed)
    } else if state.slot_index >= slot_cap {
        Some(EndReason::Capped)
    } else {
        None
    };

    Ok(StepOutcome {
        next_event,
        listener_event,
        episode_ended: ended_by.is_some(),
        ended_by,
    })
}
