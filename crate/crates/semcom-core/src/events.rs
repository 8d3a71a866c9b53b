use std::fmt;

use serde::{Deserialize, Serialize};

/// Index of one event within a scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EventId(pub u32);

impl EventId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for EventId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// Index of one task type within a scenario.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TaskId(pub u32);

impl TaskId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for TaskId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{}", self.0)
    }
}

/// The three kinds partition the event set: initial events open a task,
/// final events close one, everything in between is intermediary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EventKind {
    Initial,
    Intermediary,
    Final,
}

/// One environment state as observed by the speaker.
///
/// Every event belongs to exactly one task chain; sharing across tasks is
/// not supported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Event {
    pub id: EventId,
    pub kind: EventKind,
    pub owner_task: TaskId,
}

/// A task's identity: fixed initial and final events plus an ordered chain
/// of intermediary events.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaskType {
    pub id: TaskId,
    pub initial_event: EventId,
    pub final_event: EventId,
    /// Chain positions 1..=K; position i is `intermediary_chain[i - 1]`.
    pub intermediary_chain: Vec<EventId>,
    /// Realizable episode lengths `(min, max)`, in slots.
    pub length_bounds: (u32, u32),
}

impl TaskType {
    /// Chain position (1-based) of an intermediary event, if it belongs to
    /// this task's chain.
    pub fn chain_position(&self, event: EventId) -> Option<usize> {
        self.intermediary_chain.iter().position(|&e| e == event).map(|i| i + 1)
    }
}
