use serde::{Deserialize, Serialize};

use semcom_core::{BeliefSet, CostVector, Event, EventId, EventKind, TaskType};

use crate::error::EnvError;

/// Format tag written into scenario files.
pub const SCENARIO_FORMAT_VERSION: &str = "semcom-scenario-v1";

/// Generation parameters for a scenario world.
///
/// Defaults match the reference setup: 10 beliefs, 10 tasks, 60 events,
/// raw belief costs in [1, 2], ground-truth sets of 2 to 4 beliefs, and
/// episode lengths from 3 to 6 slots.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScenarioConfig {
    /// Size B of the common language.
    pub belief_count: usize,
    /// Total number of events across all kinds.
    pub event_count: usize,
    /// Number of task types.
    pub task_count: usize,
    /// Raw per-belief cost range, inclusive.
    pub cost_min: f64,
    pub cost_max: f64,
    /// Ground-truth semantic set cardinality range, inclusive.
    pub truth_size_min: usize,
    pub truth_size_max: usize,
    /// Episode length bounds in slots; realized lengths under perfect play
    /// are uniform on this range.
    pub length_min: u32,
    pub length_max: u32,
    /// Probability mass the imperfect-regime matrix keeps on the current
    /// event (stalling).
    pub self_loop_floor: f64,
    /// Whether the imperfect-regime matrix may reach final events. Off by
    /// default: a wrong listener action never completes the task.
    pub imperfect_can_complete: bool,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            belief_count: 10,
            event_count: 60,
            task_count: 10,
            cost_min: 1.0,
            cost_max: 2.0,
            truth_size_min: 2,
            truth_size_max: 4,
            length_min: 3,
            length_max: 6,
            self_loop_floor: 0.3,
            imperfect_can_complete: false,
        }
    }
}

impl ScenarioConfig {
    /// Intermediary chain length per task.
    pub fn intermediaries_per_task(&self) -> usize {
        (self.event_count - 2 * self.task_count) / self.task_count
    }

    pub fn validate(&self) -> Result<(), EnvError> {
        let fail = |reason: String| Err(EnvError::InconsistentConfig { reason });

        if self.belief_count == 0 || self.belief_count > semcom_core::MAX_BELIEFS {
            return fail(format!(
                "belief_count = {} outside [1, {}]",
                self.belief_count,
                semcom_core::MAX_BELIEFS
            ));
        }
        if self.task_count == 0 {
            return fail("task_count must be at least 1".into());
        }
        if self.truth_size_min < 1 || self.truth_size_min > self.truth_size_max {
            return fail(format!(
                "ground-truth size range [{}, {}] is not a valid nonempty range",
                self.truth_size_min, self.truth_size_max
            ));
        }
        if self.truth_size_max > self.belief_count {
            return fail(format!(
                "truth_size_max = {} exceeds belief_count = {}",
                self.truth_size_max, self.belief_count
            ));
        }
        if self.length_min < 3 {
            return fail(format!(
                "length_min = {} below 3, the minimum task length",
                self.length_min
            ));
        }
        if self.length_max < self.length_min {
            return fail(format!(
                "length_max = {} below length_min = {}",
                self.length_max, self.length_min
            ));
        }
        if !(self.cost_min > 0.0) {
            return fail(format!("cost_min = {} must be > 0", self.cost_min));
        }
        if self.cost_max < self.cost_min {
            return fail(format!(
                "cost_max = {} below cost_min = {}",
                self.cost_max, self.cost_min
            ));
        }
        if !(0.0..1.0).contains(&self.self_loop_floor) {
            return fail(format!(
                "self_loop_floor = {} outside [0, 1)",
                self.self_loop_floor
            ));
        }

        let needed_per_task = (self.length_max as usize).saturating_sub(2);
        let min_events = self.task_count * 2 + self.task_count * needed_per_task;
        if self.event_count < min_events {
            return fail(format!(
                "event_count = {} below tasks*2 + tasks*(length_max - 2) = {}",
                self.event_count, min_events
            ));
        }
        if (self.event_count - 2 * self.task_count) % self.task_count != 0 {
            return fail(format!(
                "event_count - 2*task_count = {} must divide evenly into {} tasks",
                self.event_count - 2 * self.task_count,
                self.task_count
            ));
        }
        Ok(())
    }
}

/// Hidden minimal semantic set per event; a description is perfect for an
/// event exactly when it is a superset of this set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroundTruth {
    /// Indexed by event id.
    pub sets: Vec<BeliefSet>,
}

impl GroundTruth {
    pub fn set_for(&self, event: EventId) -> Option<BeliefSet> {
        self.sets.get(event.index()).copied()
    }
}

/// Row-stochastic transition matrices for the two description regimes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransitionModel {
    /// Dynamics when the transmitted description is perfect.
    pub perfect: Vec<Vec<f64>>,
    /// Dynamics when it is not; per non-final row this has strictly more
    /// nonzero entries than the perfect matrix.
    pub imperfect: Vec<Vec<f64>>,
}

impl TransitionModel {
    pub fn event_count(&self) -> usize {
        self.perfect.len()
    }

    pub fn perfect_row(&self, from: EventId) -> &[f64] {
        &self.perfect[from.index()]
    }

    pub fn imperfect_row(&self, from: EventId) -> &[f64] {
        &self.imperfect[from.index()]
    }
}

/// A generated world: the common language's costs, the event/task graph,
/// the hidden semantic sets, and both transition regimes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub version: String,
    pub seed: u64,
    pub params: ScenarioConfig,
    pub beliefs: CostVector,
    pub events: Vec<Event>,
    pub tasks: Vec<TaskType>,
    pub ground_truth: GroundTruth,
    pub transitions: TransitionModel,
}

impl Scenario {
    pub fn belief_count(&self) -> usize {
        self.beliefs.len()
    }

    pub fn event_count(&self) -> usize {
        self.events.len()
    }

    pub fn event(&self, id: EventId) -> Result<&Event, EnvError> {
        self.events.get(id.index()).ok_or(EnvError::UnknownEvent(id))
    }

    pub fn task(&self, id: semcom_core::TaskId) -> Result<&TaskType, EnvError> {
        self.tasks.get(id.index()).ok_or(EnvError::UnknownTask(id))
    }

    /// The full common language.
    pub fn full_belief_set(&self) -> BeliefSet {
        BeliefSet::full(self.belief_count())
    }

    /// Event ids whose kind is not `Final`, i.e. the events the speaker can
    /// observe inside an active episode and must learn to describe.
    pub fn describable_events(&self) -> impl Iterator<Item = EventId> + '_ {
        self.events
            .iter()
            .filter(|e| e.kind != EventKind::Final)
            .map(|e| e.id)
    }

    /// Checks every structural invariant; generation bugs and hand-edited
    /// scenario files surface here.
    pub fn validate(&self) -> Result<(), EnvError> {
        let fail = |reason: String| Err(EnvError::InvalidScenario { reason });
        let n = self.events.len();

        if self.version != SCENARIO_FORMAT_VERSION {
            return fail(format!("unsupported format version {:?}", self.version));
        }
        if n != self.params.event_count {
            return fail(format!(
                "event list has {} entries, config says {}",
                n, self.params.event_count
            ));
        }
        if self.beliefs.len() != self.params.belief_count {
            return fail("belief cost vector length differs from config".into());
        }
        for (i, event) in self.events.iter().enumerate() {
            if event.id.index() != i {
                return fail(format!("event at position {i} has id {}", event.id));
            }
        }
        if self.ground_truth.sets.len() != n {
            return fail("ground-truth table length differs from event count".into());
        }
        for (i, set) in self.ground_truth.sets.iter().enumerate() {
            let card = set.cardinality();
            if card < self.params.truth_size_min || card > self.params.truth_size_max {
                return fail(format!(
                    "ground truth of event {i} has {card} beliefs, outside [{}, {}]",
                    self.params.truth_size_min, self.params.truth_size_max
                ));
            }
            if !set.is_subset_of(self.full_belief_set()) {
                return fail(format!("ground truth of event {i} uses out-of-range beliefs"));
            }
        }

        // Tasks own disjoint event sets, with fixed initial/final events.
        let mut owner_seen = vec![false; n];
        for task in &self.tasks {
            let mut claim = |id: EventId, kind: EventKind| -> Result<(), EnvError> {
                let event = self.event(id)?;
                if event.kind != kind {
                    return Err(EnvError::InvalidScenario {
                        reason: format!("event {id} of task {} has kind {:?}", task.id, event.kind),
                    });
                }
                if event.owner_task != task.id {
                    return Err(EnvError::InvalidScenario {
                        reason: format!("event {id} is not owned by task {}", task.id),
                    });
                }
                if std::mem::replace(&mut owner_seen[id.index()], true) {
                    return Err(EnvError::InvalidScenario {
                        reason: format!("event {id} appears in two task chains"),
                    });
                }
                Ok(())
            };
            claim(task.initial_event, EventKind::Initial)?;
            claim(task.final_event, EventKind::Final)?;
            for &e in &task.intermediary_chain {
                claim(e, EventKind::Intermediary)?;
            }
            if (task.intermediary_chain.len() as u32) < task.length_bounds.1.saturating_sub(2) {
                return fail(format!(
                    "task {} chain shorter than length_max - 2",
                    task.id
                ));
            }
        }
        if owner_seen.iter().any(|&seen| !seen) {
            return fail("some events belong to no task chain".into());
        }

        // Row stochasticity and the sparsity ordering between regimes.
        for (name, matrix) in
            [("perfect", &self.transitions.perfect), ("imperfect", &self.transitions.imperfect)]
        {
            if matrix.len() != n || matrix.iter().any(|row| row.len() != n) {
                return fail(format!("{name} matrix is not {n}x{n}"));
            }
            for (i, row) in matrix.iter().enumerate() {
                if row.iter().any(|&p| !(0.0..=1.0).contains(&p)) {
                    return fail(format!("{name} row {i} has entries outside [0, 1]"));
                }
                let sum: f64 = row.iter().sum();
                if (sum - 1.0).abs() > 1e-9 {
                    return fail(format!("{name} row {i} sums to {sum}, expected 1"));
                }
            }
        }
        for event in &self.events {
            if event.kind == EventKind::Final {
                continue;
            }
            let i = event.id.index();
            let nnz = |row: &[f64]| row.iter().filter(|&&p| p > 0.0).count();
            let p_nnz = nnz(&self.transitions.perfect[i]);
            let pt_nnz = nnz(&self.transitions.imperfect[i]);
            if pt_nnz <= p_nnz {
                return fail(format!(
                    "imperfect row {i} has {pt_nnz} nonzeros, perfect has {p_nnz}; expected strictly more"
                ));
            }
        }
        Ok(())
    }
}
