use std::collections::BTreeMap;

use semcom_core::{BeliefSet, EventId};

use crate::error::LearnerError;
use crate::hyper::Hyperparams;

/// One state's slice of the table: the action catalog for the current
/// curriculum step plus Q values and visit counters aligned to it, and the
/// per-action transmitted-description cost (known to the speaker up front).
#[derive(Debug, Clone, PartialEq)]
pub struct QRow {
    pub catalog: Vec<BeliefSet>,
    /// Slot cost of the description each action transmits.
    pub desc_costs: Vec<f64>,
    pub values: Vec<f64>,
    pub visits: Vec<u32>,
}

impl QRow {
    fn new(catalog: Vec<BeliefSet>, desc_costs: Vec<f64>) -> Self {
        assert_eq!(catalog.len(), desc_costs.len());
        let n = catalog.len();
        Self { catalog, desc_costs, values: vec![0.0; n], visits: vec![0; n] }
    }

    /// Index of the greedy action; ties go to the first (canonical) entry.
    pub fn greedy_action(&self) -> usize {
        let mut best = 0;
        for (i, &v) in self.values.iter().enumerate() {
            if v > self.values[best] {
                best = i;
            }
        }
        best
    }

    pub fn total_visits(&self) -> u64 {
        self.visits.iter().map(|&v| v as u64).sum()
    }
}

/// Tabular Q function over (event, action-index) pairs.
///
/// Every pair starts at 0; the per-event catalogs match the action space of
/// the curriculum step (or the whole constrained subset lattice for the
/// flat learner) exactly.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct QTable {
    rows: BTreeMap<EventId, QRow>,
}

impl QTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert_state(&mut self, state: EventId, catalog: Vec<BeliefSet>, desc_costs: Vec<f64>) {
        self.rows.insert(state, QRow::new(catalog, desc_costs));
    }

    pub fn row(&self, state: EventId) -> Option<&QRow> {
        self.rows.get(&state)
    }

    pub fn states(&self) -> impl Iterator<Item = EventId> + '_ {
        self.rows.keys().copied()
    }

    /// Greatest Q value at a state, or `None` when the state has no row
    /// (terminal events and events frozen in earlier steps).
    pub fn max_value(&self, state: EventId) -> Option<f64> {
        let row = self.rows.get(&state)?;
        row.values.iter().copied().reduce(f64::max)
    }
}

/// One-step Q-learning update.
///
/// `next_state = None` marks a terminal transition; otherwise the bootstrap
/// term is the next state's greatest Q value, taken as 0 when the next
/// state holds no row in this step's table.
pub fn q_update(
    q: &mut QTable,
    state: EventId,
    action: usize,
    reward: f64,
    next_state: Option<EventId>,
    hyper: &Hyperparams,
) -> Result<(), LearnerError> {
    let next_max = next_state.and_then(|s| q.max_value(s)).unwrap_or(0.0);
    let row = q
        .rows
        .get_mut(&state)
        .ok_or(LearnerError::UnknownStateAction { state, action })?;
    if action >= row.catalog.len() {
        return Err(LearnerError::UnknownStateAction { state, action });
    }
    let eta = hyper.learning_rate;
    let target = reward + hyper.discount * next_max;
    row.values[action] = (1.0 - eta) * row.values[action] + eta * target;
    row.visits[action] += 1;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table_with_one_state() -> (QTable, EventId) {
        let state = EventId(3);
        let mut q = QTable::new();
        q.insert_state(
            state,
            vec![BeliefSet::from_indices([0]), BeliefSet::from_indices([1])],
            vec![1.0, 1.0],
        );
        (q, state)
    }

    #[test]
    fn terminal_update_from_zero() {
        let (mut q, s) = table_with_one_state();
        let hyper = Hyperparams { learning_rate: 0.1, discount: 0.9, ..Hyperparams::default() };
        q_update(&mut q, s, 0, 8.25, None, &hyper).unwrap();
        assert!((q.row(s).unwrap().values[0] - 0.825).abs() < 1e-12);
        assert_eq!(q.row(s).unwrap().visits[0], 1);
    }

    #[test]
    fn myopic_limit_stores_the_reward() {
        let (mut q, s) = table_with_one_state();
        let hyper = Hyperparams { learning_rate: 1.0, discount: 0.0, ..Hyperparams::default() };
        q_update(&mut q, s, 1, -2.5, Some(s), &hyper).unwrap();
        assert_eq!(q.row(s).unwrap().values[1], -2.5);
    }

    #[test]
    fn zero_reward_contracts_toward_bootstrap() {
        let (mut q, s) = table_with_one_state();
        let hyper = Hyperparams { learning_rate: 0.25, discount: 0.0, ..Hyperparams::default() };
        q_update(&mut q, s, 0, 4.0, None, &hyper).unwrap();
        let before = q.row(s).unwrap().values[0];
        q_update(&mut q, s, 0, 0.0, None, &hyper).unwrap();
        let after = q.row(s).unwrap().values[0];
        assert!((after - before * 0.75).abs() < 1e-12);
    }

    #[test]
    fn unknown_pairs_are_rejected() {
        let (mut q, s) = table_with_one_state();
        let hyper = Hyperparams::default();
        assert!(matches!(
            q_update(&mut q, EventId(9), 0, 0.0, None, &hyper),
            Err(LearnerError::UnknownStateAction { .. })
        ));
        assert!(matches!(
            q_update(&mut q, s, 5, 0.0, None, &hyper),
            Err(LearnerError::UnknownStateAction { .. })
        ));
    }

    #[test]
    fn missing_next_state_bootstraps_zero() {
        let (mut q, s) = table_with_one_state();
        let hyper = Hyperparams { learning_rate: 1.0, discount: 0.9, ..Hyperparams::default() };
        // EventId(50) has no row: the bootstrap term is zero.
        q_update(&mut q, s, 0, 1.0, Some(EventId(50)), &hyper).unwrap();
        assert_eq!(q.row(s).unwrap().values[0], 1.0);
    }

    #[test]
    fn greedy_ties_break_canonically() {
        let (q, s) = table_with_one_state();
        assert_eq!(q.row(s).unwrap().greedy_action(), 0);
    }
}
