use std::collections::BTreeMap;
use std::collections::BTreeSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use semcom_core::{description_cost, BeliefSet, CostParams, CostVector, EventId, EventKind};
use semcom_env::{begin_episode, step, Scenario};

use crate::error::LearnerError;
use crate::hyper::Hyperparams;
use crate::metrics::{Method, MetricRecord};
use crate::qtable::{q_update, QRow, QTable};
use crate::reward::reward;

/// Singleton action space shared by every event in the first curriculum
/// step: each action proposes removing one belief from the base set.
pub fn action_space_step1(b_comp: BeliefSet) -> Result<Vec<BeliefSet>, LearnerError> {
    if b_comp.cardinality() < 2 {
        return Err(LearnerError::DegenerateBeliefSet(b_comp.cardinality()));
    }
    Ok(b_comp.iter().map(BeliefSet::singleton).collect())
}

/// Step-`l` action space for one event, built from the first and previous
/// steps' pruning sets: every union of a pruned singleton with a pruned
/// `(l-1)`-subset not containing it, deduplicated, in canonical order.
pub fn action_space_step_l(
    prune_1: &[BeliefSet],
    prune_lm1: &[BeliefSet],
    l: usize,
) -> Result<Vec<BeliefSet>, LearnerError> {
    if l < 2 {
        return Err(LearnerError::CardinalityMismatch {
            reason: format!("step index {l} must be at least 2"),
        });
    }
    if let Some(bad) = prune_1.iter().find(|s| s.cardinality() != 1) {
        return Err(LearnerError::CardinalityMismatch {
            reason: format!("first-step entry {bad} is not a singleton"),
        });
    }
    if let Some(bad) = prune_lm1.iter().find(|s| s.cardinality() != l - 1) {
        return Err(LearnerError::CardinalityMismatch {
            reason: format!("previous-step entry {bad} does not have cardinality {}", l - 1),
        });
    }
    let mut out = BTreeSet::new();
    for single in prune_1 {
        for set in prune_lm1 {
            if single.intersection(*set).is_empty() {
                out.insert(single.union(*set));
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Maps an action (the beliefs to withhold) to the transmitted description.
pub fn description_from_action(
    b_comp: BeliefSet,
    action: BeliefSet,
) -> Result<BeliefSet, LearnerError> {
    if !action.is_subset_of(b_comp) {
        return Err(LearnerError::ActionNotSubset);
    }
    let desc = b_comp.difference(action);
    if desc.is_empty() {
        return Err(LearnerError::EmptyResult);
    }
    Ok(desc)
}

/// Outcome of reading one event's pruning set off a trained table.
#[derive(Debug, Clone, PartialEq)]
pub struct PruneExtraction {
    pub prunable: Vec<BeliefSet>,
    /// Set when the event was never visited during the step; the empty
    /// pruning set then reflects missing data, not evidence.
    pub unvisited: bool,
}

/// Actions whose Q value sits within `prune_gap` of the event's anchor,
/// among pairs visited at least `min_visits` times.
///
/// When the catalog carries the empty probe action (always the case inside
/// the curriculum) and it is sufficiently visited, the comparison runs on
/// cost-adjusted values `Q(a) + cost(desc_a)`: a perfect action's Q differs
/// from the probe's by exactly its description-cost savings (their futures
/// are identical), so the adjustment cancels cardinality and leaves the
/// pure dynamics gap that separates perfect from imperfect actions at every
/// step. Anchoring on the probe rather than the maximum also keeps two
/// failure modes out: a heavily revisited argmax outrunning stale
/// still-perfect candidates, and an all-imperfect catalog pruning itself
/// wholesale. Without a usable probe the rule falls back to the raw gap
/// from the visited maximum. Untouched pairs are excluded from the maximum
/// since they still hold the initial 0, which would masquerade as the best
/// value whenever true values are negative. The probe itself never enters
/// the pruning set.
pub fn extract_pruned_set(q: &QTable, event: EventId, hyper: &Hyperparams) -> PruneExtraction {
    let Some(row) = q.row(event) else {
        return PruneExtraction { prunable: Vec::new(), unvisited: true };
    };
    if row.total_visits() == 0 {
        return PruneExtraction { prunable: Vec::new(), unvisited: true };
    }
    let probe = row
        .catalog
        .iter()
        .position(|a| a.is_empty())
        .filter(|&i| row.visits[i] >= hyper.min_visits);
    let gap_from_anchor = |index: usize| -> f64 {
        match probe {
            Some(p) => {
                (row.values[p] + row.desc_costs[p]) - (row.values[index] + row.desc_costs[index])
            }
            None => {
                let max_visited = row
                    .values
                    .iter()
                    .zip(&row.visits)
                    .filter(|(_, &v)| v > 0)
                    .map(|(&q, _)| q)
                    .fold(f64::MIN, f64::max);
                max_visited - row.values[index]
            }
        }
    };
    let prunable = row
        .catalog
        .iter()
        .enumerate()
        .filter(|(i, &action)| {
            !action.is_empty()
                && row.visits[*i] >= hyper.min_visits
                && gap_from_anchor(*i) <= hyper.prune_gap
        })
        .map(|(_, &action)| action)
        .collect();
    PruneExtraction { prunable, unvisited: false }
}

/// Final description for an event whose pruning has terminated: remove the
/// most expensive member of the last nonempty pruning set (each member is
/// individually prunable, so exactly one is removed). An empty set means
/// nothing was ever prunable and the base set itself is the description.
pub fn select_optimal_description(
    b_comp: BeliefSet,
    prune_lm1: &[BeliefSet],
    costs: &CostVector,
    alpha: f64,
) -> BeliefSet {
    let mut candidates = prune_lm1.to_vec();
    candidates.sort_by_key(|s| s.bits());
    let mut best: Option<(BeliefSet, f64)> = None;
    for set in candidates {
        let saved = alpha * costs.normalized_sum(set) + (1.0 - alpha) * set.cardinality() as f64;
        match best {
            Some((_, best_saved)) if saved <= best_saved => {}
            _ => best = Some((set, saved)),
        }
    }
    match best {
        Some((set, _)) => b_comp.difference(set),
        None => b_comp,
    }
}

/// Full curriculum state: per-event pruning sets across steps, termination
/// flags, and the final descriptions.
#[derive(Debug, Clone, PartialEq)]
pub struct CurriculumState {
    pub b_comp: BeliefSet,
    pub prune_sets: BTreeMap<(EventId, usize), Vec<BeliefSet>>,
    pub finished: BTreeMap<EventId, bool>,
    pub b_opt: BTreeMap<EventId, BeliefSet>,
    pub current_step: usize,
    /// Events that went through a step without a single visit, with the step
    /// index; reported as warnings, not errors.
    pub unvisited_events: Vec<(EventId, usize)>,
}

/// Result of a curriculum run: learned descriptions, the per-episode
/// metrics stream, and the final curriculum bookkeeping.
#[derive(Debug, Clone)]
pub struct CurriculumRun {
    pub b_opt: BTreeMap<EventId, BeliefSet>,
    pub records: Vec<MetricRecord>,
    pub state: CurriculumState,
}

/// Epsilon-greedy pick over one row. Exploration spends one extra draw.
pub(crate) fn select_action<R: Rng>(row: &QRow, epsilon: f64, rng: &mut R) -> usize {
    if rng.gen::<f64>() < epsilon {
        rng.gen_range(0..row.catalog.len())
    } else {
        row.greedy_action()
    }
}

/// Top-down curriculum over pruning cardinalities `l = 1..B-1`.
///
/// Each step trains a fresh Q table over the step's per-event action
/// spaces (step 1 shares one singleton catalog; later steps combine the
/// first and previous steps' pruning sets per event), transmits the base
/// set minus the chosen action each slot, and extracts the pruning sets
/// from the learned Q values. An event whose action space or pruning set
/// comes up empty is finished: its description is frozen for all later
/// steps. The loop ends when every describable event is finished.
///
/// Final events are terminal and never transmitted; they carry the base set
/// as their (never-exercised) description in the output map.
pub fn run_cl(
    scenario: &Scenario,
    cost_params: &CostParams,
    hyper: &Hyperparams,
    slot_cap: u32,
    seed: u64,
) -> Result<CurriculumRun, LearnerError> {
    let b_comp = scenario.full_belief_set();
    let belief_count = scenario.belief_count();
    let costs = &scenario.beliefs;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let describable: Vec<EventId> = scenario.describable_events().collect();
    let mut state = CurriculumState {
        b_comp,
        prune_sets: BTreeMap::new(),
        finished: describable.iter().map(|&e| (e, false)).collect(),
        b_opt: BTreeMap::new(),
        current_step: 0,
        unvisited_events: Vec::new(),
    };
    // Step-(l-1) pruning sets per live event; empty at l = 1, where a
    // finished event falls back to the base set itself.
    let mut prune_prev: BTreeMap<EventId, Vec<BeliefSet>> =
        describable.iter().map(|&e| (e, Vec::new())).collect();
    let mut prune_first: BTreeMap<EventId, Vec<BeliefSet>> = BTreeMap::new();

    let mut records = Vec::new();
    let mut episode_counter: u64 = 0;

    for l in 1..belief_count {
        state.current_step = l;

        let shared_step1 = if l == 1 { Some(action_space_step1(b_comp)?) } else { None };
        let mut q = QTable::new();
        let mut live = 0usize;
        for &event in &describable {
            if state.finished[&event] {
                continue;
            }
            let space = match &shared_step1 {
                Some(catalog) => catalog.clone(),
                None => action_space_step_l(&prune_first[&event], &prune_prev[&event], l)?,
            };
            if space.is_empty() {
                state.prune_sets.insert((event, l), Vec::new());
                finish_event(&mut state, &mut prune_prev, event, costs, cost_params.alpha);
            } else {
                // The empty probe (transmit the base set, always perfect)
                // leads the catalog; it anchors prune extraction.
                let mut catalog = Vec::with_capacity(space.len() + 1);
                catalog.push(BeliefSet::EMPTY);
                catalog.extend(space);
                let desc_costs = catalog
                    .iter()
                    .map(|&action| {
                        let desc = description_from_action(b_comp, action)?;
                        Ok(description_cost(desc, costs, cost_params.alpha)?)
                    })
                    .collect::<Result<Vec<f64>, LearnerError>>()?;
                q.insert_state(event, catalog, desc_costs);
                live += 1;
            }
        }
        if live == 0 {
            break;
        }

        for phase_episode in 0..hyper.episodes_per_cl_step {
            let epsilon = hyper.epsilon_at(phase_episode);
            let record = run_training_episode(
                scenario,
                cost_params,
                hyper,
                slot_cap,
                epsilon,
                &mut q,
                |event, q| {
                    // Frozen events transmit their final description.
                    if q.row(event).is_some() {
                        None
                    } else {
                        Some(state.b_opt.get(&event).copied().unwrap_or(b_comp))
                    }
                },
                Method::Curriculum,
                l as u32,
                seed,
                episode_counter,
                &mut rng,
            )?;
            records.push(record);
            episode_counter += 1;
        }

        let live_events: Vec<EventId> = q.states().collect();
        for event in live_events {
            let extraction = extract_pruned_set(&q, event, hyper);
            if extraction.unvisited {
                state.unvisited_events.push((event, l));
            }
            state.prune_sets.insert((event, l), extraction.prunable.clone());
            if extraction.prunable.is_empty() {
                finish_event(&mut state, &mut prune_prev, event, costs, cost_params.alpha);
            } else {
                if l == 1 {
                    prune_first.insert(event, extraction.prunable.clone());
                }
                prune_prev.insert(event, extraction.prunable);
            }
        }

        if state.finished.values().all(|&f| f) {
            break;
        }
    }

    // Events still live after the last step keep the best description the
    // final pruning sets support.
    let unfinished: Vec<EventId> =
        state.finished.iter().filter(|(_, &f)| !f).map(|(&e, _)| e).collect();
    for event in unfinished {
        finish_event(&mut state, &mut prune_prev, event, costs, cost_params.alpha);
    }
    for event in &scenario.events {
        if event.kind == EventKind::Final {
            state.b_opt.insert(event.id, b_comp);
        }
    }

    Ok(CurriculumRun { b_opt: state.b_opt.clone(), records, state })
}

fn finish_event(
    state: &mut CurriculumState,
    prune_prev: &mut BTreeMap<EventId, Vec<BeliefSet>>,
    event: EventId,
    costs: &CostVector,
    alpha: f64,
) {
    let prev = prune_prev.get(&event).cloned().unwrap_or_default();
    let description = select_optimal_description(state.b_comp, &prev, costs, alpha);
    state.b_opt.insert(event, description);
    state.finished.insert(event, true);
    prune_prev.remove(&event);
}

/// Runs one episode, updating `q` at every live slot. `frozen` returns the
/// fixed description for events without a row in this step's table.
#[allow(clippy::too_many_arguments)]
pub(crate) fn run_training_episode<R, F>(
    scenario: &Scenario,
    cost_params: &CostParams,
    hyper: &Hyperparams,
    slot_cap: u32,
    epsilon: f64,
    q: &mut QTable,
    frozen: F,
    method: Method,
    cl_step: u32,
    seed: u64,
    episode_index: u64,
    rng: &mut R,
) -> Result<MetricRecord, LearnerError>
where
    R: Rng,
    F: Fn(EventId, &QTable) -> Option<BeliefSet>,
{
    let b_comp = scenario.full_belief_set();
    let mut world = begin_episode(scenario, episode_index, rng);
    let task = world.current_task;
    let mut episode_cost = 0.0;
    let mut reward_sum = 0.0;
    let completed;

    loop {
        let event = world.current_event;
        let (desc, action) = match frozen(event, q) {
            Some(frozen_desc) => (frozen_desc, None),
            None => {
                let row = q.row(event).expect("live events have rows");
                let index = select_action(row, epsilon, rng);
                (description_from_action(b_comp, row.catalog[index])?, Some(index))
            }
        };
        let slot_cost = description_cost(desc, &scenario.beliefs, cost_params.alpha)?;
        episode_cost += slot_cost;
        let slot_index = world.slot_index;

        let outcome = step(&mut world, desc, scenario, slot_cap, rng)?;
        let next_kind = scenario.event(outcome.next_event)?.kind;
        let r = reward(slot_cost, next_kind, slot_index, hyper);
        reward_sum += r;

        if let Some(index) = action {
            // Only a real task completion is terminal; a capped episode
            // still bootstraps from wherever it stopped.
            let next_state =
                if next_kind == EventKind::Final { None } else { Some(outcome.next_event) };
            q_update(q, event, index, r, next_state, hyper)?;
        }
        if outcome.episode_ended {
            completed = next_kind == EventKind::Final;
            break;
        }
    }

    Ok(MetricRecord {
        method,
        seed,
        episode: episode_index,
        task: task.0,
        cl_step,
        length: world.slot_index,
        completed,
        restarts: world.restarts_this_episode,
        cost: episode_cost,
        reward: reward_sum,
    })
}
