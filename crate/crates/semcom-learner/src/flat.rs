use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use semcom_core::{satisfies_cardinality_constraint, BeliefSet, CostParams, EventId};
use semcom_env::Scenario;

use crate::error::LearnerError;
use crate::hyper::Hyperparams;
use crate::metrics::{Method, MetricRecord};
use crate::qtable::QTable;

const MAX_FLAT_ACTIONS: u128 = 1 << 20;

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Every description satisfying the cardinality bound
/// `1 <= |d| <= floor(B / 2)`, in canonical order. This is the flat
/// learner's action space: each action is transmitted as-is.
pub fn flat_action_catalog(belief_count: usize) -> Result<Vec<BeliefSet>, LearnerError> {
    let size: u128 = (1..=belief_count / 2).map(|k| binomial(belief_count, k)).sum();
    if size > MAX_FLAT_ACTIONS {
        return Err(LearnerError::ActionSpaceTooLarge { size });
    }
    let full = BeliefSet::full(belief_count).bits();
    let catalog = (1..=full)
        .map(BeliefSet::from_bits)
        .filter(|&s| satisfies_cardinality_constraint(s, belief_count))
        .collect();
    Ok(catalog)
}

/// Result of a flat single-phase run: the greedy description per
/// describable event and the metrics stream.
#[derive(Debug, Clone)]
pub struct FlatRun {
    pub policy: BTreeMap<EventId, BeliefSet>,
    pub records: Vec<MetricRecord>,
    pub q: QTable,
}

/// Single-phase epsilon-greedy Q-learning over the whole constrained subset
/// lattice: no curriculum, no pruning, the action is the description.
pub fn run_flat_rl(
    scenario: &Scenario,
    cost_params: &CostParams,
    hyper: &Hyperparams,
    episodes: u64,
    slot_cap: u32,
    seed: u64,
) -> Result<FlatRun, LearnerError> {
    let catalog = flat_action_catalog(scenario.belief_count())?;
    let desc_costs = catalog
        .iter()
        .map(|&desc| Ok(semcom_core::description_cost(desc, &scenario.beliefs, cost_params.alpha)?))
        .collect::<Result<Vec<f64>, LearnerError>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut q = QTable::new();
    for event in scenario.describable_events() {
        q.insert_state(event, catalog.clone(), desc_costs.clone());
    }

    let mut records = Vec::with_capacity(episodes as usize);
    for episode in 0..episodes {
        let epsilon = hyper.epsilon_at(episode);
        let record = run_flat_episode(
            scenario,
            cost_params,
            hyper,
            slot_cap,
            epsilon,
            &mut q,
            seed,
            episode,
            &mut rng,
        )?;
        records.push(record);
    }

    let policy = q
        .states()
        .map(|event| {
            let row = q.row(event).expect("state listed");
            (event, row.catalog[row.greedy_action()])
        })
        .collect();
    Ok(FlatRun { policy, records, q })
}

#[allow(clippy::too_many_arguments)]
fn run_flat_episode(
    scenario: &Scenario,
    cost_params: &CostParams,
    hyper: &Hyperparams,
    slot_cap: u32,
    epsilon: f64,
    q: &mut QTable,
    seed: u64,
    episode: u64,
    rng: &mut ChaCha8Rng,
) -> Result<MetricRecord, LearnerError> {
    use semcom_core::{description_cost, EventKind};
    use semcom_env::{begin_episode, step};

    use crate::qtable::q_update;
    use crate::reward::reward;

    let mut world = begin_episode(scenario, episode, rng);
    let task = world.current_task;
    let mut episode_cost = 0.0;
    let mut reward_sum = 0.0;
    let completed;

    loop {
        let event = world.current_event;
        let row = q.row(event).expect("describable events have rows");
        let index = crate::curriculum::select_action(row, epsilon, rng);
        let desc = row.catalog[index];
        let slot_cost = description_cost(desc, &scenario.beliefs, cost_params.alpha)?;
        episode_cost += slot_cost;
        let slot_index = world.slot_index;

        let outcome = step(&mut world, desc, scenario, slot_cap, rng)?;
        let next_kind = scenario.event(outcome.next_event)?.kind;
        let r = reward(slot_cost, next_kind, slot_index, hyper);
        reward_sum += r;

        let next_state =
            if next_kind == EventKind::Final { None } else { Some(outcome.next_event) };
        q_update(q, event, index, r, next_state, hyper)?;

        if outcome.episode_ended {
            completed = next_kind == EventKind::Final;
            break;
        }
    }

    Ok(MetricRecord {
        method: Method::FlatRl,
        seed,
        episode,
        task: task.0,
        cl_step: 0,
        length: world.slot_index,
        completed,
        restarts: world.restarts_this_episode,
        cost: episode_cost,
        reward: reward_sum,
    })
}
