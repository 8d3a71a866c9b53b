use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use semcom_core::{description_cost, BeliefSet, CostParams, EventId, EventKind};
use semcom_env::{begin_episode, step, Scenario};

use crate::error::LearnerError;
use crate::hyper::Hyperparams;
use crate::metrics::{Method, MetricRecord};
use crate::reward::reward;

/// Rolls out episodes under a fixed per-event description policy, with no
/// learning. Used to evaluate converged curniculum descriptions and as the
/// engine of the non-semantic baseline.
#[allow(clippy::too_many_arguments)]
pub fn evaluate_descriptions(
    scenario: &Scenario,
    descriptions: &BTreeMap<EventId, BeliefSet>,
    cost_params: &CostParams,
    hyper: &Hyperparams,
    method: Method,
    episodes: u64,
    slot_cap: u32,
    seed: u64,
) -> Result<Vec<MetricRecord>, LearnerError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut records = Vec::with_capacity(episodes as usize);

    for episode in 0..episodes {
        let mut world = begin_episode(scenario, episode, &mut rng);
        let task = world.current_task;
        let mut episode_cost = 0.0;
        let mut reward_sum = 0.0;
        let completed;

        loop {
            let event = world.current_event;
            let desc = *descriptions
                .get(&event)
                .ok_or(semcom_env::EnvError::UnknownEvent(event))?;
            let slot_cost = description_cost(desc, &scenario.beliefs, cost_params.alpha)?;
            episode_cost += slot_cost;
            let slot_index = world.slot_index;

            let outcome = step(&mut world, desc, scenario, slot_cap, &mut rng)?;
            let next_kind = scenario.event(outcome.next_event)?.kind;
            reward_sum += reward(slot_cost, next_kind, slot_index, hyper);

            if outcome.episode_ended {
                completed = next_kind == EventKind::Final;
                break;
            }
        }

        records.push(MetricRecord {
            method,
            seed,
            episode,
            task: task.0,
            cl_step: 0,
            length: world.slot_index,
            completed,
            restarts: world.restarts_this_episode,
            cost: episode_cost,
            reward: reward_sum,
        });
    }
    Ok(records)
}

/// The naive baseline: every slot transmits the whole common language,
/// which is always perfect by comprehensivity and maximally costly. No
/// learning happens; the metrics stream is the output.
pub fn run_non_semantic(
    scenario: &Scenario,
    cost_params: &CostParams,
    hyper: &Hyperparams,
    episodes: u64,
    slot_cap: u32,
    seed: u64,
) -> Result<Vec<MetricRecord>, LearnerError> {
    let full = scenario.full_belief_set();
    let descriptions: BTreeMap<EventId, BeliefSet> =
        scenario.describable_events().map(|e| (e, full)).collect();
    evaluate_descriptions(
        scenario,
        &descriptions,
        cost_params,
        hyper,
        Method::NonSemantic,
        episodes,
        slot_cap,
        seed,
    )
}
