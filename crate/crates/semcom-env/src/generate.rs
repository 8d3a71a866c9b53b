use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use semcom_core::{
    normalize_costs, BeliefSet, Event, EventId, EventKind, TaskId, TaskType,
};

use crate::error::EnvError;
use crate::scenario::{Scenario, ScenarioConfig, GroundTruth, TransitionModel, SCENARIO_FORMAT_VERSION};

/// Probability that the chain jumps to the final event from intermediary
/// position `i` (1-based), chosen so realized lengths are uniform on
/// `[length_min, length_max]`.
///
/// A jump from position `i` yields an episode of length `i + 2`.
fn jump_probability(position: usize, length_min: u32, length_max: u32) -> f64 {
    let lo = length_min as usize - 2;
    let hi = length_max as usize - 2;
    if position < lo {
        0.0
    } else if position >= hi {
        1.0
    } else {
        1.0 / (hi - position + 1) as f64
    }
}

/// Generates a reproducible scenario world from `(config, seed)`.
///
/// Event ids are laid out as: initials `0..T`, then each task's
/// intermediary chain in task order, then finals. All randomness comes from
/// one seeded stream, drawn in a fixed order (belief costs, ground-truth
/// sets per event, imperfect rows per event), so equal inputs produce
/// byte-identical scenarios.
pub fn generate_scenario(config: &ScenarioConfig, seed: u64) -> Result<Scenario, EnvError> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let b = config.belief_count;
    let t = config.task_count;
    let k = config.intermediaries_per_task();
    let n = config.event_count;

    let raw_costs: Vec<f64> =
        (0..b).map(|_| rng.gen_range(config.cost_min..=config.cost_max)).collect();
    let beliefs = normalize_costs(&raw_costs).expect("validated cost range is positive");

    let initial_id = |task: usize| EventId(task as u32);
    let intermediary_id = |task: usize, position: usize| {
        // position is 1-based within the chain
        EventId((t + task * k + (position - 1)) as u32)
    };
    let final_id = |task: usize| EventId((t + t * k + task) as u32);

    let mut events = Vec::with_capacity(n);
    for task in 0..t {
        events.push(Event {
            id: initial_id(task),
            kind: EventKind::Initial,
            owner_task: TaskId(task as u32),
        });
    }
    for task in 0..t {
        for position in 1..=k {
            events.push(Event {
                id: intermediary_id(task, position),
                kind: EventKind::Intermediary,
                owner_task: TaskId(task as u32),
            });
        }
    }
    for task in 0..t {
        events.push(Event {
            id: final_id(task),
            kind: EventKind::Final,
            owner_task: TaskId(task as u32),
        });
    }
    events.sort_by_key(|e| e.id);

    let tasks: Vec<TaskType> = (0..t)
        .map(|task| TaskType {
            id: TaskId(task as u32),
            initial_event: initial_id(task),
            final_event: final_id(task),
            intermediary_chain: (1..=k).map(|p| intermediary_id(task, p)).collect(),
            length_bounds: (config.length_min, config.length_max),
        })
        .collect();

    let mut ground_sets = Vec::with_capacity(n);
    for _ in 0..n {
        let size = rng.gen_range(config.truth_size_min..=config.truth_size_max);
        let members = rand::seq::index::sample(&mut rng, b, size);
        ground_sets.push(BeliefSet::from_indices(members.iter().map(|i| i as u8)));
    }

    // Perfect regime: advance along the chain, jumping to the final event
    // with the position's solved probability. Finals are absorbing.
    let mut perfect = vec![vec![0.0; n]; n];
    for task in 0..t {
        perfect[initial_id(task).index()][intermediary_id(task, 1).index()] = 1.0;
        for position in 1..=k {
            let row = &mut perfect[intermediary_id(task, position).index()];
            let q = if position == k {
                1.0
            } else {
                jump_probability(position, config.length_min, config.length_max)
            };
            row[final_id(task).index()] = q;
            if q < 1.0 {
                row[intermediary_id(task, position + 1).index()] = 1.0 - q;
            }
        }
        perfect[final_id(task).index()][final_id(task).index()] = 1.0;
    }

    // Imperfect regime: mass stays within the task but never advances more
    // than one chain position and never reaches the final event (unless
    // configured to), so a wrong listener action can only stall, delay, or
    // restart the task.
    let mut imperfect = vec![vec![0.0; n]; n];
    for task in 0..t {
        let row_events: Vec<(EventId, usize)> = std::iter::once((initial_id(task), 0))
            .chain((1..=k).map(|p| (intermediary_id(task, p), p)))
            .collect();
        for &(event, position) in &row_events {
            let mut targets: Vec<EventId> = std::iter::once(initial_id(task))
                .chain((1..=position.min(k - 1) + 1).map(|p| intermediary_id(task, p)))
                .collect();
            if config.imperfect_can_complete {
                targets.push(final_id(task));
            }
            let weights: Vec<f64> =
                targets.iter().map(|_| rng.gen_range(0.05..1.0)).collect();
            let weight_sum: f64 = weights.iter().sum();
            let residual = 1.0 - config.self_loop_floor;
            let row = &mut imperfect[event.index()];
            for (target, w) in targets.iter().zip(&weights) {
                row[target.index()] += residual * w / weight_sum;
            }
            row[event.index()] += config.self_loop_floor;
        }
        imperfect[final_id(task).index()][final_id(task).index()] = 1.0;
    }

    let scenario = Scenario {
        version: SCENARIO_FORMAT_VERSION.to_string(),
        seed,
        params: config.clone(),
        beliefs,
        events,
        tasks,
        ground_truth: GroundTruth { sets: ground_sets },
        transitions: TransitionModel { perfect, imperfect },
    };
    scenario.validate()?;
    Ok(scenario)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jump_probabilities_yield_uniform_lengths() {
        // lengths uniform on [3, 6]: reach position i with prob (5 - i)/4,
        // jump with 1/(5 - i).
        assert_eq!(jump_probability(1, 3, 6), 0.25);
        assert_eq!(jump_probability(2, 3, 6), 1.0 / 3.0);
        assert_eq!(jump_probability(3, 3, 6), 0.5);
        assert_eq!(jump_probability(4, 3, 6), 1.0);
        // fixed length: no jumps before the forced one
        assert_eq!(jump_probability(1, 6, 6), 0.0);
        assert_eq!(jump_probability(3, 6, 6), 0.0);
        assert_eq!(jump_probability(4, 6, 6), 1.0);
    }

    #[test]
    fn default_config_layout() {
        let scenario = generate_scenario(&ScenarioConfig::default(), 7).unwrap();
        assert_eq!(scenario.event_count(), 60);
        assert_eq!(scenario.tasks.len(), 10);
        let kinds = |kind: EventKind| {
            scenario.events.iter().filter(|e| e.kind == kind).count()
        };
        assert_eq!(kinds(EventKind::Initial), 10);
        assert_eq!(kinds(EventKind::Final), 10);
        assert_eq!(kinds(EventKind::Intermediary), 40);
    }

    #[test]
    fn forced_full_ground_truth() {
        let config = ScenarioConfig {
            belief_count: 4,
            event_count: 3,
            task_count: 1,
            truth_size_min: 4,
            truth_size_max: 4,
            length_min: 3,
            length_max: 3,
            ..ScenarioConfig::default()
        };
        let scenario = generate_scenario(&config, 0).unwrap();
        for set in &scenario.ground_truth.sets {
            assert_eq!(*set, BeliefSet::full(4));
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let config = ScenarioConfig::default();
        let a = generate_scenario(&config, 42).unwrap();
        let b = generate_scenario(&config, 42).unwrap();
        assert_eq!(a, b);
        let c = generate_scenario(&config, 43).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn rejects_inconsistent_config() {
        let config = ScenarioConfig { event_count: 25, ..ScenarioConfig::default() };
        let err = generate_scenario(&config, 0).unwrap_err();
        let message = err.to_string();
        assert!(message.contains("event_count"), "unexpected message: {message}");
    }
}
