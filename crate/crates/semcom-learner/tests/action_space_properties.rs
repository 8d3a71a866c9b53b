//! Property tests for the curriculum action-space algebra.

use proptest::prelude::*;
use semcom_core::{subsets_of_cardinality, BeliefSet};
use semcom_learner::{action_space_step_l, Hyperparams, reward};

// A catalog entry strategy: random subsets of a base of `b` beliefs with a
// fixed cardinality.
fn random_family(b: usize, card: usize, mask: u64, keep: u64) -> Vec<BeliefSet> {
    // Deterministic pseudo-selection driven by the two random words.
    let all = subsets_of_cardinality(BeliefSet::full(b), card).unwrap();
    all.into_iter()
        .enumerate()
        .filter(|(i, _)| (mask.rotate_left(*i as u32) ^ keep) & (1 << (i % 61)) != 0)
        .map(|(_, s)| s)
        .collect()
}

proptest! {
    // The pairwise-union construction equals the brute-force definition:
    // all cardinality-l subsets of the base that decompose into a pruned
    // singleton plus a pruned (l-1)-subset not containing it.
    #[test]
    fn step_l_space_matches_brute_force(
        b in 3usize..=8,
        l in 2usize..=6,
        mask in any::<u64>(),
        keep in any::<u64>(),
    ) {
        prop_assume!(l <= b);
        let prune_1 = random_family(b, 1, mask, keep);
        let prune_lm1 = random_family(b, l - 1, mask.rotate_left(17), keep.rotate_right(9));

        let fast = action_space_step_l(&prune_1, &prune_lm1, l).unwrap();

        let brute: Vec<BeliefSet> = subsets_of_cardinality(BeliefSet::full(b), l)
            .unwrap()
            .into_iter()
            .filter(|&candidate| {
                prune_1.iter().any(|&single| {
                    single.is_subset_of(candidate)
                        && prune_lm1.contains(&candidate.difference(single))
                })
            })
            .collect();

        prop_assert_eq!(fast, brute);
    }

    // Reward cases partition the event kinds with the documented ordering.
    #[test]
    fn reward_cases_partition_and_order(
        cost in 0.01f64..50.0,
        r_task in 0.01f64..50.0,
        c_delay in 0.01f64..50.0,
        slot in 1u32..100,
    ) {
        let hyper = Hyperparams { r_task, c_delay, ..Hyperparams::default() };
        let fin = reward(cost, semcom_core::EventKind::Final, slot, &hyper);
        let int = reward(cost, semcom_core::EventKind::Intermediary, slot, &hyper);
        let ini = reward(cost, semcom_core::EventKind::Initial, slot, &hyper);
        prop_assert_eq!(fin, -cost + r_task);
        prop_assert_eq!(int, -cost);
        prop_assert_eq!(ini, -cost - c_delay);
        prop_assert!(fin > int && int > ini);
    }
}
