use serde::{Deserialize, Serialize};

use crate::belief::BeliefSet;
use crate::error::CoreError;

/// Per-belief transmission costs, raw and normalized.
///
/// Normalization divides by the maximum raw cost so the values land in
/// `(0, 1]`, commensurate with the per-belief cardinality contribution of 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostVector {
    raw: Vec<f64>,
    normalized: Vec<f64>,
}

impl CostVector {
    pub fn len(&self) -> usize {
        self.raw.len()
    }

    pub fn is_empty(&self) -> bool {
        self.raw.is_empty()
    }

    pub fn raw(&self) -> &[f64] {
        &self.raw
    }

    pub fn normalized(&self) -> &[f64] {
        &self.normalized
    }

    /// Sum of normalized costs over the members of `set`.
    pub fn normalized_sum(&self, set: BeliefSet) -> f64 {
        set.iter().map(|id| self.normalized[id.index()]).sum()
    }
}

/// Blend weights for the two decision metrics: `alpha` weighs belief cost
/// against description cardinality per slot, `delta` weighs transmission
/// cost against execution time per episode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CostParams {
    pub alpha: f64,
    pub delta: f64,
}

impl CostParams {
    pub fn validate(&self) -> Result<(), String> {
        if !(0.0..=1.0).contains(&self.alpha) {
            return Err(format!("alpha = {} outside [0, 1]", self.alpha));
        }
        if !(0.0..=1.0).contains(&self.delta) {
            return Err(format!("delta = {} outside [0, 1]", self.delta));
        }
        Ok(())
    }
}

impl Default for CostParams {
    fn default() -> Self {
        Self { alpha: 0.5, delta: 0.5 }
    }
}

/// Builds a [`CostVector`] from raw positive costs.
pub fn normalize_costs(raw: &[f64]) -> Result<CostVector, CoreError> {
    if raw.is_empty() {
        return Err(CoreError::EmptyCostVector);
    }
    for (index, &value) in raw.iter().enumerate() {
        if !(value > 0.0) || !value.is_finite() {
            return Err(CoreError::NonPositiveCost { index, value });
        }
    }
    let max = raw.iter().cloned().fold(f64::MIN, f64::max);
    let normalized = raw.iter().map(|&c| c / max).collect();
    Ok(CostVector { raw: raw.to_vec(), normalized })
}

/// Per-slot description metric: `alpha * sum of normalized member costs +
/// (1 - alpha) * cardinality`.
pub fn description_cost(
    desc: BeliefSet,
    costs: &CostVector,
    alpha: f64,
) -> Result<f64, CoreError> {
    if desc.is_empty() {
        return Err(CoreError::EmptyDescription);
    }
    let cost_sum = costs.normalized_sum(desc);
    Ok(alpha * cost_sum + (1.0 - alpha) * desc.cardinality() as f64)
}

/// Transmission cost of one executed task: the sum of its slot costs.
pub fn episode_cost(slot_costs: &[f64]) -> Result<f64, CoreError> {
    if slot_costs.is_empty() {
        return Err(CoreError::EmptyEpisode);
    }
    Ok(slot_costs.iter().sum())
}

/// One episode's contribution to the cost/time objective:
/// `delta * episode_cost + (1 - delta) * episode_length`.
///
/// The harness accumulates this over episodes; the running mean is the
/// reported objective estimate.
pub fn objective_contribution(
    episode_cost: f64,
    episode_length: u32,
    delta: f64,
) -> Result<f64, CoreError> {
    if episode_length < 3 {
        return Err(CoreError::LengthBelowMinimum { length: episode_length });
    }
    Ok(delta * episode_cost + (1.0 - delta) * episode_length as f64)
}

/// Whether a description satisfies the cardinality bound
/// `1 <= |desc| <= floor(B / 2)`.
pub fn satisfies_cardinality_constraint(desc: BeliefSet, belief_count: usize) -> bool {
    let card = desc.cardinality();
    card >= 1 && card <= belief_count / 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::belief::BeliefSet;

    #[test]
    fn normalize_divides_by_max() {
        let v = normalize_costs(&[1.0, 2.0, 1.5, 2.0]).unwrap();
        assert_eq!(v.normalized(), &[0.5, 1.0, 0.75, 1.0]);
        assert_eq!(v.raw(), &[1.0, 2.0, 1.5, 2.0]);
    }

    #[test]
    fn normalize_single_element() {
        let v = normalize_costs(&[3.0]).unwrap();
        assert_eq!(v.normalized(), &[1.0]);
    }

    #[test]
    fn normalize_uniform_is_fixed_point() {
        let v = normalize_costs(&[1.0, 1.0]).unwrap();
        assert_eq!(v.normalized(), &[1.0, 1.0]);
    }

    #[test]
    fn normalize_rejects_non_positive() {
        assert_eq!(
            normalize_costs(&[1.0, 0.0]),
            Err(CoreError::NonPositiveCost { index: 1, value: 0.0 })
        );
        assert_eq!(normalize_costs(&[]), Err(CoreError::EmptyCostVector));
    }

    #[test]
    fn description_cost_blends_cost_and_cardinality() {
        let costs = normalize_costs(&[1.0, 2.0, 1.5, 2.0]).unwrap();
        let desc = BeliefSet::from_indices([0, 1]);
        let c = description_cost(desc, &costs, 0.5).unwrap();
        assert!((c - 1.75).abs() < 1e-12);
        assert!((description_cost(desc, &costs, 0.0).unwrap() - 2.0).abs() < 1e-12);
        assert!((description_cost(desc, &costs, 1.0).unwrap() - 1.5).abs() < 1e-12);
    }

    #[test]
    fn description_cost_rejects_empty() {
        let costs = normalize_costs(&[1.0]).unwrap();
        assert_eq!(
            description_cost(BeliefSet::EMPTY, &costs, 0.5),
            Err(CoreError::EmptyDescription)
        );
    }

    #[test]
    fn episode_cost_sums_slots() {
        assert!((episode_cost(&[1.75, 1.0, 2.0]).unwrap() - 4.75).abs() < 1e-12);
        assert_eq!(episode_cost(&[0.7]).unwrap(), 0.7);
        assert_eq!(episode_cost(&[0.5, 0.5]).unwrap(), 1.0);
        assert_eq!(episode_cost(&[]), Err(CoreError::EmptyEpisode));
    }

    #[test]
    fn objective_contribution_blends() {
        assert!((objective_contribution(4.75, 3, 0.5).unwrap() - 3.875).abs() < 1e-12);
        assert_eq!(objective_contribution(4.75, 3, 1.0).unwrap(), 4.75);
        assert_eq!(objective_contribution(4.75, 3, 0.0).unwrap(), 3.0);
        assert_eq!(
            objective_contribution(1.0, 2, 0.5),
            Err(CoreError::LengthBelowMinimum { length: 2 })
        );
    }

    #[test]
    fn cardinality_constraint_bounds() {
        let desc5 = BeliefSet::from_indices([0, 1, 2, 3, 4]);
        assert!(satisfies_cardinality_constraint(desc5, 10));
        assert!(!satisfies_cardinality_constraint(BeliefSet::EMPTY, 10));
        let desc9 = BeliefSet::from_indices([0, 1, 2, 3, 4, 5, 6, 7, 8]);
        assert!(!satisfies_cardinality_constraint(desc9, 10));
        // Odd belief count: floor(7 / 2) = 3.
        let desc3 = BeliefSet::from_indices([0, 1, 2]);
        let desc4 = BeliefSet::from_indices([0, 1, 2, 3]);
        assert!(satisfies_cardinality_constraint(desc3, 7));
        assert!(!satisfies_cardinality_constraint(desc4, 7));
    }
}
