use std::path::Path;

use serde::{Deserialize, Serialize};

use semcom_core::CostParams;
use semcom_env::ScenarioConfig;
use semcom_learner::{Hyperparams, Method};

use crate::error::HarnessError;

/// Learner section: objective weights plus Q-learning hyperparameters.
///
/// `epsilon_decay_episodes` may be omitted; it then defaults to 60% of the
/// training phase (per curriculum step, or of `run.episodes` for the flat
/// learner).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LearnerSection {
    pub alpha: f64,
    pub delta: f64,
    pub learning_rate: f64,
    pub discount: f64,
    pub epsilon_start: f64,
    pub epsilon_end: f64,
    pub epsilon_decay_episodes: Option<u64>,
    pub episodes_per_cl_step: u64,
    pub prune_gap: f64,
    pub r_task: f64,
    pub c_delay: f64,
    pub min_visits: u32,
}

impl Default for LearnerSection {
    fn default() -> Self {
        let hyper = Hyperparams::default();
        let cost = CostParams::default();
        Self {
            alpha: cost.alpha,
            delta: cost.delta,
            learning_rate: hyper.learning_rate,
            discount: hyper.discount,
            epsilon_start: hyper.epsilon_start,
            epsilon_end: hyper.epsilon_end,
            epsilon_decay_episodes: None,
            episodes_per_cl_step: hyper.episodes_per_cl_step,
            prune_gap: hyper.prune_gap,
            r_task: hyper.r_task,
            c_delay: hyper.c_delay,
            min_visits: hyper.min_visits,
        }
    }
}

impl LearnerSection {
    pub fn cost_params(&self) -> CostParams {
        CostParams { alpha: self.alpha, delta: self.delta }
    }

    /// Hyperparameters for a training phase of `phase_episodes` episodes.
    pub fn hyperparams(&self, phase_episodes: u64) -> Hyperparams {
        Hyperparams {
            learning_rate: self.learning_rate,
            discount: self.discount,
            epsilon_start: self.epsilon_start,
            epsilon_end: self.epsilon_end,
            epsilon_decay_episodes: self
                .epsilon_decay_episodes
                .unwrap_or(phase_episodes * 6 / 10),
            episodes_per_cl_step: self.episodes_per_cl_step,
            prune_gap: self.prune_gap,
            r_task: self.r_task,
            c_delay: self.c_delay,
            min_visits: self.min_visits,
        }
    }
}

/// Run section: method, episode budget, seeds, slot cap, and the trailing
/// window used for converged statistics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunSection {
    pub method: Method,
    /// Episode budget for the flat and non-semantic methods; the curriculum
    /// runs `episodes_per_cl_step` per step instead.
    pub episodes: u64,
    pub seeds: Vec<u64>,
    pub slot_cap: u32,
    pub window: usize,
}

impl Default for RunSection {
    fn default() -> Self {
        Self {
            method: Method::Curriculum,
            episodes: 160_000,
            seeds: vec![0, 1, 2],
            slot_cap: 200,
            window: 10_000,
        }
    }
}

/// Whole experiment configuration; every field has a default matching the
/// reference setup, so an empty file is a valid config.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentConfig {
    pub scenario: ScenarioConfig,
    pub learner: LearnerSection,
    pub run: RunSection,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), HarnessError> {
        self.scenario.validate()?;
        self.learner
            .cost_params()
            .validate()
            .map_err(|reason| HarnessError::RangeViolation { reason })?;
        self.learner
            .hyperparams(self.run.episodes.max(1))
            .validate()
            .map_err(|reason| HarnessError::RangeViolation { reason })?;
        if self.run.episodes == 0 {
            return Err(HarnessError::RangeViolation {
                reason: "run.episodes must be at least 1".into(),
            });
        }
        if self.run.seeds.is_empty() {
            return Err(HarnessError::RangeViolation {
                reason: "run.seeds must list at least one seed".into(),
            });
        }
        let mut seen = std::collections::BTreeSet::new();
        for &seed in &self.run.seeds {
            if !seen.insert(seed) {
                return Err(HarnessError::RangeViolation {
                    reason: format!("run.seeds lists seed {seed} twice"),
                });
            }
        }
        if self.run.slot_cap < 3 {
            return Err(HarnessError::RangeViolation {
                reason: format!(
                    "run.slot_cap = {} below 3, the minimum task length",
                    self.run.slot_cap
                ),
            });
        }
        if self.run.window == 0 {
            return Err(HarnessError::RangeViolation {
                reason: "run.window must be at least 1".into(),
            });
        }
        Ok(())
    }
}

/// Loads and validates a config file. Unknown or duplicate keys are errors.
pub fn parse_config(path: &Path) -> Result<ExperimentConfig, HarnessError> {
    if !path.exists() {
        return Err(HarnessError::MissingFile { path: path.to_path_buf() });
    }
    let text = std::fs::read_to_string(path)?;
    let config: ExperimentConfig =
        toml::from_str(&text).map_err(|e| HarnessError::BadConfig { reason: e.to_string() })?;
    config.validate()?;
    Ok(config)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_config_is_all_defaults() {
        let config: ExperimentConfig = toml::from_str("").unwrap();
        assert_eq!(config, ExperimentConfig::default());
        assert!(config.validate().is_ok());
        assert_eq!(config.scenario.belief_count, 10);
        assert_eq!(config.scenario.event_count, 60);
        assert_eq!(config.scenario.task_count, 10);
        assert_eq!(config.scenario.cost_min, 1.0);
        assert_eq!(config.scenario.cost_max, 2.0);
        assert_eq!(config.scenario.truth_size_min, 2);
        assert_eq!(config.scenario.truth_size_max, 4);
        assert_eq!(config.scenario.length_min, 3);
        assert_eq!(config.scenario.length_max, 6);
        assert_eq!(config.run.window, 10_000);
    }

    #[test]
    fn alpha_out_of_range_is_rejected() {
        let config: ExperimentConfig = toml::from_str("[learner]\nalpha = 1.5\n").unwrap();
        let err = config.validate().unwrap_err();
        assert!(err.to_string().contains("alpha"), "got: {err}");
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let err = toml::from_str::<ExperimentConfig>("[scenario]\nbelief_cuont = 10\n")
            .unwrap_err()
            .to_string();
        assert!(err.contains("belief_cuont"), "got: {err}");
    }

    #[test]
    fn duplicate_keys_are_rejected() {
        let text = "[run]\nepisodes = 5\nepisodes = 6\n";
        assert!(toml::from_str::<ExperimentConfig>(text).is_err());
    }

    #[test]
    fn decay_defaults_to_sixty_percent_of_phase() {
        let section = LearnerSection::default();
        assert_eq!(section.hyperparams(1_000).epsilon_decay_episodes, 600);
        let pinned = LearnerSection { epsilon_decay_episodes: Some(42), ..Default::default() };
        assert_eq!(pinned.hyperparams(1_000).epsilon_decay_episodes, 42);
    }
}
