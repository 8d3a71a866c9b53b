use serde::{Deserialize, Serialize};

/// Q-learning and curriculum hyperparameters.
///
/// `r_task` and `c_delay` are the completion reward and delay cost of the
/// per-slot reward rule, uniform across tasks. The exploration schedule is
/// linear: epsilon decays from `epsilon_start` to `epsilon_end` over the
/// first `epsilon_decay_episodes` episodes of a training phase (each
/// curriculum step is its own phase), then stays constant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Hyperparams {
    pub learning_rate: f64,
    pub discount: f64,
    pub epsilon_start: f64,
    pub epsilon_end: f64,
    pub epsilon_decay_episodes: u64,
    pub episodes_per_cl_step: u64,
    /// Actions whose Q value sits within this gap of the per-event maximum
    /// are considered prunable.
    pub prune_gap: f64,
    pub r_task: f64,
    pub c_delay: f64,
    /// A (state, action) pair needs this many visits before it may enter a
    /// pruning set.
    pub min_visits: u32,
}

impl Default for Hyperparams {
    fn default() -> Self {
        let episodes_per_cl_step = 20_000;
        Self {
            learning_rate: 0.1,
            discount: 0.9,
            epsilon_start: 1.0,
            epsilon_end: 0.1,
            epsilon_decay_episodes: episodes_per_cl_step * 6 / 10,
            episodes_per_cl_step,
            prune_gap: 2.0,
            r_task: 10.0,
            c_delay: 5.0,
            min_visits: 30,
        }
    }
}

impl Hyperparams {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.learning_rate > 0.0 && self.learning_rate <= 1.0) {
            return Err(format!("learning_rate = {} outside (0, 1]", self.learning_rate));
        }
        if !(0.0..1.0).contains(&self.discount) {
            return Err(format!("discount = {} outside [0, 1)", self.discount));
        }
        for (name, value) in [("epsilon_start", self.epsilon_start), ("epsilon_end", self.epsilon_end)]
        {
            if !(0.0..=1.0).contains(&value) {
                return Err(format!("{name} = {value} outside [0, 1]"));
            }
        }
        if self.epsilon_end > self.epsilon_start {
            return Err("epsilon_end must not exceed epsilon_start".into());
        }
        if self.episodes_per_cl_step == 0 {
            return Err("episodes_per_cl_step must be at least 1".into());
        }
        if !(self.prune_gap > 0.0) {
            return Err(format!("prune_gap = {} must be > 0", self.prune_gap));
        }
        if !(self.r_task > 0.0) {
            return Err(format!("r_task = {} must be > 0", self.r_task));
        }
        if !(self.c_delay > 0.0) {
            return Err(format!("c_delay = {} must be > 0", self.c_delay));
        }
        Ok(())
    }

    /// Exploration rate for the given episode within a training phase.
    pub fn epsilon_at(&self, episode_in_phase: u64) -> f64 {
        if episode_in_phase >= self.epsilon_decay_episodes || self.epsilon_decay_episodes == 0 {
            return self.epsilon_end;
        }
        let progress = episode_in_phase as f64 / self.epsilon_decay_episodes as f64;
        self.epsilon_start + (self.epsilon_end - self.epsilon_start) * progress
    }

    /// Copy with the decay horizon set to 60% of `episodes`, matching the
    /// per-step default ratio.
    pub fn with_decay_for(&self, episodes: u64) -> Self {
        Self { epsilon_decay_episodes: episodes * 6 / 10, ..self.clone() }
    }
}
