use serde::{Deserialize, Serialize};

use semcom_core::objective_contribution;
use semcom_learner::{Method, MetricRecord};

use crate::error::HarnessError;

/// One point of a trailing-window series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowPoint {
    pub episode: u64,
    pub mean_length: f64,
    pub mean_cost: f64,
}

/// Trailing-window means of episode length and transmission cost, one point
/// per episode. Windows shorter than `window` at the start use everything
/// available so far.
pub fn window_average(
    records: &[MetricRecord],
    window: usize,
) -> Result<Vec<WindowPoint>, HarnessError> {
    if window == 0 {
        return Err(HarnessError::RangeViolation { reason: "window must be at least 1".into() });
    }
    if records.is_empty() {
        return Err(HarnessError::EmptySeries);
    }
    let mut out = Vec::with_capacity(records.len());
    let mut length_sum = 0.0;
    let mut cost_sum = 0.0;
    for (i, record) in records.iter().enumerate() {
        length_sum += record.length as f64;
        cost_sum += record.cost;
        if i >= window {
            length_sum -= records[i - window].length as f64;
            cost_sum -= records[i - window].cost;
        }
        let n = (i + 1).min(window) as f64;
        out.push(WindowPoint {
            episode: record.episode,
            mean_length: length_sum / n,
            mean_cost: cost_sum / n,
        });
    }
    Ok(out)
}

/// Statistics of one (method, seed) run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeedSummary {
    pub seed: u64,
    pub episodes: u64,
    pub completed_episodes: u64,
    pub capped_episodes: u64,
    /// Means over every training episode, capped ones included.
    pub training_mean_length: f64,
    pub training_mean_cost: f64,
    /// Means over the completed episodes of the final window.
    pub converged_mean_length: f64,
    pub converged_mean_cost: f64,
    /// Sum of per-episode objective contributions (delta-weighted).
    pub objective_total: f64,
}

/// Per-method summary across seeds, plus the pooled training means the
/// comparisons consume.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub method: Method,
    pub window: usize,
    pub per_seed: Vec<SeedSummary>,
    pub training_mean_length: f64,
    pub training_mean_cost: f64,
    pub converged_mean_length: f64,
    pub converged_mean_cost: f64,
}

/// Builds a [`SeedSummary`] from one run's record stream.
pub fn summarize_seed(
    records: &[MetricRecord],
    window: usize,
    delta: f64,
) -> Result<SeedSummary, HarnessError> {
    if records.is_empty() {
        return Err(HarnessError::EmptySeries);
    }
    let seed = records[0].seed;
    let n = records.len();
    let completed = records.iter().filter(|r| r.completed).count() as u64;
    let capped = n as u64 - completed;

    let training_mean_length =
        records.iter().map(|r| r.length as f64).sum::<f64>() / n as f64;
    let training_mean_cost = records.iter().map(|r| r.cost).sum::<f64>() / n as f64;

    let tail = &records[n.saturating_sub(window)..];
    let tail_completed: Vec<&MetricRecord> = tail.iter().filter(|r| r.completed).collect();
    let (converged_mean_length, converged_mean_cost) = if tail_completed.is_empty() {
        (f64::NAN, f64::NAN)
    } else {
        let m = tail_completed.len() as f64;
        (
            tail_completed.iter().map(|r| r.length as f64).sum::<f64>() / m,
            tail_completed.iter().map(|r| r.cost).sum::<f64>() / m,
        )
    };

    let mut objective_total = 0.0;
    for record in records {
        objective_total += objective_contribution(record.cost, record.length, delta)
            .map_err(semcom_learner::LearnerError::from)?;
    }

    Ok(SeedSummary {
        seed,
        episodes: n as u64,
        completed_episodes: completed,
        capped_episodes: capped,
        training_mean_length,
        training_mean_cost,
        converged_mean_length,
        converged_mean_cost,
        objective_total,
    })
}

/// Pools per-seed summaries of one method.
pub fn summarize_method(
    method: Method,
    window: usize,
    per_seed: Vec<SeedSummary>,
) -> Result<RunSummary, HarnessError> {
    if per_seed.is_empty() {
        return Err(HarnessError::EmptySeries);
    }
    let n = per_seed.len() as f64;
    let mean = |f: fn(&SeedSummary) -> f64| per_seed.iter().map(f).sum::<f64>() / n;
    Ok(RunSummary {
        method,
        window,
        training_mean_length: mean(|s| s.training_mean_length),
        training_mean_cost: mean(|s| s.training_mean_cost),
        converged_mean_length: mean(|s| s.converged_mean_length),
        converged_mean_cost: mean(|s| s.converged_mean_cost),
        per_seed,
    })
}

/// The comparison ratios the acceptance criteria consume. A ratio is absent
/// when one of its methods was not part of the comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    /// Seeds present in every compared method.
    pub seeds: Vec<u64>,
    /// Training-mean episode length, flat over curriculum.
    pub training_length_flat_over_cl: Option<f64>,
    /// Training-mean transmission cost, flat over curriculum.
    pub training_cost_flat_over_cl: Option<f64>,
    /// Converged transmission cost, non-semantic over curriculum.
    pub converged_cost_non_semantic_over_cl: Option<f64>,
    /// Converged episode length, curriculum over non-semantic.
    pub converged_length_cl_over_non_semantic: Option<f64>,
}

/// Compares methods over their common seeds.
///
/// Identical summaries produce ratios of exactly 1. Ratios are computed
/// only over seeds present in both methods of the pair.
pub fn compare_methods(summaries: &[RunSummary]) -> Result<Comparison, HarnessError> {
    if summaries.len() < 2 {
        return Err(HarnessError::SeedMismatch);
    }
    let find = |method: Method| summaries.iter().find(|s| s.method == method);
    let common_seeds = |a: &RunSummary, b: &RunSummary| -> Vec<u64> {
        a.per_seed
            .iter()
            .map(|s| s.seed)
            .filter(|seed| b.per_seed.iter().any(|t| t.seed == *seed))
            .collect()
    };
    let pooled = |summary: &RunSummary, seeds: &[u64], f: fn(&SeedSummary) -> f64| -> f64 {
        let values: Vec<f64> = summary
            .per_seed
            .iter()
            .filter(|s| seeds.contains(&s.seed))
            .map(f)
            .collect();
        values.iter().sum::<f64>() / values.len() as f64
    };

    let cl = find(Method::Curriculum);
    let flat = find(Method::FlatRl);
    let non = find(Method::NonSemantic);

    let mut seeds_used: Option<Vec<u64>> = None;
    let mut training_length = None;
    let mut training_cost = None;
    if let (Some(cl), Some(flat)) = (cl, flat) {
        let seeds = common_seeds(cl, flat);
        if seeds.is_empty() {
            return Err(HarnessError::SeedMismatch);
        }
        training_length = Some(
            pooled(flat, &seeds, |s| s.training_mean_length)
                / pooled(cl, &seeds, |s| s.training_mean_length),
        );
        training_cost = Some(
            pooled(flat, &seeds, |s| s.training_mean_cost)
                / pooled(cl, &seeds, |s| s.training_mean_cost),
        );
        seeds_used = Some(seeds);
    }

    let mut converged_cost = None;
    let mut converged_length = None;
    if let (Some(cl), Some(non)) = (cl, non) {
        let seeds = common_seeds(cl, non);
        if seeds.is_empty() {
            return Err(HarnessError::SeedMismatch);
        }
        converged_cost = Some(
            pooled(non, &seeds, |s| s.converged_mean_cost)
                / pooled(cl, &seeds, |s| s.converged_mean_cost),
        );
        converged_length = Some(
            pooled(cl, &seeds, |s| s.converged_mean_length)
                / pooled(non, &seeds, |s| s.converged_mean_length),
        );
        seeds_used = match seeds_used {
            Some(prev) => Some(prev.into_iter().filter(|s| seeds.contains(s)).collect()),
            None => Some(seeds),
        };
    }

    let seeds = seeds_used.ok_or(HarnessError::SeedMismatch)?;
    Ok(Comparison {
        seeds,
        training_length_flat_over_cl: training_length,
        training_cost_flat_over_cl: training_cost,
        converged_cost_non_semantic_over_cl: converged_cost,
        converged_length_cl_over_non_semantic: converged_length,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(episode: u64, length: u32, cost: f64, completed: bool) -> MetricRecord {
        MetricRecord {
            method: Method::Curriculum,
            seed: 0,
            episode,
            task: 0,
            cl_step: 1,
            length,
            completed,
            restarts: 0,
            cost,
            reward: 0.0,
        }
    }

    #[test]
    fn window_average_basics() {
        let records: Vec<MetricRecord> = [3u32, 3, 3, 9]
            .iter()
            .enumerate()
            .map(|(i, &len)| record(i as u64, len, len as f64, true))
            .collect();
        let series = window_average(&records, 2).unwrap();
        assert_eq!(series.last().unwrap().mean_length, 6.0);
        // Shorter-than-window prefix uses what exists.
        assert_eq!(series[0].mean_length, 3.0);
        assert_eq!(series[1].mean_length, 3.0);

        // Window 1 is the identity.
        let identity = window_average(&records, 1).unwrap();
        assert!(identity
            .iter()
            .zip(&records)
            .all(|(p, r)| p.mean_length == r.length as f64));

        // Constant series stays constant.
        let constant: Vec<MetricRecord> =
            (0..5).map(|i| record(i, 4, 2.0, true)).collect();
        let series = window_average(&constant, 3).unwrap();
        assert!(series.iter().all(|p| p.mean_length == 4.0 && p.mean_cost == 2.0));

        assert!(matches!(window_average(&[], 2), Err(HarnessError::EmptySeries)));
    }

    #[test]
    fn summaries_split_training_and_converged() {
        let mut records: Vec<MetricRecord> =
            (0..8).map(|i| record(i, 10, 20.0, true)).collect();
        records.extend((8..10).map(|i| record(i, 4, 8.0, true)));
        // One capped episode inside the final window.
        records.push({
            let mut r = record(10, 200, 500.0, false);
            r.restarts = 3;
            r
        });
        let summary = summarize_seed(&records, 3, 0.5).unwrap();
        assert_eq!(summary.episodes, 11);
        assert_eq!(summary.capped_episodes, 1);
        // Training mean includes the capped episode.
        assert!((summary.training_mean_length - (8.0 * 10.0 + 2.0 * 4.0 + 200.0) / 11.0).abs() < 1e-9);
        // Converged stats use only completed episodes of the last window.
        assert_eq!(summary.converged_mean_length, 4.0);
        assert_eq!(summary.converged_mean_cost, 8.0);
        // Objective total folds the per-episode contributions.
        let expected: f64 = records
            .iter()
            .map(|r| 0.5 * r.cost + 0.5 * r.length as f64)
            .sum();
        assert!((summary.objective_total - expected).abs() < 1e-9);
    }

    fn summary_of(method: Method, seed: u64, scale: f64) -> RunSummary {
        summarize_method(
            method,
            2,
            vec![SeedSummary {
                seed,
                episodes: 4,
                completed_episodes: 4,
                capped_episodes: 0,
                training_mean_length: 10.0 * scale,
                training_mean_cost: 6.0 * scale,
                converged_mean_length: 4.0 * scale,
                converged_mean_cost: 3.0 * scale,
                objective_total: 0.0,
            }],
        )
        .unwrap()
    }

    #[test]
    fn identical_summaries_compare_to_one() {
        let a = summary_of(Method::Curriculum, 0, 1.0);
        let b = RunSummary { method: Method::FlatRl, ..a.clone() };
        let c = RunSummary { method: Method::NonSemantic, ..a.clone() };
        let table = compare_methods(&[a, b, c]).unwrap();
        assert_eq!(table.training_length_flat_over_cl, Some(1.0));
        assert_eq!(table.training_cost_flat_over_cl, Some(1.0));
        assert_eq!(table.converged_cost_non_semantic_over_cl, Some(1.0));
        assert_eq!(table.converged_length_cl_over_non_semantic, Some(1.0));
    }

    #[test]
    fn ratios_divide_flat_by_cl() {
        let cl = summary_of(Method::Curriculum, 0, 1.0);
        let flat = summary_of(Method::FlatRl, 0, 3.0);
        let table = compare_methods(&[cl, flat]).unwrap();
        assert_eq!(table.training_length_flat_over_cl, Some(3.0));
        assert_eq!(table.converged_cost_non_semantic_over_cl, None);
    }

    #[test]
    fn disjoint_seeds_are_an_error() {
        let cl = summary_of(Method::Curriculum, 0, 1.0);
        let flat = summary_of(Method::FlatRl, 9, 1.0);
        assert!(matches!(compare_methods(&[cl, flat]), Err(HarnessError::SeedMismatch)));
    }
}
