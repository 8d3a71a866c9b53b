use std::collections::BTreeMap;
use std::path::Path;

use semcom_core::{BeliefSet, EventId};
use semcom_env::{generate_scenario, write_scenario};
use semcom_learner::{run_cl, run_flat_rl, run_non_semantic, Method, MetricRecord};

use crate::config::ExperimentConfig;
use crate::csv_io::write_metrics_csv;
use crate::error::HarnessError;
use crate::summary::{summarize_method, summarize_seed, RunSummary};

/// Per-seed artifacts of one experiment run.
#[derive(Debug, Clone)]
pub struct SeedRun {
    pub seed: u64,
    pub records: Vec<MetricRecord>,
    /// Learned per-event descriptions (curriculum) or greedy policy (flat).
    pub descriptions: Option<BTreeMap<EventId, BeliefSet>>,
}

/// Runs the configured method for one seed, without touching the
/// filesystem.
pub fn run_seed(
    config: &ExperimentConfig,
    method: Method,
    seed: u64,
) -> Result<SeedRun, HarnessError> {
    let scenario = generate_scenario(&config.scenario, seed)?;
    let cost_params = config.learner.cost_params();
    let slot_cap = config.run.slot_cap;
    match method {
        Method::Curriculum => {
            let hyper = config.learner.hyperparams(config.learner.episodes_per_cl_step);
            let run = run_cl(&scenario, &cost_params, &hyper, slot_cap, seed)?;
            Ok(SeedRun { seed, records: run.records, descriptions: Some(run.b_opt) })
        }
        Method::FlatRl => {
            let hyper = config.learner.hyperparams(config.run.episodes);
            let run = run_flat_rl(
                &scenario,
                &cost_params,
                &hyper,
                config.run.episodes,
                slot_cap,
                seed,
            )?;
            Ok(SeedRun { seed, records: run.records, descriptions: Some(run.policy) })
        }
        Method::NonSemantic => {
            let hyper = config.learner.hyperparams(config.run.episodes);
            let records = run_non_semantic(
                &scenario,
                &cost_params,
                &hyper,
                config.run.episodes,
                slot_cap,
                seed,
            )?;
            Ok(SeedRun { seed, records, descriptions: None })
        }
    }
}

/// Runs every configured seed, writing per-seed scenario files, metric CSVs,
/// learned-description files, and a pooled `summary.json` into `out_dir`.
/// Fully deterministic: rerunning with the same config reproduces every
/// file byte for byte.
pub fn run_experiment(
    config: &ExperimentConfig,
    method: Method,
    out_dir: &Path,
    mut progress: impl FnMut(&str),
) -> Result<RunSummary, HarnessError> {
    config.validate()?;
    std::fs::create_dir_all(out_dir)?;

    let mut per_seed = Vec::new();
    for &seed in &config.run.seeds {
        progress(&format!("running {method} seed {seed}"));
        let scenario = generate_scenario(&config.scenario, seed)?;
        write_scenario(&scenario, &out_dir.join(format!("scenario_seed{seed}.json")))?;

        let run = run_seed(config, method, seed)?;
        write_metrics_csv(
            &out_dir.join(format!("metrics_{method}_seed{seed}.csv")),
            &run.records,
        )?;
        if let Some(descriptions) = &run.descriptions {
            let readable: BTreeMap<String, BeliefSet> =
                descriptions.iter().map(|(e, &d)| (e.to_string(), d)).collect();
            let mut text = serde_json::to_string_pretty(&readable)?;
            text.push('\n');
            std::fs::write(
                out_dir.join(format!("descriptions_{method}_seed{seed}.json")),
                text,
            )?;
        }
        per_seed.push(summarize_seed(&run.records, config.run.window, config.learner.delta)?);
    }

    let summary = summarize_method(method, config.run.window, per_seed)?;
    let mut text = serde_json::to_string_pretty(&summary)?;
    text.push('\n');
    std::fs::write(out_dir.join(format!("summary_{method}.json")), text)?;
    progress(&format!("{method} done: {} seeds", config.run.seeds.len()));
    Ok(summary)
}
