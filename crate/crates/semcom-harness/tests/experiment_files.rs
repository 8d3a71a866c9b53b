//! File contract of `run_experiment`: per-seed artifacts, byte-stable
//! reruns, a frozen CSV header/formatting golden file, and cross-module
//! consistency between the CSV stream and the summary.

use std::path::Path;

use semcom_core::objective_contribution;
use semcom_harness::{read_metrics_csv, run_experiment, ExperimentConfig};
use semcom_learner::Method;

fn tiny_config() -> ExperimentConfig {
    let text = r#"
[scenario]
belief_count = 6
event_count = 12
task_count = 3
truth_size_min = 2
truth_size_max = 2
length_min = 3
length_max = 4

[learner]
episodes_per_cl_step = 150
min_visits = 3

[run]
episodes = 200
seeds = [0, 1]
slot_cap = 50
window = 50
"#;
    toml::from_str(text).unwrap()
}

fn read(path: &Path) -> Vec<u8> {
    std::fs::read(path).unwrap()
}

#[test]
fn run_writes_all_artifacts_and_is_reproducible() {
    let config = tiny_config();
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    run_experiment(&config, Method::Curriculum, dir_a.path(), |_| {}).unwrap();
    run_experiment(&config, Method::Curriculum, dir_b.path(), |_| {}).unwrap();

    for seed in [0, 1] {
        for name in [
            format!("scenario_seed{seed}.json"),
            format!("metrics_cl_seed{seed}.csv"),
            format!("descriptions_cl_seed{seed}.json"),
        ] {
            let a = dir_a.path().join(&name);
            let b = dir_b.path().join(&name);
            assert!(a.exists(), "{name} missing");
            assert_eq!(read(&a), read(&b), "{name} differs between reruns");
        }
    }
    assert!(dir_a.path().join("summary_cl.json").exists());
    assert_eq!(
        read(&dir_a.path().join("summary_cl.json")),
        read(&dir_b.path().join("summary_cl.json"))
    );
}

#[test]
fn csv_format_matches_golden_file() {
    let config = tiny_config();
    let dir = tempfile::tempdir().unwrap();
    run_experiment(&config, Method::NonSemantic, dir.path(), |_| {}).unwrap();
    let text = std::fs::read_to_string(dir.path().join("metrics_non-semantic_seed0.csv")).unwrap();
    let head: Vec<&str> = text.lines().take(6).collect();
    let golden = include_str!("golden/metrics_head.csv");
    assert_eq!(head.join("\n"), golden.trim_end());
}

#[test]
fn summary_objective_matches_record_fold() {
    let config = tiny_config();
    let dir = tempfile::tempdir().unwrap();
    let summary = run_experiment(&config, Method::Curriculum, dir.path(), |_| {}).unwrap();
    for seed_summary in &summary.per_seed {
        let records = read_metrics_csv(
            &dir.path().join(format!("metrics_cl_seed{}.csv", seed_summary.seed)),
        )
        .unwrap();
        let total: f64 = records
            .iter()
            .map(|r| objective_contribution(r.cost, r.length, config.learner.delta).unwrap())
            .sum();
        assert!(
            (total - seed_summary.objective_total).abs() < 1e-6,
            "objective mismatch: {total} vs {}",
            seed_summary.objective_total
        );
    }
}

#[test]
fn cl_steps_never_decrease_within_a_run() {
    let config = tiny_config();
    let dir = tempfile::tempdir().unwrap();
    run_experiment(&config, Method::Curriculum, dir.path(), |_| {}).unwrap();
    let records = read_metrics_csv(&dir.path().join("metrics_cl_seed0.csv")).unwrap();
    assert!(!records.is_empty());
    assert!(records.windows(2).all(|w| w[0].cl_step <= w[1].cl_step));
    assert!(records.iter().all(|r| r.cl_step >= 1));
}

#[test]
fn flat_rl_guard_propagates() {
    let mut config = tiny_config();
    config.scenario.belief_count = 25;
    config.scenario.truth_size_max = 2;
    let dir = tempfile::tempdir().unwrap();
    let err = run_experiment(&config, Method::FlatRl, dir.path(), |_| {}).unwrap_err();
    assert!(err.to_string().contains("2^20"), "unexpected error: {err}");
}
