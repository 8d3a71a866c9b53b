//! Scenario file contract: versioned, human-readable, and losslessly
//! round-tripping (write → read → write is byte-identical).

use semcom_env::{generate_scenario, read_scenario, scenario_to_string, write_scenario, ScenarioConfig};

#[test]
fn round_trip_is_byte_identical() {
    let scenario = generate_scenario(&ScenarioConfig::default(), 123).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scenario.json");

    write_scenario(&scenario, &path).unwrap();
    let first = std::fs::read(&path).unwrap();

    let reread = read_scenario(&path).unwrap();
    assert_eq!(reread, scenario);

    write_scenario(&reread, &path).unwrap();
    let second = std::fs::read(&path).unwrap();
    assert_eq!(first, second);
}

#[test]
fn file_carries_version_and_config_echo() {
    let scenario = generate_scenario(&ScenarioConfig::default(), 5).unwrap();
    let text = scenario_to_string(&scenario);
    assert!(text.contains("semcom-scenario-v1"));
    assert!(text.contains("\"belief_count\": 10"));
    assert!(text.contains("\"seed\": 5"));
}

#[test]
fn corrupted_file_is_rejected() {
    let scenario = generate_scenario(&ScenarioConfig::default(), 6).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scenario.json");
    // An unsupported version tag must fail validation on read.
    let text = scenario_to_string(&scenario).replace("semcom-scenario-v1", "semcom-scenario-v9");
    std::fs::write(&path, text).unwrap();
    assert!(read_scenario(&path).is_err());
}
