use std::fs;
use std::path::Path;

use crate::error::EnvError;
use crate::scenario::Scenario;

/// Serializes a scenario to its canonical file form: pretty-printed JSON
/// with struct-order keys and shortest-round-trip floats, so write → read →
/// write is byte-identical.
pub fn scenario_to_string(scenario: &Scenario) -> String {
    let mut text = serde_json::to_string_pretty(scenario).expect("scenario serializes");
    text.push('\n');
    text
}

pub fn write_scenario(scenario: &Scenario, path: &Path) -> Result<(), EnvError> {
    fs::write(path, scenario_to_string(scenario))?;
    Ok(())
}

/// Reads and validates a scenario file.
pub fn read_scenario(path: &Path) -> Result<Scenario, EnvError> {
    let text = fs::read_to_string(path)?;
    let scenario: Scenario = serde_json::from_str(&text)?;
    scenario.validate()?;
    Ok(scenario)
}
