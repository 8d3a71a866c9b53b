use std::path::Path;

use semcom_learner::MetricRecord;

use crate::error::HarnessError;

/// Writes the metrics stream with the fixed header
/// `method,seed,episode,task,cl_step,length,completed,restarts,cost,reward`.
pub fn write_metrics_csv(path: &Path, records: &[MetricRecord]) -> Result<(), HarnessError> {
    let mut writer = csv::Writer::from_path(path)?;
    for record in records {
        writer.serialize(record)?;
    }
    writer.flush()?;
    Ok(())
}

pub fn read_metrics_csv(path: &Path) -> Result<Vec<MetricRecord>, HarnessError> {
    let mut reader = csv::Reader::from_path(path)?;
    let mut records = Vec::new();
    for row in reader.deserialize() {
        records.push(row?);
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use semcom_learner::Method;

    fn sample() -> Vec<MetricRecord> {
        vec![
            MetricRecord {
                method: Method::Curriculum,
                seed: 1,
                episode: 0,
                task: 3,
                cl_step: 1,
                length: 4,
                completed: true,
                restarts: 0,
                cost: 12.5,
                reward: -2.25,
            },
            MetricRecord {
                method: Method::FlatRl,
                seed: 1,
                episode: 1,
                task: 0,
                cl_step: 0,
                length: 200,
                completed: false,
                restarts: 7,
                cost: 410.125,
                reward: -500.5,
            },
        ]
    }

    #[test]
    fn header_and_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("metrics.csv");
        write_metrics_csv(&path, &sample()).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with(
            "method,seed,episode,task,cl_step,length,completed,restarts,cost,reward\n"
        ));
        assert!(text.contains("cl,1,0,3,1,4,true,0,12.5,-2.25"));
        assert!(text.contains("flat-rl,"));
        let back = read_metrics_csv(&path).unwrap();
        assert_eq!(back, sample());
    }
}
