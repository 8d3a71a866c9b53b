use std::fmt;

use serde::{Deserialize, Serialize};

/// Which learning or baseline pipeline produced a record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "cl")]
    Curriculum,
    #[serde(rename = "flat-rl")]
    FlatRl,
    #[serde(rename = "non-semantic")]
    NonSemantic,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Method::Curriculum => "cl",
            Method::FlatRl => "flat-rl",
            Method::NonSemantic => "non-semantic",
        };
        f.write_str(name)
    }
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cl" => Ok(Method::Curriculum),
            "flat-rl" => Ok(Method::FlatRl),
            "non-semantic" => Ok(Method::NonSemantic),
            other => Err(format!("unknown method {other:?}; expected cl, flat-rl, or non-semantic")),
        }
    }
}

/// One episode's metrics. Field order matches the CSV column order:
/// `method,seed,episode,task,cl_step,length,completed,restarts,cost,reward`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricRecord {
    pub method: Method,
    pub seed: u64,
    pub episode: u64,
    pub task: u32,
    /// Curriculum step that produced the episode; 0 for baselines and
    /// evaluation runs.
    pub cl_step: u32,
    /// Episode length in slots; capped episodes score the cap.
    pub length: u32,
    /// True when the task's final event was reached, false when capped.
    pub completed: bool,
    pub restarts: u32,
    /// Transmission cost of the episode (sum of slot costs).
    pub cost: f64,
    /// Sum of per-slot rewards.
    pub reward: f64,
}
