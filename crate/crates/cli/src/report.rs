use indec_core::principles::Outcome;
use indec_core::reductions::LimitSampler;
use indec_core::LargenessPolicy;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Refuted,
    Exhausted,
}

impl From<&Outcome> for Status {
    fn from(o: &Outcome) -> Status {
        match o {
            Outcome::Verified => Status::Verified,
            Outcome::Refuted => Status::Refuted,
            Outcome::Exhausted(_) => Status::Exhausted,
        }
    }
}

/// What a command printed: the echoed command line, the policy in force, the
/// outcome and the command's result.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub policy: Option<LargenessPolicy>,
    pub outcome: Status,
    pub result: serde_json::Value,
    /// Seed of the stage sampler used for certified limits.
    pub seed: u64,
    pub timing_ms: u64,
}

impl RunReport {
    pub fn new(outcome: Status, result: impl Serialize, policy: Option<LargenessPolicy>) -> Result<RunReport, CliError> {
        Ok(RunReport {
            command: Vec::new(),
            policy,
            outcome,
            result: serde_json::to_value(result)?,
            seed: LimitSampler::default().seed,
            timing_ms: 0,
        })
    }

    pub fn to_json(&self) -> Result<String, CliError> {
        Ok(serde_json::to_string(self)? + "\n")
    }
}

/// 0 = verified, 1 = refuted, 2 = exhausted.
pub fn exit_code(s: &Status) -> i32 {
    match s {
        Status::Verified => 0,
        Status::Refuted => 1,
        Status::Exhausted => 2,
    }
}
