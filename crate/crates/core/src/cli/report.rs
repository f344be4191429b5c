use std::collections::BTreeMap;
use std::path::PathBuf;

use serde::Serialize;
use serde_json::Value;

/// Machine-readable outcome of one command, printed to stdout.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    /// One of member, non_member, inconclusive, psd, not_psd, found, none.
    pub verdict: String,
    pub exit_code: i32,
    pub values: BTreeMap<String, Value>,
    pub artifacts: Vec<PathBuf>,
    pub seed: u64,
    pub threads: usize,
}

impl RunReport {
    pub fn new(command: &str, verdict: &str, exit_code: i32) -> Self {
        Self {
            command: command.to_string(),
            verdict: verdict.to_string(),
            exit_code,
            values: BTreeMap::new(),
            artifacts: Vec::new(),
            seed: 0,
            threads: 1,
        }
    }

    pub fn set(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.values.insert(key.to_string(), serde_json::to_value(value).unwrap_or(Value::Null));
        self
    }
}

pub mod exit {
    pub const POSITIVE: i32 = 0;
    pub const NEGATIVE: i32 = 1;
    pub const INCONCLUSIVE: i32 = 2;
    pub const MALFORMED: i32 = 64;
    pub const GRAM_MISMATCH: i32 = 65;
    pub const INTERNAL: i32 = 70;
}
