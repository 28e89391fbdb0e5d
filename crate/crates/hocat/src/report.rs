//! Reports emitted by the command line: a verdict with its bounds and,
//! on failure, a machine-readable witness that can be replayed.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// The elapsed-time field is kept out of the serialized form so that
/// identical invocations produce byte-identical reports; it is printed on
/// stderr instead.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub verdict: String,
    pub bounds: BTreeMap<String, u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub details: Option<serde_json::Value>,
    #[serde(skip)]
    pub elapsed: Option<std::time::Duration>,
}

impl Report {
    pub fn new(command: &str, verdict: &str) -> Report {
        Report {
            command: command.to_string(),
            verdict: verdict.to_string(),
            bounds: BTreeMap::new(),
            witness: None,
            details: None,
            elapsed: None,
        }
    }

    pub fn bound(mut self, key: &str, value: u64) -> Report {
        self.bounds.insert(key.to_string(), value);
        self
    }

    pub fn witness(mut self, w: serde_json::Value) -> Report {
        self.witness = Some(w);
        self
    }

    pub fn details(mut self, d: serde_json::Value) -> Report {
        self.details = Some(d);
        self
    }

    pub fn emit(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
