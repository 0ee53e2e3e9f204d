//! Structured pass/fail records emitted by every verification suite.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<Value>,
    pub duration_ms: f64,
}

/// Result of a single check before it is timed and recorded.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub status: Status,
    pub witness: Option<String>,
    pub detail: Option<Value>,
}

impl Outcome {
    pub fn pass() -> Self {
        Outcome { status: Status::Pass, witness: None, detail: None }
    }

    pub fn fail(witness: impl Into<String>) -> Self {
        Outcome { status: Status::Fail, witness: Some(witness.into()), detail: None }
    }

    pub fn info(detail: Value) -> Self {
        Outcome { status: Status::Info, witness: None, detail: Some(detail) }
    }

    /// Pass if `witness` is `None`, fail with it otherwise.
    pub fn from_witness(witness: Option<String>) -> Self {
        match witness {
            None => Self::pass(),
            Some(w) => Self::fail(w),
        }
    }

    pub fn with_detail(mut self, detail: Value) -> Self {
        self.detail = Some(detail);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub params: BTreeMap<String, Value>,
    pub toolchain: String,
    pub complete: bool,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            schema: SCHEMA_VERSION,
            command: command.into(),
            params: BTreeMap::new(),
            toolchain: format!("qzero {}", env!("CARGO_PKG_VERSION")),
            complete: true,
            checks: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), v.into());
        self
    }

    /// Runs `f`, times it and records the outcome under `name`.
    pub fn run(&mut self, name: impl Into<String>, f: impl FnOnce() -> Outcome) -> Status {
        let t = Instant::now();
        let out = f();
        self.push(name, out, t.elapsed().as_secs_f64() * 1e3)
    }

    pub fn push(&mut self, name: impl Into<String>, out: Outcome, duration_ms: f64) -> Status {
        let name = name.into();
        debug_assert!(
            self.checks.iter().all(|c| c.name != name),
            "duplicate check name {name}"
        );
        let status = out.status;
        self.checks.push(Check {
            name,
            status,
            witness: out.witness,
            detail: out.detail,
            duration_ms,
        });
        status
    }

    pub fn merge(&mut self, other: Report) {
        self.complete &= other.complete;
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail).collect()
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// JSON with every `duration_ms` zeroed, for reproducibility comparisons.
    pub fn to_json_untimed(&self) -> String {
        let mut r = self.clone();
        for c in &mut r.checks {
            c.duration_ms = 0.0;
        }
        r.to_json()
    }

    /// One line per check.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {:?}\n", self.command, self.params);
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Info => "INFO",
            };
            s.push_str(&format!("[{tag}] {}", c.name));
            if let Some(w) = &c.witness {
                s.push_str(&format!("  witness: {w}"));
            }
            if let Some(d) = &c.detail {
                s.push_str(&format!("  {d}"));
            }
            s.push('\n');
        }
        s
    }
}

/// Structural validation against the published report schema
/// (`schema/report.schema.json`).
pub fn validate_report_json(v: &Value) -> Result<(), String> {
    let obj = v.as_object().ok_or("report is not an object")?;
    for key in ["schema", "command", "params", "toolchain", "complete", "checks"] {
        if !obj.contains_key(key) {
            return Err(format!("missing field `{key}`"));
        }
    }
    if obj["schema"].as_u64() != Some(SCHEMA_VERSION as u64) {
        return Err("unsupported schema version".into());
    }
    obj["command"].as_str().ok_or("command must be a string")?;
    obj["params"].as_object().ok_or("params must be an object")?;
    obj["toolchain"].as_str().ok_or("toolchain must be a string")?;
    obj["complete"].as_bool().ok_or("complete must be a boolean")?;
    let checks = obj["checks"].as_array().ok_or("checks must be an array")?;
    let mut seen = std::collections::HashSet::new();
    for c in checks {
        let c = c.as_object().ok_or("check is not an object")?;
        let name = c.get("name").and_then(Value::as_str).ok_or("check name missing")?;
        if !seen.insert(name.to_string()) {
            return Err(format!("duplicate check `{name}`"));
        }
        let status = c.get("status").and_then(Value::as_str).ok_or("check status missing")?;
        match status {
            "pass" | "info" => {}
            "fail" => {
                c.get("witness").and_then(Value::as_str).ok_or("failed check without witness")?;
            }
            other => return Err(format!("unknown status `{other}`")),
        }
        c.get("duration_ms").and_then(Value::as_f64).ok_or("duration_ms missing")?;
    }
    Ok(())
}
