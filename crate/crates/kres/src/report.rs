use std::time::Duration;

use serde_json::{json, Map, Value};

use kres_core::localization::EquivClass;
use kres_core::FactoredRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    /// The mathematics says no (exit code 1).
    Reject,
    /// Input data failed validation (exit code 2).
    Invalid,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Reject => 1,
            Status::Invalid => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Reject => "reject",
            Status::Invalid => "invalid",
        }
    }
}

/// Command outcome. `payload` is deterministic; `elapsed` only shows up in
/// the human rendering.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: Vec<String>,
    pub status: Status,
    pub payload: Value,
    pub human: String,
    pub elapsed: Duration,
}

impl Report {
    pub fn json(&self) -> String {
        serde_json::to_string_pretty(&self.payload).expect("payload is plain JSON")
    }

    pub fn render_human(&self) -> String {
        format!(
            "$ kres {}\n{}\nstatus: {} ({:.3} ms)\n",
            self.command.join(" "),
            self.human.trim_end(),
            self.status.as_str(),
            self.elapsed.as_secs_f64() * 1e3
        )
    }
}

/// Standard payload header: command echo and status.
pub fn envelope(command: &[String], status: Status, body: Value) -> Value {
    let mut m = Map::new();
    m.insert("command".into(), json!(command));
    m.insert("status".into(), json!(status.as_str()));
    if let Value::Object(b) = body {
        m.extend(b);
    }
    Value::Object(m)
}

pub fn fr(x: &FactoredRational) -> Value {
    Value::String(x.to_text())
}

pub fn class(c: &EquivClass) -> Value {
    let r: Map<String, Value> = c
        .restrictions()
        .iter()
        .map(|(l, p)| (l.clone(), Value::String(p.to_text())))
        .collect();
    json!({ "name": c.name(), "degree": c.degree(), "restrictions": r })
}
