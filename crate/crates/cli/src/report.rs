use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Serialize)]
pub struct Input {
    pub path: String,
    pub sha256: String,
    pub order: usize,
}

/// One evaluated fact.
#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub value: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<Value>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, value: impl Serialize) -> Self {
        Check {
            name: name.into(),
            value: json(value),
            witness: None,
            data: None,
            detail: String::new(),
        }
    }

    pub fn witness(mut self, w: impl Serialize) -> Self {
        let w = json(w);
        let empty = w.is_null() || w.as_array().is_some_and(Vec::is_empty);
        if !empty {
            self.witness = Some(w);
        }
        self
    }

    pub fn data(mut self, d: impl Serialize) -> Self {
        self.data = Some(json(d));
        self
    }

    pub fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = d.into();
        self
    }
}

pub fn json(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<Input>,
    pub results: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub elapsed_ms: u128,
    pub exit_code: i32,
}

impl Report {
    pub fn new(command: Vec<String>) -> Self {
        Report {
            tool: env!("CARGO_BIN_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command,
            input: None,
            results: Vec::new(),
            notes: Vec::new(),
            elapsed_ms: 0,
            exit_code: 0,
        }
    }

    pub fn push(&mut self, c: Check) {
        self.results.push(c);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// Same facts as [`Report::to_json`], laid out for reading.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {}: {}", self.tool, self.version, self.command.join(" "));
        if let Some(i) = &self.input {
            let _ = writeln!(s, "input: {} (order {}, sha256 {})", i.path, i.order, i.sha256);
        }
        for note in &self.notes {
            let _ = writeln!(s, "note: {note}");
        }
        for c in &self.results {
            let _ = writeln!(s, "{}: {}", c.name, inline(&c.value));
            if let Some(w) = &c.witness {
                let _ = writeln!(s, "  witness: {}", inline(w));
            }
            if let Some(d) = &c.data {
                let _ = writeln!(s, "  data: {}", inline(d));
            }
            for line in c.detail.lines() {
                let _ = writeln!(s, "  {line}");
            }
        }
        let _ = writeln!(s, "elapsed: {} ms", self.elapsed_ms);
        let _ = write!(s, "exit code: {}", self.exit_code);
        s
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
