//! Report assembly and rendering.

use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;
use serde_json::{json, Value};

use crate::schema::REPORT_SCHEMA;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    /// Enough data to reproduce the first failing case.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub repro: Option<Value>,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self { name: name.into(), passed, detail: detail.into(), repro: None }
    }

    pub fn with_repro(mut self, repro: Value) -> Self {
        self.repro = Some(repro);
        self
    }
}

/// Collects the trials of one property into a single [`Check`], keeping the
/// first failure.
pub struct Property {
    name: String,
    trials: usize,
    failures: usize,
    first: Option<(String, Value)>,
}

impl Property {
    pub fn new(name: impl Into<String>) -> Self {
        Self { name: name.into(), trials: 0, failures: 0, first: None }
    }

    pub fn record(&mut self, ok: bool, why: impl FnOnce() -> (String, Value)) {
        self.trials += 1;
        if !ok {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(why());
            }
        }
    }

    /// A trial that could not be evaluated counts as a failure.
    pub fn record_result<T, E: std::fmt::Display>(&mut self, r: Result<T, E>, repro: impl FnOnce() -> Value) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.record(false, || (e.to_string(), repro()));
                None
            }
        }
    }

    pub fn finish(self) -> Check {
        let passed = self.failures == 0 && self.trials > 0;
        match self.first {
            Some((why, repro)) => Check::new(
                self.name,
                false,
                format!("{} of {} trials failed; first: {why}", self.failures, self.trials),
            )
            .with_repro(repro),
            None if self.trials == 0 => Check::new(self.name, false, "no trials ran"),
            None => Check::new(self.name, passed, format!("{} trials", self.trials)),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: Value,
    pub passed: bool,
    pub items: Value,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Value>,
}

impl Report {
    pub fn new(command: Value, items: Value, checks: Vec<Check>) -> Self {
        let first_failure = checks.iter().find(|c| !c.passed).cloned();
        Self { schema: REPORT_SCHEMA, command, passed: first_failure.is_none(), items, checks, first_failure, timing: None }
    }

    pub fn with_timing(mut self, total: Duration, parts: &[(String, Duration)]) -> Self {
        let mut m = serde_json::Map::new();
        m.insert("total_seconds".into(), json!(total.as_secs_f64()));
        for (k, d) in parts {
            m.insert(format!("{k}_seconds"), json!(d.as_secs_f64()));
        }
        self.timing = Some(Value::Object(m));
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.command);
        if !self.items.is_null() {
            render_value(&mut out, &self.items, 0);
        }
        for c in &self.checks {
            let _ = writeln!(out, "[{}] {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
        }
        if let Some(f) = &self.first_failure {
            let _ = writeln!(out, "first failure: {}", f.name);
            if let Some(r) = &f.repro {
                let _ = writeln!(out, "  repro: {r}");
            }
        }
        if let Some(t) = &self.timing {
            let _ = writeln!(out, "timing: {t}");
        }
        let _ = writeln!(out, "{}", if self.passed { "result: pass" } else { "result: FAIL" });
        out
    }
}

fn is_scalar(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.iter().all(|x| !x.is_array() && !x.is_object()),
        Value::Object(m) => m.is_empty(),
        _ => true,
    }
}

fn render_value(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if is_scalar(x) {
                    let _ = writeln!(out, "{pad}{k}: {}", scalar(x));
                } else {
                    let _ = writeln!(out, "{pad}{k}:");
                    render_value(out, x, indent + 1);
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                if is_scalar(x) {
                    let _ = writeln!(out, "{pad}- {}", scalar(x));
                } else {
                    let _ = writeln!(out, "{pad}-");
                    render_value(out, x, indent + 1);
                }
            }
        }
        x => {
            let _ = writeln!(out, "{pad}{}", scalar(x));
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => format!("[{}]", a.iter().map(scalar).collect::<Vec<_>>().join(", ")),
        Value::Object(_) => "{}".into(),
        x => x.to_string(),
    }
}
