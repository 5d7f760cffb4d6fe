//! Command results as a JSON tree, rendered either as JSON or as aligned
//! text carrying the same data.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

/// One verification verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), pass, detail: detail.into() }
    }

    pub fn to_json(&self) -> Value {
        json!({ "name": self.name, "pass": self.pass, "detail": self.detail })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub input: String,
    pub result: Value,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: impl Into<String>, input: impl Into<String>, result: Value) -> Self {
        Report { command: command.into(), input: input.into(), result, checks: Vec::new() }
    }

    pub fn with_checks(mut self, checks: Vec<Check>) -> Self {
        self.checks = checks;
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// `{command, input, result, checks: [{name, pass, detail}]}`.
    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "input": self.input,
            "result": self.result,
            "checks": self.checks.iter().map(Check::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let header = [("command", Value::from(self.command.as_str())), ("input", Value::from(self.input.as_str()))];
        let mut top = Map::new();
        for (k, v) in header {
            top.insert(k.into(), v);
        }
        top.insert("result".into(), self.result.clone());
        write_object(&mut out, &top, 0);
        if !self.checks.is_empty() {
            out.push_str("checks\n");
            let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
            for c in &self.checks {
                let verdict = if c.pass { "pass" } else { "FAIL" };
                let _ = writeln!(out, "  [{verdict}] {:<width$}  {}", c.name, c.detail);
            }
            let failed = self.checks.iter().filter(|c| !c.pass).count();
            let _ = writeln!(out, "{} checks, {} failed", self.checks.len(), failed);
        }
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| !i.is_array() && !i.is_object()) => {
            Some(format!("[{}]", items.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn write_object(out: &mut String, map: &Map<String, Value>, indent: usize) {
    let width = map.keys().map(String::len).max().unwrap_or(0);
    let pad = " ".repeat(indent);
    for (k, v) in map {
        match scalar(v) {
            Some(s) => {
                let _ = writeln!(out, "{pad}{k:<width$}  {s}");
            }
            None => {
                let _ = writeln!(out, "{pad}{k}");
                write_value(out, v, indent + 2);
            }
        }
    }
}

fn write_value(out: &mut String, v: &Value, indent: usize) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => write_object(out, map, indent),
        Value::Array(items) => {
            for item in items {
                match (scalar(item), item) {
                    (Some(s), _) => {
                        let _ = writeln!(out, "{pad}- {s}");
                    }
                    (None, Value::Object(map)) => {
                        let mut first = String::new();
                        write_object(&mut first, map, indent + 2);
                        let _ = write!(out, "{pad}- {}", &first[indent + 2..]);
                    }
                    (None, other) => {
                        let _ = writeln!(out, "{pad}-");
                        write_value(out, other, indent + 2);
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other).unwrap_or_default());
        }
    }
}
