//! Reports shared by every verb, rendered as JSON or as indented text from
//! the same JSON value so the two formats always carry identical data.

use serde_json::{json, Map, Value};

use crate::check::Check;

pub const SCHEMA: &str = "fqk/1";

#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub input: Map<String, Value>,
    pub payload: Map<String, Value>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report {
            command,
            input: Map::new(),
            payload: Map::new(),
            checks: Vec::new(),
        }
    }

    pub fn input(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.input.insert(key.into(), value.into());
        self
    }

    pub fn put(&mut self, key: &str, value: impl Into<Value>) {
        self.payload.insert(key.into(), value.into());
    }

    pub fn passed(&self) -> bool {
        Check::all_passed(&self.checks)
    }

    /// `{"schema", "command", "input", "payload", "checks"}` in that order.
    pub fn to_json(&self) -> Value {
        json!({
            "schema": SCHEMA,
            "command": self.command,
            "input": self.input,
            "payload": self.payload,
            "checks": self.checks,
        })
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{} ({SCHEMA})\n", self.command));
        section(&mut out, "input", &self.input);
        section(&mut out, "payload", &self.payload);
        if !self.checks.is_empty() {
            out.push_str("checks:\n");
            for c in &self.checks {
                let mark = if c.passed { "PASS" } else { "FAIL" };
                out.push_str(&format!("  {mark} {} [{}]\n", c.name, c.count));
            }
        }
        out
    }
}

/// Error envelope for JSON output.
pub fn error_json(command: &str, kind: &str, message: &str) -> String {
    let v = json!({
        "schema": SCHEMA,
        "command": command,
        "error": {"kind": kind, "message": message},
    });
    let mut s = serde_json::to_string_pretty(&v).expect("error serializes");
    s.push('\n');
    s
}

fn section(out: &mut String, name: &str, map: &Map<String, Value>) {
    out.push_str(name);
    out.push_str(":\n");
    write_map(out, map, 1);
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) if s.is_empty() => Some("\"\"".into()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn inline(v: &Value) -> Option<String> {
    match v {
        Value::Array(items) if items.is_empty() => Some("[]".into()),
        // strings (matrix rows, names) go one per line
        Value::Array(items) if items.iter().any(Value::is_string) => None,
        Value::Array(items) => items
            .iter()
            .map(scalar)
            .collect::<Option<Vec<_>>>()
            .map(|parts| format!("[{}]", parts.join(", "))),
        Value::Object(m) if m.is_empty() => Some("{}".into()),
        other => scalar(other),
    }
}

fn write_map(out: &mut String, map: &Map<String, Value>, depth: usize) {
    let pad = "  ".repeat(depth);
    for (k, v) in map {
        match inline(v) {
            Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
            None => {
                out.push_str(&format!("{pad}{k}:\n"));
                write_value(out, v, depth + 1);
            }
        }
    }
}

fn write_value(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => write_map(out, m, depth),
        Value::Array(items) => {
            for item in items {
                match (inline(item), item) {
                    (Some(s), _) => out.push_str(&format!("{pad}- {s}\n")),
                    (None, Value::Array(rows)) if rows.iter().all(Value::is_string) => {
                        // a matrix: first row on the dash line, the rest aligned
                        for (k, row) in rows.iter().enumerate() {
                            let lead = if k == 0 { "- " } else { "  " };
                            out.push_str(&format!(
                                "{pad}{lead}{}\n",
                                row.as_str().unwrap_or_default()
                            ));
                        }
                    }
                    (None, Value::Object(m)) => {
                        // first key on the dash line, the rest aligned beneath
                        let mut body = String::new();
                        write_map(&mut body, m, depth + 1);
                        let trimmed = body.trim_start_matches(' ');
                        out.push_str(&format!("{pad}- {trimmed}"));
                    }
                    (None, other) => {
                        out.push_str(&format!("{pad}-\n"));
                        write_value(out, other, depth + 1);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_layout() {
        let mut r = Report::new("demo").input("n", 3);
        r.put("rows", json!(["w^0 0", "0 w^1"]));
        r.put(
            "items",
            json!([{"name": "a", "dims": [1, 2]}, {"name": "b", "dims": []}]),
        );
        r.put("basis", json!([["w^0 0", "0 0"], ["0 w^1", "0 0"]]));
        r.put("table", json!([[0, null], [1, 0]]));
        r.checks.push(Check::new("identity", true, 4));
        let expected = "\
demo (fqk/1)
input:
  n: 3
payload:
  rows:
    - w^0 0
    - 0 w^1
  items:
    - name: a
      dims: [1, 2]
    - name: b
      dims: []
  basis:
    - w^0 0
      0 0
    - 0 w^1
      0 0
  table:
    - [0, -]
    - [1, 0]
checks:
  PASS identity [4]
";
        assert_eq!(r.render_text(), expected);
    }

    #[test]
    fn json_key_order() {
        let r = Report::new("demo").input("n", 3);
        let s = r.render_json();
        let pos = |k: &str| s.find(&format!("\"{k}\"")).unwrap();
        assert!(pos("schema") < pos("command") && pos("command") < pos("input"));
        assert!(pos("input") < pos("payload") && pos("payload") < pos("checks"));
    }
}
