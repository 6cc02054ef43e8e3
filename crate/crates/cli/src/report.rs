//! Report assembly and rendering to JSON, CSV and text.

use std::collections::BTreeSet;

use serde::Serialize;
use serde_json::{Map, Value};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// One command's output. `rows` back the CSV view (one row per witness or
/// check); `summary` backs the text view.
pub struct Report {
    pub command: &'static str,
    /// Name of the result the computation instantiates.
    pub paper_anchor: &'static str,
    pub input: Map<String, Value>,
    pub result: Value,
    pub rows: Vec<Map<String, Value>>,
    pub summary: Vec<String>,
}

impl Report {
    pub fn new(command: &'static str, paper_anchor: &'static str) -> Self {
        Report {
            command,
            paper_anchor,
            input: Map::new(),
            result: Value::Object(Map::new()),
            rows: Vec::new(),
            summary: Vec::new(),
        }
    }

    pub fn input(mut self, key: &str, v: impl Serialize) -> Self {
        self.input.insert(key.into(), to_value(v));
        self
    }

    pub fn result(mut self, v: impl Serialize) -> Self {
        self.result = to_value(v);
        self
    }

    pub fn row(&mut self, fields: &[(&str, Value)]) {
        self.rows
            .push(fields.iter().map(|(k, v)| (k.to_string(), v.clone())).collect());
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.summary.push(s.into());
    }

    pub fn to_json(&self) -> Value {
        let mut top = Map::new();
        top.insert("command".into(), Value::from(self.command));
        top.insert("paper_anchor".into(), Value::from(self.paper_anchor));
        top.insert("schema_version".into(), Value::from(SCHEMA_VERSION));
        top.insert("input".into(), Value::Object(self.input.clone()));
        top.insert("result".into(), self.result.clone());
        top.insert(
            "rows".into(),
            Value::Array(self.rows.iter().cloned().map(Value::Object).collect()),
        );
        sorted(Value::Object(top))
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("JSON values serialize");
                s.push('\n');
                s
            }
            Format::Csv => self.to_csv(),
            Format::Text => {
                let mut s = format!("{} ({})\n", self.command, self.paper_anchor);
                for l in &self.summary {
                    s.push_str("  ");
                    s.push_str(l);
                    s.push('\n');
                }
                s
            }
        }
    }

    fn to_csv(&self) -> String {
        let header: BTreeSet<&String> = self.rows.iter().flat_map(|r| r.keys()).collect();
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&header).expect("write to memory");
        for r in &self.rows {
            let cells = header.iter().map(|k| r.get(*k).map_or(String::new(), cell));
            w.write_record(cells).expect("write to memory");
        }
        String::from_utf8(w.into_inner().expect("flush to memory")).expect("CSV is UTF-8")
    }
}

pub fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

/// Object keys in lexicographic order, whatever map type serde_json uses.
fn sorted(v: Value) -> Value {
    match v {
        Value::Object(m) => {
            let mut pairs: Vec<(String, Value)> = m.into_iter().collect();
            pairs.sort_by(|a, b| a.0.cmp(&b.0));
            Value::Object(pairs.into_iter().map(|(k, v)| (k, sorted(v))).collect())
        }
        Value::Array(a) => Value::Array(a.into_iter().map(sorted).collect()),
        other => other,
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        Value::Array(a) => a.iter().map(cell).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}
