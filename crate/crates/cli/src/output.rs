//! Table rendering. Floats use Rust's shortest round-trip form, so every
//! value written can be parsed back to the same bits.

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::config::{Format, RunConfig};

pub const TOOL: &str = "tsense";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
    Empty,
}

impl Cell {
    pub fn opt(v: Option<f64>) -> Cell {
        v.map_or(Cell::Empty, Cell::Num)
    }

    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => format!("{x:?}"),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) => json!(x),
            Cell::Int(n) => json!(n),
            Cell::Text(s) => json!(s),
            Cell::Empty => Value::Null,
        }
    }
}

/// A grid result with its provenance.
#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// Extra metadata next to the run configuration.
    pub meta: Vec<(String, Value)>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new(), meta: Vec::new() }
    }

    pub fn meta(&mut self, key: &str, value: impl Serialize) {
        self.meta.push((key.to_string(), serde_json::to_value(value).expect("metadata serializes")));
    }

    pub fn render(&self, cfg: &RunConfig) -> String {
        match cfg.format {
            Format::Csv => self.csv(cfg),
            Format::Json => {
                let body = json!({
                    "meta": meta_object(cfg, &self.meta),
                    "columns": self.columns,
                    "rows": self.rows.iter().map(|r| r.iter().map(Cell::json).collect::<Vec<_>>()).collect::<Vec<_>>(),
                });
                pretty(&body)
            }
        }
    }

    fn csv(&self, cfg: &RunConfig) -> String {
        let mut out = format!("# {TOOL} {VERSION}\n# config={}\n", cfg.to_json());
        for (k, v) in &self.meta {
            out.push_str(&format!("# {k}={}\n", serde_json::to_string(v).expect("metadata serializes")));
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }
}

pub fn meta_object(cfg: &RunConfig, extra: &[(String, Value)]) -> Value {
    let mut m = Map::new();
    m.insert("tool".into(), json!(TOOL));
    m.insert("version".into(), json!(VERSION));
    m.insert("config".into(), serde_json::to_value(cfg).expect("config serializes"));
    for (k, v) in extra {
        m.insert(k.clone(), v.clone());
    }
    Value::Object(m)
}

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json serializes");
    s.push('\n');
    s
}
