//! Deterministic table emission.
//!
//! Both formats render from the same in-memory table: '#'-prefixed metadata
//! lines then comma-separated rows for CSV, a `{meta, rows}` object for
//! JSON. Floats are serialized with 12 significant digits so identical
//! configurations produce byte-identical files.

use std::fmt::Write as _;

use dirtytape::Rate;
use dirtytape::Unit;

/// 12-significant-digit rendering used for every floating-point value.
pub fn format_sig(x: f64) -> String {
    format!("{x:.11e}")
}

/// Float rounded to the serialized precision, for JSON number emission.
pub fn round_sig(x: f64) -> f64 {
    format_sig(x).parse().expect("formatted float reparses")
}

pub fn rate_cell(rate: Rate, unit: Unit) -> Cell {
    Cell::Float(rate.value_in(unit))
}

#[derive(Debug, Clone)]
pub enum Cell {
    Text(String),
    Int(u64),
    Float(f64),
    Bool(bool),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format_sig(*v),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Cell::Text(s) => serde_json::Value::String(s.clone()),
            Cell::Int(v) => serde_json::Value::from(*v),
            Cell::Float(v) => serde_json::Value::from(round_sig(*v)),
            Cell::Bool(b) => serde_json::Value::from(*b),
        }
    }
}

/// Rows sharing one column schema, optionally labeled (frontier files carry
/// an `achievable` and an `outer-bound` block).
#[derive(Debug, Clone)]
pub struct Block {
    pub label: Option<String>,
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Debug, Clone)]
pub struct Table {
    pub meta: Vec<(String, String)>,
    pub columns: Vec<&'static str>,
    pub blocks: Vec<Block>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self {
            meta: Vec::new(),
            columns,
            blocks: Vec::new(),
        }
    }

    pub fn meta(&mut self, key: &str, value: impl Into<String>) {
        self.meta.push((key.to_string(), value.into()));
    }

    pub fn meta_float(&mut self, key: &str, value: f64) {
        self.meta(key, format_sig(value));
    }

    pub fn push_block(&mut self, label: Option<&str>, rows: Vec<Vec<Cell>>) {
        self.blocks.push(Block {
            label: label.map(str::to_string),
            rows,
        });
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.meta {
            let _ = writeln!(out, "# {k}: {v}");
        }
        let _ = writeln!(out, "{}", self.columns.join(","));
        for block in &self.blocks {
            if let Some(label) = &block.label {
                let _ = writeln!(out, "# block: {label}");
            }
            for row in &block.rows {
                let cells: Vec<String> = row.iter().map(Cell::csv).collect();
                let _ = writeln!(out, "{}", cells.join(","));
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        let meta: serde_json::Map<String, serde_json::Value> = self
            .meta
            .iter()
            .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
            .collect();
        let mut rows = Vec::new();
        for block in &self.blocks {
            for row in &block.rows {
                let mut obj = serde_json::Map::new();
                if let Some(label) = &block.label {
                    obj.insert("block".into(), serde_json::Value::String(label.clone()));
                }
                for (col, cell) in self.columns.iter().zip(row) {
                    obj.insert((*col).to_string(), cell.json());
                }
                rows.push(serde_json::Value::Object(obj));
            }
        }
        let doc = serde_json::json!({ "meta": meta, "rows": rows });
        let mut s = serde_json::to_string_pretty(&doc).expect("document serializes");
        s.push('\n');
        s
    }
}
