//! Rendering of command results as JSON, CSV or aligned text.

use anyhow::Result;
use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Pretty,
}

/// A command result. `table` is the CSV view: a header row, then records.
#[derive(Debug)]
pub struct Output {
    pub value: Value,
    pub table: Vec<Vec<String>>,
    /// Set when a verification found violations; the exit code becomes 1.
    pub failed: bool,
}

impl Output {
    pub fn new(value: Value, table: Vec<Vec<String>>) -> Self {
        Self { value, table, failed: false }
    }

    /// A one-record table built from the scalar fields of `value`.
    pub fn flat(value: Value) -> Self {
        let mut header = Vec::new();
        let mut row = Vec::new();
        if let Value::Object(map) = &value {
            for (k, v) in map {
                header.push(k.clone());
                row.push(cell(v));
            }
        }
        Self::new(value, vec![header, row])
    }

    pub fn failed(mut self, failed: bool) -> Self {
        self.failed = failed;
        self
    }

    pub fn render(&self, format: Format) -> Result<String> {
        Ok(match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.value)?;
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
                for r in &self.table {
                    w.write_record(r)?;
                }
                String::from_utf8(w.into_inner()?)?
            }
            Format::Pretty => {
                let mut s = String::new();
                pretty(&self.value, 0, &mut s);
                s
            }
        })
    }
}

/// Scalars print bare; arrays and objects print as compact JSON.
pub fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn pretty(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            let width = map.keys().map(|k| k.chars().count()).max().unwrap_or(0);
            for (k, x) in map {
                let gap = " ".repeat(width - k.chars().count());
                match x {
                    Value::Array(a) if a.iter().all(is_scalar) => {
                        let items: Vec<String> = a.iter().map(cell).collect();
                        out.push_str(&format!("{pad}{k}{gap}  [{}]\n", items.join(", ")));
                    }
                    Value::Object(m) if m.is_empty() => out.push_str(&format!("{pad}{k}{gap}  (none)\n")),
                    x if is_scalar(x) => out.push_str(&format!("{pad}{k}{gap}  {}\n", cell(x))),
                    x => {
                        out.push_str(&format!("{pad}{k}\n"));
                        pretty(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                if x.is_array() && x.as_array().is_some_and(|a| a.iter().all(is_scalar)) {
                    let row: Vec<String> = x.as_array().into_iter().flatten().map(cell).collect();
                    out.push_str(&format!("{pad}{}\n", row.join(" ")));
                } else if is_scalar(x) {
                    out.push_str(&format!("{pad}{}\n", cell(x)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    pretty(x, indent + 1, out);
                }
            }
        }
        x => out.push_str(&format!("{pad}{}\n", cell(x))),
    }
}
