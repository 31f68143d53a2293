//! Table serialization. One [`Table`] renders to either CSV (metadata as
//! `# key = value` comment lines, header row, LF endings, `.` decimal
//! separator, floats printed as `{:.16e}` so a reparse recovers every bit)
//! or a JSON envelope `{"meta": {...}, "rows": [...]}` (serde_json emits the
//! shortest decimal that round-trips, never more than 17 significant digits).

use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::Failure;

#[derive(Debug, Clone)]
pub enum Cell {
    Int(i64),
    Num(f64),
    Str(&'static str),
    /// Rendered as an empty CSV field / JSON null (e.g. the physical-energy
    /// column in natural units).
    Missing,
}

#[derive(Debug, Default)]
pub struct Table {
    pub meta: Vec<(&'static str, Value)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Table { meta: Vec::new(), columns, rows: Vec::new() }
    }

    pub fn meta_num(&mut self, key: &'static str, v: f64) {
        self.meta.push((key, json!(v)));
    }

    pub fn meta_str(&mut self, key: &'static str, v: impl Into<String>) {
        self.meta.push((key, Value::String(v.into())));
    }

    pub fn meta_int(&mut self, key: &'static str, v: i64) {
        self.meta.push((key, json!(v)));
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.meta {
            // metadata stays human-readable: bare strings, shortest numbers
            match v {
                Value::String(s) => writeln!(out, "# {k} = {s}"),
                other => writeln!(out, "# {k} = {other}"),
            }
            .unwrap();
        }
        writeln!(out, "{}", self.columns.join(",")).unwrap();
        for row in &self.rows {
            let fields: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Int(i) => i.to_string(),
                    Cell::Num(x) => format!("{x:.16e}"),
                    Cell::Str(s) => (*s).to_string(),
                    Cell::Missing => String::new(),
                })
                .collect();
            writeln!(out, "{}", fields.join(",")).unwrap();
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let meta: Map<String, Value> =
            self.meta.iter().map(|(k, v)| ((*k).to_string(), v.clone())).collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(col, cell)| {
                        let v = match cell {
                            Cell::Int(i) => json!(i),
                            Cell::Num(x) => json!(x),
                            Cell::Str(s) => json!(s),
                            Cell::Missing => Value::Null,
                        };
                        ((*col).to_string(), v)
                    })
                    .collect();
                Value::Object(obj)
            })
            .collect();
        json!({ "meta": meta, "rows": rows })
    }

    pub fn render(&self, format: crate::config::Format) -> String {
        match format {
            crate::config::Format::Csv => self.to_csv(),
            crate::config::Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).unwrap();
                s.push('\n');
                s
            }
        }
    }
}

/// Write to the output path, or stdout when none was configured.
pub fn deliver(text: &str, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
