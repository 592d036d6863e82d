//! CSV and JSON tables with an echoed config block.

use std::io::{self, Write};

use serde_json::{json, Map, Value};

use crate::config::{Format, CONFIG_BEGIN, CONFIG_END};

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
    pub config: Vec<(&'static str, String)>,
    /// Extra `key=value` metadata lines (flags, notes, derived results).
    pub meta: Vec<(String, String)>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>, config: Vec<(&'static str, String)>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
            config,
            meta: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn meta(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.meta.push((key.into(), value.into()));
    }

    pub fn write<W: Write>(&self, format: Format, w: &mut W) -> io::Result<()> {
        match format {
            Format::Csv => self.write_csv(w),
            Format::Json => self.write_json(w),
        }
    }

    fn write_csv<W: Write>(&self, w: &mut W) -> io::Result<()> {
        writeln!(w, "# wqed {}", env!("CARGO_PKG_VERSION"))?;
        writeln!(w, "{CONFIG_BEGIN}")?;
        for (k, v) in &self.config {
            writeln!(w, "# {k}={v}")?;
        }
        writeln!(w, "{CONFIG_END}")?;
        for (k, v) in &self.meta {
            writeln!(w, "# {k}={v}")?;
        }
        writeln!(w, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&x| format_number(x)).collect();
            writeln!(w, "{}", cells.join(","))?;
        }
        Ok(())
    }

    fn write_json<W: Write>(&self, w: &mut W) -> io::Result<()> {
        let config: Map<String, Value> = self
            .config
            .iter()
            .map(|(k, v)| (k.to_string(), json!(v)))
            .collect();
        let meta: Map<String, Value> = self
            .meta
            .iter()
            .map(|(k, v)| (k.clone(), json!(v)))
            .collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Array(r.iter().map(|&x| json_number(x)).collect()))
            .collect();
        let doc = json!({
            "version": env!("CARGO_PKG_VERSION"),
            "config": config,
            "meta": meta,
            "columns": self.columns,
            "rows": rows,
        });
        serde_json::to_writer_pretty(&mut *w, &doc)?;
        writeln!(w)
    }
}

/// Shortest round-trip decimal; exponent form outside [1e-4, 1e15).
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let a = x.abs();
    if (1e-4..1e15).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn json_number(x: f64) -> Value {
    serde_json::Number::from_f64(x)
        .map(Value::Number)
        .unwrap_or(Value::Null)
}
