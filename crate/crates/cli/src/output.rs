//! Tables and reports, written as CSV or JSON.

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use anyhow::Result;
use chyp::hermitian::CMat3;
use chyp::C64;
use serde_json::{json, Map, Value};

use crate::config::Format;

pub const OK: &str = "ok";

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            // 17 significant digits
            Cell::Num(x) if x.is_finite() => format!("{x:.16e}"),
            Cell::Num(x) => format!("{x}"),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) if x.is_finite() => json!(x),
            Cell::Num(_) => Value::Null,
            Cell::Int(i) => json!(i),
            Cell::Text(s) => json!(s),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<usize> for Cell {
    fn from(i: usize) -> Self {
        Cell::Int(i as i64)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map(Cell::Num).unwrap_or_else(|| Cell::Text(String::new()))
    }
}

/// A dataset whose last column is `status`.
#[derive(Debug, Clone)]
pub struct Table {
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(headers: &[&'static str]) -> Self {
        let mut headers = headers.to_vec();
        headers.push("status");
        Self { headers, rows: Vec::new() }
    }

    /// Appends a row; `status` is `ok` or the reason the row is flagged.
    pub fn push(&mut self, mut cells: Vec<Cell>, status: impl Into<String>) {
        debug_assert_eq!(cells.len() + 1, self.headers.len());
        cells.push(Cell::Text(status.into()));
        self.rows.push(cells);
    }

    pub fn flagged(&self) -> usize {
        self.rows.iter().filter(|r| r.last() != Some(&Cell::Text(OK.into()))).count()
    }

    fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(w);
        w.write_record(&self.headers)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv))?;
        }
        w.flush()?;
        Ok(())
    }

    fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    let m: Map<String, Value> =
                        self.headers.iter().zip(row).map(|(h, c)| (h.to_string(), c.json())).collect();
                    Value::Object(m)
                })
                .collect(),
        )
    }
}

pub fn complex(z: C64) -> Value {
    json!([z.re, z.im])
}

pub fn matrix(m: &CMat3) -> Value {
    Value::Array((0..3).map(|i| Value::Array((0..3).map(|j| complex(m[(i, j)])).collect())).collect())
}

/// `key,value` rows of a JSON value, nested keys joined with dots.
fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, v)| flatten(&key(k), v, out)),
        Value::Array(a) => a.iter().enumerate().for_each(|(i, v)| flatten(&key(&i.to_string()), v, out)),
        Value::Number(n) => out.push((
            prefix.to_string(),
            n.as_f64().map(|x| Cell::Num(x).csv()).unwrap_or_else(|| n.to_string()),
        )),
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        Value::Bool(b) => out.push((prefix.to_string(), b.to_string())),
        Value::Null => out.push((prefix.to_string(), String::new())),
    }
}

fn sink(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(io::BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

pub fn write_table(t: &Table, format: Format, path: Option<&Path>) -> Result<()> {
    let mut w = sink(path)?;
    match format {
        Format::Csv => t.write_csv(&mut w)?,
        Format::Json => {
            serde_json::to_writer_pretty(&mut w, &t.to_json())?;
            writeln!(w)?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_report(v: &Value, format: Format, path: Option<&Path>) -> Result<()> {
    let mut w = sink(path)?;
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut w, v)?;
            writeln!(w)?;
        }
        Format::Csv => {
            let mut rows = Vec::new();
            flatten("", v, &mut rows);
            let mut c = csv::Writer::from_writer(&mut w);
            c.write_record(["field", "value"])?;
            for (k, v) in rows {
                c.write_record([k, v])?;
            }
            c.flush()?;
        }
    }
    w.flush()?;
    Ok(())
}
