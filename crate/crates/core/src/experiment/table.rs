use std::io::Write;

use serde::Serialize;
use serde_json::{Map, Value};

use super::{ExperimentError, Format};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(u64),
    Bool(bool),
    Text(&'static str),
}

impl Cell {
    /// CSV text: floats with 17 significant digits in scientific notation.
    fn csv_text(&self) -> String {
        match *self {
            Cell::Float(x) if x.is_nan() => "NaN".into(),
            Cell::Float(x) if x.is_infinite() => if x > 0.0 { "inf" } else { "-inf" }.into(),
            Cell::Float(x) => format!("{x:.16e}"),
            Cell::Int(n) => n.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.to_string(),
        }
    }

    fn json(&self) -> Value {
        match *self {
            Cell::Float(x) => serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number),
            Cell::Int(n) => Value::from(n),
            Cell::Bool(b) => Value::Bool(b),
            Cell::Text(s) => Value::from(s),
        }
    }
}

/// Provenance block written ahead of the rows.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Meta {
    pub tool: &'static str,
    pub version: &'static str,
    pub mode: &'static str,
    pub seed: u64,
    pub quad_order: usize,
    pub m: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: &'static [&'static str],
    pub rows: Vec<Vec<Cell>>,
    /// Rows that failed a convergence or invariant check.
    pub flagged: usize,
}

impl Table {
    pub fn new(columns: &'static [&'static str]) -> Self {
        Self { columns, rows: Vec::new(), flagged: 0 }
    }

    pub fn push(&mut self, row: Vec<Cell>, flagged: bool) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
        self.flagged += usize::from(flagged);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| *c == name)
    }

    pub fn float(&self, row: usize, name: &str) -> Option<f64> {
        match self.rows.get(row)?.get(self.column(name)?)? {
            Cell::Float(x) => Some(*x),
            _ => None,
        }
    }

    pub fn write<W: Write>(&self, meta: &Meta, format: Format, out: W) -> Result<(), ExperimentError> {
        match format {
            Format::Csv => self.write_csv(meta, out),
            Format::Json => self.write_json(meta, out),
        }
    }

    /// `#`-prefixed meta lines, then a header and rows with RFC 4180 quoting,
    /// LF line endings.
    pub fn write_csv<W: Write>(&self, meta: &Meta, mut out: W) -> Result<(), ExperimentError> {
        writeln!(out, "# tool={}", meta.tool)?;
        writeln!(out, "# version={}", meta.version)?;
        writeln!(out, "# mode={}", meta.mode)?;
        writeln!(out, "# seed={}", meta.seed)?;
        writeln!(out, "# quad_order={}", meta.quad_order)?;
        writeln!(out, "# m={:.16e}", meta.m)?;
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
        w.write_record(self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv_text))?;
        }
        w.flush()?;
        Ok(())
    }

    /// `{"meta": {...}, "rows": [{column: value, ...}, ...]}`.
    pub fn write_json<W: Write>(&self, meta: &Meta, mut out: W) -> Result<(), ExperimentError> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> =
                    self.columns.iter().zip(row).map(|(c, v)| (c.to_string(), v.json())).collect();
                Value::Object(obj)
            })
            .collect();
        let doc = serde_json::json!({ "meta": meta, "rows": rows });
        serde_json::to_writer_pretty(&mut out, &doc)?;
        writeln!(out)?;
        Ok(())
    }
}
