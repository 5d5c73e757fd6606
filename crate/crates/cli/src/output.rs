//! CSV and JSON writers.
//!
//! CSV: one fixed header row, decimal integers, floats in shortest
//! round-trip form, `inf`/`-inf` for unbounded edges. JSON: a single object
//! with `schema_version`, the command name, its parameters and the rows;
//! unbounded bin edges are `null`.

use std::io::{self, Write};

use modknot::{BigInt, CauchyReport, ClassRecord, DensityReport};
use serde_json::{json, Map, Number, Value};

pub const SCHEMA_VERSION: u32 = 1;

pub const CLASS_COLUMNS: &[&str] = &["necklace", "a", "b", "c", "d", "trace", "length"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Debug)]
pub enum Cell {
    Str(String),
    Int(BigInt),
    Float(f64),
    Bool(bool),
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Str(s)
    }
}
impl From<i64> for Cell {
    fn from(x: i64) -> Self {
        Cell::Int(x.into())
    }
}
impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}
impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Cell::Bool(x)
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Str(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
            Cell::Str(s) => s.clone(),
            Cell::Int(x) => x.to_string(),
            Cell::Float(x) => fmt_float(*x),
            Cell::Bool(x) => x.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Str(s) => Value::String(s.clone()),
            Cell::Int(x) => big(x),
            Cell::Float(x) => float(*x),
            Cell::Bool(x) => Value::Bool(*x),
        }
    }
}

/// Shortest round-trip text; exponent form outside [1e-5, 1e16).
pub fn fmt_float(x: f64) -> String {
    format!("{x:?}")
}

/// Integer of any size as a JSON number.
pub fn big(x: &BigInt) -> Value {
    Value::Number(x.to_string().parse::<Number>().expect("decimal integer"))
}

fn float(x: f64) -> Value {
    Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
}

pub fn class_row(r: &ClassRecord) -> Vec<Cell> {
    let [a, b, c, d] = r.rep.entries();
    vec![
        r.necklace.to_string().into(),
        Cell::Int(a.clone()),
        Cell::Int(b.clone()),
        Cell::Int(c.clone()),
        Cell::Int(d.clone()),
        Cell::Int(r.trace().clone()),
        r.length().into(),
    ]
}

pub struct Table {
    command: &'static str,
    columns: Vec<String>,
    meta: Map<String, Value>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(command: &'static str, columns: &[&str]) -> Self {
        Table {
            command,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            meta: Map::new(),
            rows: Vec::new(),
        }
    }

    pub fn meta_bound(&mut self, trace_bound: Option<u64>, length_bound: Option<f64>) {
        if let Some(nu) = trace_bound {
            self.meta.insert("trace_bound".into(), nu.into());
        }
        if let Some(len) = length_bound {
            self.meta.insert("length_bound".into(), float(len));
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write(&self, format: Format, out: &mut impl Write) -> io::Result<()> {
        match format {
            Format::Csv => {
                writeln!(out, "{}", self.columns.join(","))?;
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(Cell::csv).collect();
                    writeln!(out, "{}", cells.join(","))?;
                }
                Ok(())
            }
            Format::Json => {
                let mut obj = Map::new();
                obj.insert("schema_version".into(), SCHEMA_VERSION.into());
                obj.insert("command".into(), self.command.into());
                obj.extend(self.meta.clone());
                let records: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let fields = self.columns.iter().cloned().zip(row.iter().map(Cell::json));
                        Value::Object(fields.collect())
                    })
                    .collect();
                obj.insert("records".into(), Value::Array(records));
                write_json(&Value::Object(obj), out)
            }
        }
    }
}

fn write_json(v: &Value, out: &mut impl Write) -> io::Result<()> {
    serde_json::to_writer(&mut *out, v)?;
    writeln!(out)
}

pub fn write_density(r: &DensityReport, format: Format, out: &mut impl Write) -> io::Result<()> {
    match format {
        Format::Csv => {
            writeln!(out, "residue,count,density")?;
            for (k, (c, d)) in r.counts.iter().zip(&r.densities).enumerate() {
                writeln!(out, "{k},{c},{}", fmt_float(*d))?;
            }
            Ok(())
        }
        Format::Json => {
            let v = json!({
                "schema_version": SCHEMA_VERSION,
                "command": "density",
                "modulus": r.modulus,
                "trace_bound": r.nu,
                "total": r.total,
                "counts": r.counts,
                "densities": r.densities,
                "max_deviation": r.max_deviation,
            });
            write_json(&v, out)
        }
    }
}

pub fn write_cauchy(r: &CauchyReport, format: Format, out: &mut impl Write) -> io::Result<()> {
    match format {
        Format::Csv => {
            writeln!(out, "a,b,empirical,theoretical")?;
            for b in &r.bins {
                let cells = [b.a, b.b, b.empirical, b.theoretical].map(fmt_float);
                writeln!(out, "{}", cells.join(","))?;
            }
            Ok(())
        }
        Format::Json => {
            let bins: Vec<Value> = r
                .bins
                .iter()
                .map(|b| {
                    json!({
                        "a": float(b.a),
                        "b": float(b.b),
                        "empirical": b.empirical,
                        "theoretical": b.theoretical,
                    })
                })
                .collect();
            let v = json!({
                "schema_version": SCHEMA_VERSION,
                "command": "cauchy",
                "length_bound": r.length_bound,
                "sample_count": r.sample_count,
                "ks_distance": r.ks_distance,
                "bins": bins,
            });
            write_json(&v, out)
        }
    }
}
