//! Output records and their JSON/CSV encodings.
//!
//! JSON floats are written in shortest round-trip form, so parsing the
//! output recovers every binary64 value exactly. Keys are sorted. CSV
//! column orders:
//!
//! | subcommand     | columns                            |
//! |----------------|------------------------------------|
//! | classify       | `lambda,bernoulli,kind,count,windings` |
//! | sweep          | `lambda,kind,count,windings`       |
//! | ma-count       | `alpha,lambda,kind,count,windings` |
//! | period         | `lambda,bernoulli,s,pressure,period` |
//! | period-table   | `s,pressure,period`                |
//! | find           | `lambda,bernoulli,n,s,pressure,period` |
//! | reconstruct, dual | `theta,psi,psi_prime`           |
//! | field          | `r,theta,u_r,u_theta,p`            |
//!
//! `windings` is `;`-separated and `count` is empty for a continuum. In CSV
//! mode the metadata goes to the error stream as a `# meta` line.

use std::io::Write;

use serde::Serialize;
use serde_json::{json, Map, Value};

use super::config::{Format, Tolerances};
use crate::classify::Classification;
use crate::error::{Error, Result};

pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(v) => v.to_string(),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }
}

pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

/// A command result in both encodings, with its exit status.
pub struct Record {
    pub json: Map<String, Value>,
    pub table: Table,
    pub status: i32,
    /// Diagnostics for the error stream.
    pub notes: Vec<String>,
}

impl Record {
    pub fn new(json: Value, table: Table) -> Self {
        let json = match json {
            Value::Object(m) => m,
            other => {
                let mut m = Map::new();
                m.insert("value".into(), other);
                m
            }
        };
        Record { json, table, status: 0, notes: Vec::new() }
    }
}

pub fn to_value<T: Serialize>(v: &T) -> Result<Value> {
    serde_json::to_value(v).map_err(|source| Error::Json { context: "encoding output".into(), source })
}

pub fn classification_cells(c: &Classification) -> [Cell; 3] {
    let (count, windings) = match c {
        Classification::Continuum => (String::new(), String::new()),
        Classification::None => ("0".into(), String::new()),
        Classification::Finite { windings } => {
            (windings.len().to_string(), windings.iter().map(u32::to_string).collect::<Vec<_>>().join(";"))
        }
    };
    [Cell::Text(c.kind().into()), Cell::Text(count), Cell::Text(windings)]
}

/// Exit status of a classification result: `2` when no solution exists.
pub fn classification_status(c: &Classification) -> i32 {
    if *c == Classification::None {
        2
    } else {
        0
    }
}

pub fn meta(tol: &Tolerances) -> Value {
    json!({
        "tolerances": {
            "integration": tol.integration,
            "integration_effective": tol.ode(),
            "quadrature": tol.quadrature,
            "closure": tol.closure,
            "root": tol.root,
        },
        "version": env!("CARGO_PKG_VERSION"),
    })
}

/// Encodes `record` to `data` and writes metadata and notes to `diag`.
pub fn emit(record: Record, format: Format, tol: &Tolerances, data: &mut dyn Write, diag: &mut dyn Write) -> Result<()> {
    let meta = meta(tol);
    let io = |source| Error::Io { path: "<output>".into(), source };
    for note in &record.notes {
        writeln!(diag, "{note}").map_err(io)?;
    }
    match format {
        Format::Json => {
            let mut obj = record.json;
            obj.insert("meta".into(), meta);
            serde_json::to_writer(&mut *data, &Value::Object(obj))
                .map_err(|source| Error::Json { context: "writing output".into(), source })?;
            writeln!(data).map_err(io)?;
        }
        Format::Csv => {
            writeln!(diag, "# meta {meta}").map_err(io)?;
            let mut w = csv::Writer::from_writer(&mut *data);
            w.write_record(&record.table.header)?;
            for row in &record.table.rows {
                w.write_record(row.iter().map(Cell::render))?;
            }
            w.flush().map_err(io)?;
        }
    }
    Ok(())
}
