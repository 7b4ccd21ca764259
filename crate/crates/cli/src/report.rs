use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::args::Format;
use crate::error::CliError;

/// One output document: parsed inputs, result rows, diagnostics.
#[derive(Debug, Default)]
pub struct Report {
    pub inputs: Value,
    pub results: Vec<Value>,
    pub diagnostics: Map<String, Value>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(inputs: impl Serialize) -> Result<Self, CliError> {
        Ok(Self {
            inputs: serde_json::to_value(inputs)?,
            ..Self::default()
        })
    }

    pub fn push(&mut self, row: Value) {
        self.results.push(row);
    }

    pub fn diag(&mut self, key: &str, value: impl Serialize) -> Result<(), CliError> {
        self.diagnostics
            .insert(key.into(), serde_json::to_value(value)?);
        Ok(())
    }

    pub fn warn(&mut self, msg: impl Into<String>) {
        self.warnings.push(msg.into());
    }

    fn document(&self) -> Value {
        let mut diagnostics = Map::new();
        diagnostics.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
        diagnostics.extend(self.diagnostics.clone());
        diagnostics.insert("warnings".into(), json!(self.warnings));
        json!({
            "inputs": self.inputs,
            "results": self.results,
            "diagnostics": diagnostics,
        })
    }

    pub fn write(&self, format: Format, out: Option<&Path>) -> Result<(), CliError> {
        let mut sink: Box<dyn Write> = match out {
            Some(p) => Box::new(File::create(p)?),
            None => Box::new(io::stdout().lock()),
        };
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut sink, &self.document())?;
                writeln!(sink)?;
            }
            Format::Csv => self.write_csv(&mut sink)?,
        }
        sink.flush()?;
        Ok(())
    }

    fn write_csv(&self, sink: &mut dyn Write) -> Result<(), CliError> {
        let mut w = csv::Writer::from_writer(sink);
        let header: Vec<String> = match self.results.first() {
            Some(Value::Object(m)) => m.keys().cloned().collect(),
            _ => return Ok(()),
        };
        w.write_record(&header)?;
        for row in &self.results {
            let record: Vec<String> = header
                .iter()
                .map(|k| cell(row.get(k).unwrap_or(&Value::Null)))
                .collect();
            w.write_record(&record)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Scalars as-is, arrays joined with `;` (nested with `:`).
fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items
            .iter()
            .map(|x| match x {
                Value::Array(inner) => inner.iter().map(cell).collect::<Vec<_>>().join(":"),
                other => cell(other),
            })
            .collect::<Vec<_>>()
            .join(";"),
        other => other.to_string(),
    }
}
