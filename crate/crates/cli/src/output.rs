//! Record tables and their JSON and CSV encodings. Floats are written with
//! 17 significant digits, which round-trips every f64.

use hyperindex::C64;

use crate::config::Format;
use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(f64),
    Int(i64),
    Str(String),
    Bool(bool),
    Null,
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Num(v)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Str(v.to_string())
    }
}

impl From<String> for Value {
    fn from(v: String) -> Self {
        Value::Str(v)
    }
}

impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Value::Int(v as i64)
    }
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Bool(v)
    }
}

impl From<Option<f64>> for Value {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Value::Null, Value::Num)
    }
}

pub fn format_f64(v: f64) -> String {
    if v.is_nan() {
        "NaN".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{v:.16e}")
    }
}

impl Value {
    fn csv_cell(&self) -> String {
        match self {
            Value::Num(v) => format_f64(*v),
            Value::Int(v) => v.to_string(),
            Value::Str(s) => s.clone(),
            Value::Bool(b) => b.to_string(),
            Value::Null => String::new(),
        }
    }

    fn json(&self) -> String {
        match self {
            Value::Num(v) if v.is_finite() => format_f64(*v),
            Value::Num(_) | Value::Null => "null".into(),
            Value::Int(v) => v.to_string(),
            Value::Str(s) => serde_json::Value::String(s.clone()).to_string(),
            Value::Bool(b) => b.to_string(),
        }
    }

    /// Inverse of the CSV encoding, for re-reading tables.
    fn from_cell(cell: &str) -> Self {
        if cell.is_empty() {
            return Value::Null;
        }
        if let Ok(i) = cell.parse::<i64>() {
            return Value::Int(i);
        }
        match cell {
            "true" => return Value::Bool(true),
            "false" => return Value::Bool(false),
            _ => {}
        }
        // Rust also accepts "infinity" and "nan"; only the spellings written above round-trip
        match cell.parse::<f64>() {
            Ok(v) if v.is_finite() || matches!(cell, "NaN" | "inf" | "-inf") => Value::Num(v),
            _ => Value::Str(cell.to_string()),
        }
    }
}

/// Rows of values under a fixed header.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self { columns: columns.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len(), "row width must match the header");
        self.rows.push(row);
    }

    pub fn encode(&self, format: Format) -> Result<Vec<u8>, CliError> {
        match format {
            Format::Json => Ok(self.to_json().into_bytes()),
            Format::Csv => self.to_csv(),
        }
    }

    /// An array of flat objects, one per line.
    pub fn to_json(&self) -> String {
        let objects: Vec<String> = self
            .rows
            .iter()
            .map(|row| {
                let fields: Vec<String> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(k, v)| format!("{}:{}", serde_json::Value::String(k.clone()), v.json()))
                    .collect();
                format!("{{{}}}", fields.join(","))
            })
            .collect();
        if objects.is_empty() {
            "[]\n".into()
        } else {
            format!("[\n{}\n]\n", objects.join(",\n"))
        }
    }

    pub fn to_csv(&self) -> Result<Vec<u8>, CliError> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        let io = |e: csv::Error| CliError::Io(format!("CSV encoding failed: {e}"));
        w.write_record(&self.columns).map_err(io)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Value::csv_cell)).map_err(io)?;
        }
        w.into_inner().map_err(|e| CliError::Io(format!("CSV encoding failed: {e}")))
    }

    pub fn from_csv(bytes: &[u8]) -> Result<Self, CliError> {
        let bad = |e: csv::Error| CliError::Config(format!("input table is not valid CSV: {e}"));
        let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(bytes);
        let columns: Vec<String> = r.headers().map_err(bad)?.iter().map(str::to_string).collect();
        if columns.is_empty() || columns.iter().all(String::is_empty) {
            return Err(CliError::Config("input table has no header".into()));
        }
        let mut table = Table { columns, rows: Vec::new() };
        for rec in r.records() {
            table.rows.push(rec.map_err(bad)?.iter().map(Value::from_cell).collect());
        }
        Ok(table)
    }
}

/// `name_re` and `name_im` columns.
pub fn complex_columns(name: &str) -> [String; 2] {
    [format!("{name}_re"), format!("{name}_im")]
}

pub fn complex_values(z: C64) -> [Value; 2] {
    [Value::Num(z.re), Value::Num(z.im)]
}
