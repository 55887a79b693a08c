use serde::Serialize;
use serde_json::{Map, Number, Value};

use crate::args::Format;
use crate::CliError;

pub const SIGNIFICANT_DIGITS: usize = 12;

/// Rounds to [`SIGNIFICANT_DIGITS`] and returns the shortest float that
/// prints that rounded value.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().unwrap_or(x)
}

fn round_value(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap_or(f64::NAN);
            Number::from_f64(round_sig(x)).map_or(Value::Null, Value::Number)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(round_value).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, round_value(v))).collect()),
        other => other,
    }
}

pub fn to_value<T: Serialize>(item: &T) -> Result<Value, CliError> {
    Ok(round_value(serde_json::to_value(item)?))
}

/// A rendered result: either one JSON document or a list of flat records.
#[derive(Debug, Clone)]
pub enum Artifact {
    Document(Value),
    Records(Vec<Value>),
}

impl Artifact {
    pub fn records<T: Serialize>(rows: &[T]) -> Result<Self, CliError> {
        Ok(Artifact::Records(rows.iter().map(to_value).collect::<Result<_, _>>()?))
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match (self, format) {
            (Artifact::Records(rows), Format::Csv) => records_csv(rows),
            (Artifact::Document(v), Format::Csv) => records_csv(std::slice::from_ref(v)),
            (Artifact::Records(rows), Format::Json) => json(&Value::Array(rows.clone())),
            (Artifact::Document(v), Format::Json) => json(v),
        }
    }
}

fn json(v: &Value) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => n.to_string(),
        nested => nested.to_string(),
    }
}

fn records_csv(rows: &[Value]) -> Result<String, CliError> {
    let empty = Map::new();
    let header: Vec<&String> = match rows.first() {
        Some(Value::Object(m)) => m.keys().collect(),
        _ => empty.keys().collect(),
    };
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header)?;
    for row in rows {
        let obj = row.as_object().unwrap_or(&empty);
        w.write_record(header.iter().map(|k| obj.get(*k).map(cell).unwrap_or_default()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
