use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

pub const SCHEMA_VERSION: u32 = 1;

/// Everything a run emits. Counts are decimal strings and rational
/// coefficients `"num/den"` strings.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct Document {
    pub schema_version: u32,
    pub command: String,
    pub inputs: Value,
    pub results: Vec<Value>,
    pub diagnostics: Map<String, Value>,
    /// CSV column order; JSON objects are emitted with sorted keys.
    #[serde(skip)]
    pub columns: Vec<String>,
}

impl Document {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    /// One row per result; nested values are flattened to text.
    pub fn to_csv(&self) -> csv::Result<String> {
        let columns: Vec<String> = if self.columns.is_empty() {
            match self.results.first() {
                Some(Value::Object(m)) => m.keys().cloned().collect(),
                _ => Vec::new(),
            }
        } else {
            self.columns.clone()
        };
        let mut w = csv::Writer::from_writer(Vec::new());
        if !columns.is_empty() {
            w.write_record(&columns)?;
        }
        for row in &self.results {
            w.write_record(columns.iter().map(|c| cell(row.get(c).unwrap_or(&Value::Null))))?;
        }
        Ok(String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("csv is utf-8"))
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(xs) => xs.iter().map(cell).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}
