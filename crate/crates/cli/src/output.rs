use std::io::Write;

use pcalib::calibration::{posterior_from_bf, PriorOdds};
use pcalib::Error;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::cli::Format;

pub const SIGNIFICANT_DIGITS: usize = 9;

/// Posterior summary shared by every Bayes factor command.
#[derive(Debug, Clone, Serialize)]
pub struct EvidenceReport {
    pub formula: &'static str,
    pub inputs: Value,
    pub bf: f64,
    pub pi0: f64,
    pub posterior: f64,
    pub warnings: Vec<String>,
}

impl EvidenceReport {
    pub fn new(formula: &'static str, inputs: Value, bf: f64, pi0: f64, warnings: Vec<String>) -> Result<Self, Error> {
        let posterior = posterior_from_bf(bf, PriorOdds::new(pi0)?)?.get();
        Ok(EvidenceReport { formula, inputs, bf, pi0, posterior, warnings })
    }
}

/// What a command produced: a JSON document, optionally a flat table for
/// CSV output, and whether any verdict it carries passed.
pub struct Outcome {
    pub json: Value,
    pub rows: Option<Vec<Map<String, Value>>>,
    pub passed: bool,
}

impl Outcome {
    pub fn report<T: Serialize>(value: &T) -> Self {
        Outcome { json: to_value(value), rows: None, passed: true }
    }

    pub fn table<T: Serialize>(header: Value, rows: &[T]) -> Self {
        let rows: Vec<Map<String, Value>> = rows
            .iter()
            .map(|r| match to_value(r) {
                Value::Object(m) => m,
                other => Map::from_iter([("value".to_owned(), other)]),
            })
            .collect();
        let mut json = header;
        if let Value::Object(m) = &mut json {
            m.insert("rows".into(), Value::Array(rows.iter().cloned().map(Value::Object).collect()));
        }
        Outcome { json, rows: Some(rows), passed: true }
    }
}

pub fn to_value<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("report types serialize to JSON")
}

pub fn round_significant(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().unwrap_or(x)
}

fn round_value(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(r) = n.as_f64().map(round_significant).and_then(serde_json::Number::from_f64) {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_value),
        Value::Object(map) => map.values_mut().for_each(round_value),
        _ => {}
    }
}

/// Flattens nested objects with dotted keys; arrays are joined with `;`.
fn flatten(prefix: &str, v: &Value, out: &mut Map<String, Value>) {
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, child, out);
            }
        }
        Value::Array(items) => {
            let joined: Vec<String> = items.iter().map(cell).collect();
            out.insert(prefix.to_owned(), Value::String(joined.join(";")));
        }
        other => {
            out.insert(prefix.to_owned(), other.clone());
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn emit(outcome: &Outcome, format: Format, out: &mut impl Write) -> std::io::Result<()> {
    match format {
        Format::Json => {
            let mut json = outcome.json.clone();
            round_value(&mut json);
            serde_json::to_writer_pretty(&mut *out, &json)?;
            writeln!(out)
        }
        Format::Csv => {
            let rows = match &outcome.rows {
                Some(rows) => rows.clone(),
                None => {
                    let mut flat = Map::new();
                    flatten("", &outcome.json, &mut flat);
                    vec![flat]
                }
            };
            let mut wtr = csv::Writer::from_writer(out);
            if let Some(first) = rows.first() {
                wtr.write_record(first.keys())?;
            }
            for row in rows {
                let mut row = Value::Object(row);
                round_value(&mut row);
                let mut flat = Map::new();
                flatten("", &row, &mut flat);
                wtr.write_record(flat.values().map(cell))?;
            }
            wtr.flush()
        }
    }
}
