use std::fs::File;
use std::io::Read;
use std::path::Path;

use crate::{Error, Result};

/// Numeric table loaded from CSV: a header row of column names followed by
/// comma-separated decimal numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    names: Vec<String>,
    columns: Vec<Vec<f64>>,
}

impl Dataset {
    pub fn new(names: Vec<String>, columns: Vec<Vec<f64>>) -> Result<Self> {
        if names.len() != columns.len() {
            return Err(Error::Configuration("one name per column is required".into()));
        }
        if let Some(first) = columns.first() {
            if columns.iter().any(|c| c.len() != first.len()) {
                return Err(Error::Configuration("columns must have equal length".into()));
            }
        }
        Ok(Dataset { names, columns })
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_reader(file)
    }

    /// Rows with a missing, empty or non-numeric field are rejected; the
    /// error carries the 1-based line number (the header is line 1).
    pub fn from_reader<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().has_headers(true).flexible(true).trim(csv::Trim::All).from_reader(reader);
        let names: Vec<String> = rdr
            .headers()
            .map_err(|e| Error::Data { row: 1, message: e.to_string() })?
            .iter()
            .map(str::to_owned)
            .collect();
        if names.is_empty() || names.iter().any(String::is_empty) {
            return Err(Error::Data { row: 1, message: "header must name every column".into() });
        }
        let mut columns = vec![Vec::new(); names.len()];
        for record in rdr.records() {
            let record = record.map_err(|e| Error::Data {
                row: e.position().map_or(0, |p| p.line() as usize),
                message: e.to_string(),
            })?;
            let row = record.position().map_or(0, |p| p.line() as usize);
            if record.len() != names.len() {
                return Err(Error::Data {
                    row,
                    message: format!("expected {} fields, found {}", names.len(), record.len()),
                });
            }
            for (i, field) in record.iter().enumerate() {
                if field.is_empty() {
                    return Err(Error::Data { row, message: format!("missing value in column '{}'", names[i]) });
                }
                let value: f64 = field.parse().map_err(|_| Error::Data {
                    row,
                    message: format!("non-numeric value '{field}' in column '{}'", names[i]),
                })?;
                columns[i].push(value);
            }
        }
        Ok(Dataset { names, columns })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn rows(&self) -> usize {
        self.columns.first().map_or(0, Vec::len)
    }

    pub fn column(&self, name: &str) -> Result<&[f64]> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| self.columns[i].as_slice())
            .ok_or_else(|| Error::Configuration(format!("no column named '{name}'")))
    }
}
