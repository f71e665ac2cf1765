//! Column tables with CSV and JSON emission.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

/// Named columns of equal length plus a units comment.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub units: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub notes: Vec<String>,
}

impl Table {
    pub fn new(units: impl Into<String>, columns: &[&str]) -> Self {
        Self {
            units: units.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    /// `# units` and note comment lines, a header row, then values with 17
    /// significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        writeln!(out, "# {}", self.units).unwrap();
        for note in &self.notes {
            writeln!(out, "# {note}").unwrap();
        }
        writeln!(out, "{}", self.columns.join(",")).unwrap();
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format_value(*v)).collect();
            writeln!(out, "{}", cells.join(",")).unwrap();
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(r)
                    .map(|(c, v)| (c.clone(), json!(v)))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        json!({ "units": self.units, "notes": self.notes, "rows": rows })
    }

    /// Inverse of [`Table::to_csv`].
    pub fn parse_csv(text: &str) -> Result<Self, String> {
        let mut units = String::new();
        let mut notes = Vec::new();
        let mut lines = text.lines().enumerate();
        let columns = loop {
            let Some((_, line)) = lines.next() else {
                return Err("missing header row".into());
            };
            if let Some(c) = line.strip_prefix("# ") {
                if units.is_empty() {
                    units = c.to_string();
                } else {
                    notes.push(c.to_string());
                }
                continue;
            }
            break line.split(',').map(str::to_string).collect::<Vec<_>>();
        };
        let mut rows = Vec::new();
        for (n, line) in lines {
            let row = line
                .split(',')
                .map(|v| v.parse::<f64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| format!("line {}: {e}", n + 1))?;
            if row.len() != columns.len() {
                return Err(format!("line {}: expected {} values", n + 1, columns.len()));
            }
            rows.push(row);
        }
        Ok(Self {
            units,
            columns,
            rows,
            notes,
        })
    }
}

pub fn format_value(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        format!("{v}")
    }
}
