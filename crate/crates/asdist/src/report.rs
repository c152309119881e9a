//! Tabular results and their JSON, TSV and plain-text renderings.

use std::fmt::Write as _;
use std::str::FromStr;

use asdist_core::FieldModel;
use clap::ValueEnum;
use serde_json::{json, Map, Number, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Text,
}

/// A table cell; integers and decimals become JSON numbers, text stays a string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cell {
    Int(String),
    Decimal(String),
    Text(String),
}

impl Cell {
    pub fn int<T: ToString>(v: T) -> Self {
        Cell::Int(v.to_string())
    }

    pub fn text<T: ToString>(v: T) -> Self {
        Cell::Text(v.to_string())
    }

    fn as_str(&self) -> &str {
        match self {
            Cell::Int(s) | Cell::Decimal(s) | Cell::Text(s) => s,
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Int(s) | Cell::Decimal(s) => {
                Number::from_str(s).map(Value::Number).unwrap_or_else(|_| Value::String(s.clone()))
            }
            Cell::Text(s) => Value::String(s.clone()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: &'static str,
    pub model: Option<FieldModel>,
    pub group: Option<(u64, u32)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    /// Scalar results shown above the table in text mode.
    pub summary: Vec<(&'static str, Cell)>,
    pub order: Option<u64>,
    pub precision_bits: Option<u32>,
}

impl Report {
    pub fn new(command: &'static str, columns: Vec<&'static str>) -> Self {
        Self {
            command,
            model: None,
            group: None,
            columns,
            rows: Vec::new(),
            summary: Vec::new(),
            order: None,
            precision_bits: None,
        }
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn note(&mut self, key: &'static str, value: Cell) {
        self.summary.push((key, value));
    }

    pub fn summary_value(&self, key: &str) -> Option<&str> {
        self.summary.iter().find(|(k, _)| *k == key).map(|(_, v)| v.as_str())
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Tsv => self.to_tsv(),
            Format::Text => self.to_text(),
        }
    }

    fn to_json(&self) -> String {
        let model = match &self.model {
            Some(m) => json!({
                "p": m.p(),
                "q": m.q(),
                "genus": m.genus(),
                "l_poly": m.l_poly().iter().map(|c| Cell::int(c).to_json()).collect::<Vec<_>>(),
                "clp_order": Cell::int(m.clp_order()).to_json(),
            }),
            None => Value::Null,
        };
        let group = match self.group {
            Some((p, r)) => json!({ "p": p, "r": r }),
            None => Value::Null,
        };
        let data: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (col, cell) in self.columns.iter().zip(row) {
                    obj.insert((*col).to_string(), cell.to_json());
                }
                Value::Object(obj)
            })
            .collect();
        let mut summary = Map::new();
        for (k, v) in &self.summary {
            summary.insert((*k).to_string(), v.to_json());
        }
        let doc = json!({
            "command": self.command,
            "model": model,
            "group": group,
            "data": data,
            "summary": summary,
            "meta": { "order": self.order, "precision_bits": self.precision_bits },
        });
        let mut out = serde_json::to_string_pretty(&doc).expect("serializable");
        out.push('\n');
        out
    }

    fn to_tsv(&self) -> String {
        let mut out = self.columns.join("\t");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<&str> = row.iter().map(Cell::as_str).collect();
            out.push_str(&cells.join("\t"));
            out.push('\n');
        }
        out
    }

    fn to_text(&self) -> String {
        let mut out = String::new();
        let key_width = self.summary.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in &self.summary {
            let _ = writeln!(out, "{:<key_width$}  {}", k.replace('_', " "), v.as_str());
        }
        if self.rows.is_empty() {
            return out;
        }
        if !self.summary.is_empty() {
            out.push('\n');
        }
        let widths: Vec<usize> = (0..self.columns.len())
            .map(|i| self.rows.iter().map(|r| r[i].as_str().len()).chain([self.columns[i].len()]).max().unwrap())
            .collect();
        let line = |cells: Vec<&str>| -> String {
            let parts: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
            parts.join("  ").trim_end().to_string()
        };
        let _ = writeln!(out, "{}", line(self.columns.clone()));
        for row in &self.rows {
            let _ = writeln!(out, "{}", line(row.iter().map(Cell::as_str).collect()));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("series", vec!["n", "value"]);
        r.model = Some(FieldModel::rational(2, 2).unwrap());
        r.group = Some((2, 1));
        r.order = Some(2);
        r.push_row(vec![Cell::int(0), Cell::int(1)]);
        r.push_row(vec![Cell::int(1), Cell::int("123456789012345678901234567890")]);
        r.note("abscissa", Cell::text("3/2"));
        r
    }

    #[test]
    fn json_schema_and_big_numbers() {
        let text = sample().render(Format::Json);
        let v: Value = serde_json::from_str(&text).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["command", "model", "group", "data", "summary", "meta"]);
        assert_eq!(v["group"]["r"], 1);
        assert_eq!(v["meta"]["order"], 2);
        assert!(v["meta"]["precision_bits"].is_null());
        assert!(text.contains("123456789012345678901234567890"));
        assert!(!text.contains("\"123456789012345678901234567890\""));
    }

    #[test]
    fn tsv_is_header_then_rows() {
        assert_eq!(sample().render(Format::Tsv), "n\tvalue\n0\t1\n1\t123456789012345678901234567890\n");
    }
}
