use std::io::{self, Write};

use serde::Serialize;
use serde_json::Value;

/// One output cell. Unconverged numbers are written as empty cells.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(Option<f64>),
    Text(String),
    Flag(bool),
}

impl Cell {
    pub fn num(v: f64) -> Cell {
        Cell::Num(v.is_finite().then_some(v))
    }

    pub fn maybe(v: Option<f64>) -> Cell {
        Cell::Num(v.filter(|x| x.is_finite()))
    }

    pub fn text(s: impl Into<String>) -> Cell {
        Cell::Text(s.into())
    }

    fn csv(&self) -> String {
        match self {
            Cell::Num(Some(v)) => format!("{v:.11e}"),
            Cell::Num(None) => String::new(),
            Cell::Text(s) => s.clone(),
            Cell::Flag(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            // Parse the CSV text back so JSON carries the same 12 digits.
            Cell::Num(Some(_)) => self.csv().parse::<f64>().map(Value::from).unwrap_or(Value::Null),
            Cell::Num(None) => Value::Null,
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Flag(b) => Value::from(*b),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub command: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    /// Number of rows containing an unconverged cell.
    pub unconverged: usize,
}

#[derive(Serialize)]
struct JsonTable<'a> {
    command: &'a str,
    columns: &'a [&'static str],
    rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(command: &'static str, columns: Vec<&'static str>) -> Table {
        Table {
            command,
            columns,
            rows: Vec::new(),
            unconverged: 0,
        }
    }

    pub fn push(&mut self, row: Vec<Cell>, converged: bool) {
        debug_assert_eq!(row.len(), self.columns.len());
        if !converged {
            self.unconverged += 1;
        }
        self.rows.push(row);
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::csv).collect();
            writeln!(out, "{}", line.join(","))?;
        }
        out.flush()
    }

    pub fn write_json<W: Write>(&self, mut out: W) -> io::Result<()> {
        let doc = JsonTable {
            command: self.command,
            columns: &self.columns,
            rows: self.rows.iter().map(|r| r.iter().map(Cell::json).collect()).collect(),
        };
        serde_json::to_writer_pretty(&mut out, &doc)?;
        writeln!(out)?;
        out.flush()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_uses_twelve_significant_digits_and_blanks() {
        let mut t = Table::new("test", vec!["x", "y", "model", "converged"]);
        t.push(vec![Cell::num(1.0 / 3.0), Cell::num(f64::NAN), Cell::text("local"), Cell::Flag(false)], false);
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "x,y,model,converged\n3.33333333333e-1,,local,false\n");
        assert_eq!(t.unconverged, 1);
    }

    #[test]
    fn json_mirrors_csv() {
        let mut t = Table::new("test", vec!["x", "y"]);
        t.push(vec![Cell::num(2.0), Cell::maybe(None)], true);
        let mut buf = Vec::new();
        t.write_json(&mut buf).unwrap();
        let v: Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["columns"][0], "x");
        assert_eq!(v["rows"][0][0], 2.0);
        assert!(v["rows"][0][1].is_null());
    }
}
