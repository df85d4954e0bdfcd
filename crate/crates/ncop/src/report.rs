//! Command results: scalar summary fields plus named tables, rendered as
//! JSON or CSV.

use ncop_core::C64;
use serde_json::{json, Map, Value};

use crate::complex;

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Real(f64),
    Complex(C64),
    Text(String),
    /// Blank in CSV, `null` in JSON.
    Empty,
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Real(v) => complex::real(*v),
            Cell::Complex(z) => complex::format(*z),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Real(v) => real(*v),
            Cell::Complex(z) => json!(complex::format(*z)),
            Cell::Text(s) => json!(s),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

impl From<C64> for Cell {
    fn from(v: C64) -> Self {
        Cell::Complex(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

/// JSON has no infinities; they are written as strings.
pub fn real(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else {
        json!(v.to_string())
    }
}

/// A named table. Without a header it is a bare matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub name: String,
    pub header: Option<Vec<String>>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &str, header: &[&str]) -> Self {
        Table {
            name: name.to_string(),
            header: Some(header.iter().map(|s| s.to_string()).collect()),
            rows: Vec::new(),
        }
    }

    pub fn matrix(name: &str, m: &ncop_core::linalg::Mat) -> Self {
        let rows = (0..m.rows())
            .map(|r| (0..m.cols()).map(|c| Cell::Complex(m[(r, c)])).collect())
            .collect();
        Table {
            name: name.to_string(),
            header: None,
            rows,
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        self.rows.push(row);
    }

    fn json(&self) -> Value {
        match &self.header {
            Some(h) => Value::Array(
                self.rows
                    .iter()
                    .map(|r| {
                        let mut obj = Map::new();
                        for (k, v) in h.iter().zip(r.iter()) {
                            obj.insert(k.clone(), v.json());
                        }
                        Value::Object(obj)
                    })
                    .collect(),
            ),
            None => Value::Array(
                self.rows
                    .iter()
                    .map(|r| Value::Array(r.iter().map(Cell::json).collect()))
                    .collect(),
            ),
        }
    }

    /// CSV text; cells containing `+`, `,`, `"` or line breaks are quoted.
    pub fn csv(&self) -> String {
        let mut out = String::new();
        if let Some(h) = &self.header {
            push_line(&mut out, h.iter().map(String::as_str));
        }
        for r in self.rows.iter() {
            let cells: Vec<String> = r.iter().map(Cell::text).collect();
            push_line(&mut out, cells.iter().map(String::as_str));
        }
        out
    }
}

fn push_line<'a>(out: &mut String, cells: impl Iterator<Item = &'a str>) {
    let mut first = true;
    for c in cells {
        if !first {
            out.push(',');
        }
        first = false;
        if c.contains(['+', ',', '"', '\n', '\r']) {
            out.push('"');
            out.push_str(&c.replace('"', "\"\""));
            out.push('"');
        } else {
            out.push_str(c);
        }
    }
    out.push('\n');
}

/// Outcome of one command.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub tolerance: f64,
    pub max_residual: f64,
    pub summary: Map<String, Value>,
    pub tables: Vec<Table>,
    /// Violated invariants that are not measured by a residual.
    pub failures: Vec<String>,
}

impl Report {
    pub fn new(command: &str, tolerance: f64) -> Self {
        Report {
            command: command.to_string(),
            tolerance,
            max_residual: 0.0,
            summary: Map::new(),
            tables: Vec::new(),
            failures: Vec::new(),
        }
    }

    /// Folds an observed residual into the maximum (NaN counts as failure).
    pub fn residual(&mut self, r: f64) {
        if r.is_nan() || r > self.max_residual {
            self.max_residual = if r.is_nan() { f64::INFINITY } else { r };
        }
    }

    pub fn set(&mut self, key: &str, v: impl Into<Value>) {
        self.summary.insert(key.to_string(), v.into());
    }

    pub fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.max_residual <= self.tolerance && self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("command".into(), json!(self.command));
        obj.insert("tolerance".into(), real(self.tolerance));
        obj.insert("max_residual".into(), real(self.max_residual));
        obj.insert("passed".into(), json!(self.passed()));
        obj.insert("failures".into(), json!(self.failures));
        for (k, v) in self.summary.iter() {
            obj.insert(k.clone(), v.clone());
        }
        let mut tables = Map::new();
        for t in self.tables.iter() {
            tables.insert(t.name.clone(), t.json());
        }
        obj.insert("tables".into(), Value::Object(tables));
        Value::Object(obj)
    }

    pub fn table(&self, name: Option<&str>) -> Option<&Table> {
        match name {
            Some(n) => self.tables.iter().find(|t| t.name == n),
            None => self.tables.first(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quoting() {
        let mut t = Table::new("t", &["a", "b"]);
        t.push(vec![Cell::Complex(C64::new(1.0, 2.0)), Cell::Real(-0.5)]);
        t.push(vec![
            Cell::Complex(C64::new(1.0, -2.0)),
            Cell::Text("x,y".into()),
        ]);
        assert_eq!(t.csv(), "a,b\n\"1+2i\",-0.5\n1-2i,\"x,y\"\n");
    }

    #[test]
    fn json_embeds_tolerance() {
        let mut r = Report::new("demo", 1e-9);
        r.residual(1e-12);
        let v = r.to_json();
        assert_eq!(v["tolerance"], json!(1e-9));
        assert_eq!(v["max_residual"], json!(1e-12));
        assert_eq!(v["passed"], json!(true));
        r.residual(f64::NAN);
        assert!(!r.passed());
    }
}
