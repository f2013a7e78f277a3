//! Rendering of command results as plain text, CSV or JSON.

use clap::ValueEnum;
use fraclap::format::format_number;
use fraclap::operator::SquareMatrix;
use serde_json::{json, Map, Value as Json};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
    Bool(bool),
}

impl Cell {
    fn text(&self, digits: usize) -> String {
        match self {
            Cell::Num(x) => format_number(*x, digits),
            Cell::Int(k) => k.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> Json {
        match self {
            // NaN and infinities have no JSON form
            Cell::Num(x) => serde_json::Number::from_f64(*x).map_or(Json::Null, Json::Number),
            Cell::Int(k) => json!(k),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<u64> for Cell {
    fn from(k: u64) -> Self {
        Cell::Int(k)
    }
}

impl From<usize> for Cell {
    fn from(k: usize) -> Self {
        Cell::Int(k as u64)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

/// Rows of named columns. A single-row table with a primary column prints
/// just that value in plain format.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub primary: Option<usize>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Table {
            columns,
            rows: Vec::new(),
            primary: None,
        }
    }

    pub fn with_primary(mut self, column: &'static str) -> Self {
        self.primary = self.columns.iter().position(|c| *c == column);
        self
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn plain(&self, digits: usize) -> String {
        if let ([row], Some(p)) = (&self.rows[..], self.primary) {
            return format!("{}\n", row[p].text(digits));
        }
        if let [row] = &self.rows[..] {
            return self
                .columns
                .iter()
                .zip(row)
                .map(|(c, v)| format!("{c} {}\n", v.text(digits)))
                .collect();
        }
        let mut out = self.columns.join("\t");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| c.text(digits)).collect();
            out.push_str(&cells.join("\t"));
            out.push('\n');
        }
        out
    }

    fn csv(&self, digits: usize) -> Result<String, csv::Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|c| c.text(digits)))?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    fn json_rows(&self) -> Json {
        let rows: Vec<Json> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Json> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| (c.to_string(), v.json()))
                    .collect();
                Json::Object(obj)
            })
            .collect();
        Json::Array(rows)
    }
}

/// What a subcommand produced.
pub enum Output {
    Table(Table),
    /// a structured report: its own JSON form, flattened table for plain/CSV
    Report {
        json: Json,
        table: Table,
    },
    Matrix {
        alpha: f64,
        matrix: SquareMatrix,
    },
}

/// Renders `output`; JSON is one object per run, tagged with the command.
pub fn render(command: &str, output: &Output, format: Format, digits: usize) -> Result<String, csv::Error> {
    match (output, format) {
        (Output::Table(t) | Output::Report { table: t, .. }, Format::Plain) => Ok(t.plain(digits)),
        (Output::Table(t) | Output::Report { table: t, .. }, Format::Csv) => t.csv(digits),
        (Output::Table(t), Format::Json) => Ok(json_text(json!({ "command": command, "rows": t.json_rows() }))),
        (Output::Report { json, .. }, Format::Json) => {
            let mut obj = Map::new();
            obj.insert("command".into(), json!(command));
            match json {
                Json::Object(fields) => obj.extend(fields.clone()),
                other => {
                    obj.insert("report".into(), other.clone());
                }
            }
            Ok(json_text(Json::Object(obj)))
        }
        (Output::Matrix { matrix, .. }, Format::Plain) => Ok(matrix_rows(matrix, digits, " ")),
        (Output::Matrix { matrix, .. }, Format::Csv) => {
            // no header, so that the file reads back as a bare matrix
            let mut w = csv::Writer::from_writer(Vec::new());
            for i in 0..matrix.size() {
                w.write_record(matrix.row(i).iter().map(|x| format_number(*x, digits)))?;
            }
            let bytes = w.into_inner().map_err(|e| e.into_error())?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
        (Output::Matrix { alpha, matrix }, Format::Json) => {
            let rows: Vec<Json> = (0..matrix.size())
                .map(|i| Json::Array(matrix.row(i).iter().map(|x| Cell::Num(*x).json()).collect()))
                .collect();
            Ok(json_text(
                json!({ "command": command, "alpha": alpha, "N": matrix.size(), "data": rows }),
            ))
        }
    }
}

fn json_text(v: Json) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("json values serialize");
    s.push('\n');
    s
}

fn matrix_rows(m: &SquareMatrix, digits: usize, sep: &str) -> String {
    let mut out = String::new();
    for i in 0..m.size() {
        let cells: Vec<String> = m.row(i).iter().map(|x| format_number(*x, digits)).collect();
        out.push_str(&cells.join(sep));
        out.push('\n');
    }
    out
}
