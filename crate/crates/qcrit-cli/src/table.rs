use std::io::Write;

use serde_json::{Map, Value};

use crate::error::{CliError, Result};

/// Output format of the data files.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize, clap::ValueEnum,
)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Csv,
    #[serde(alias = "json-lines")]
    #[value(alias = "json-lines")]
    Jsonl,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Jsonl => "jsonl",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub name: &'static str,
    pub unit: &'static str,
}

pub const fn col(name: &'static str, unit: &'static str) -> Column {
    Column { name, unit }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(i64::from(v))
    }
}

/// Formats a float so that it parses back to the same bits: plain decimal in
/// a readable magnitude range, shortest exponent form otherwise.
pub fn format_f64(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || (1e-4..1e7).contains(&a) || !v.is_finite() {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Num(v) => format_f64(*v),
            Cell::Int(v) => v.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Int(v) => Value::from(*v),
        }
    }
}

/// One output file worth of records.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    /// Appended to the output stem; empty for the main table.
    pub suffix: &'static str,
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(suffix: &'static str, columns: Vec<Column>) -> Self {
        Table {
            suffix,
            columns,
            rows: Vec::new(),
        }
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c.name == name)
    }

    /// Values of a numeric column, integers widened to `f64`.
    pub fn numbers(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.column(name)?;
        Some(
            self.rows
                .iter()
                .map(|r| match r[j] {
                    Cell::Num(v) => v,
                    Cell::Int(v) => v as f64,
                })
                .collect(),
        )
    }
}

/// Provenance written ahead of the records.
#[derive(Debug, Clone, PartialEq)]
pub struct Header {
    pub tool_version: &'static str,
    pub task: &'static str,
    pub config_sha256: String,
}

/// Writes the table; the `#` header never contains run-dependent data, so
/// reruns of one config produce identical bytes.
pub fn write_table(
    w: &mut impl Write,
    table: &Table,
    header: &Header,
    format: Format,
) -> std::io::Result<()> {
    match format {
        Format::Csv => {
            writeln!(w, "# qcrit {} task={}", header.tool_version, header.task)?;
            writeln!(w, "# config_sha256={}", header.config_sha256)?;
            let units: Vec<String> = table
                .columns
                .iter()
                .map(|c| format!("{} [{}]", c.name, c.unit))
                .collect();
            writeln!(w, "# units: {}", units.join(", "))?;
            let mut cw = csv::WriterBuilder::new().from_writer(&mut *w);
            cw.write_record(table.columns.iter().map(|c| c.name))?;
            for row in &table.rows {
                cw.write_record(row.iter().map(Cell::text))?;
            }
            cw.flush()?;
        }
        Format::Jsonl => {
            let mut units = Map::new();
            for c in &table.columns {
                units.insert(c.name.to_string(), Value::from(c.unit));
            }
            let mut meta = Map::new();
            meta.insert("tool".into(), Value::from("qcrit"));
            meta.insert("version".into(), Value::from(header.tool_version));
            meta.insert("task".into(), Value::from(header.task));
            meta.insert(
                "config_sha256".into(),
                Value::from(header.config_sha256.clone()),
            );
            meta.insert("units".into(), Value::Object(units));
            let mut first = Map::new();
            first.insert("#meta".into(), Value::Object(meta));
            writeln!(w, "{}", Value::Object(first))?;
            for row in &table.rows {
                let mut obj = Map::new();
                for (c, v) in table.columns.iter().zip(row) {
                    obj.insert(c.name.to_string(), v.json());
                }
                writeln!(w, "{}", Value::Object(obj))?;
            }
        }
    }
    Ok(())
}

/// Renders the table to a string, for callers that hash or compare output.
pub fn render(table: &Table, header: &Header, format: Format) -> Result<String> {
    let mut buf = Vec::new();
    write_table(&mut buf, table, header, format).map_err(|e| CliError::io("<memory>", e))?;
    String::from_utf8(buf).map_err(|e| CliError::io("<memory>", std::io::Error::other(e)))
}
