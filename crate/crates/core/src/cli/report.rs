//! Deterministic CSV/JSON rendering.
//!
//! Exact values (counts, rationals) are emitted as integers or `"p/q"`
//! strings. Floats are printed with 12 significant digits, ties to even.

use std::fmt::Write as _;
use std::io::{self, Write};

use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i128),
    Float(f64),
    Text(String),
    Bool(bool),
    List(Vec<Cell>),
    Null,
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i128)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v as i128)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
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

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Null, Into::into)
    }
}

/// A command's output: echoed parameters and summary fields, then a table.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: &'static str,
    pub fields: Vec<(&'static str, Cell)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report {
            command,
            fields: Vec::new(),
            columns: Vec::new(),
            rows: Vec::new(),
        }
    }

    pub fn field(mut self, key: &'static str, value: impl Into<Cell>) -> Self {
        self.fields.push((key, value.into()));
        self
    }

    pub fn columns(mut self, columns: &[&'static str]) -> Self {
        self.columns = columns.to_vec();
        self
    }

    pub fn row(&mut self, cells: Vec<Cell>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        let text = match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        };
        out.write_all(text.as_bytes())
    }

    /// Header line, then one line per row.
    pub fn to_csv(&self) -> String {
        let mut s = self.columns.join(",");
        s.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(csv_cell).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }

    /// One object: `command`, the fields in order, then `rows`.
    pub fn to_json(&self) -> String {
        let mut s = String::from("{");
        push_key(&mut s, "command");
        push_string(&mut s, self.command);
        for (key, value) in &self.fields {
            s.push(',');
            push_key(&mut s, key);
            push_json(&mut s, value);
        }
        s.push(',');
        push_key(&mut s, "rows");
        s.push('[');
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push('{');
            for (j, (key, value)) in self.columns.iter().zip(row).enumerate() {
                if j > 0 {
                    s.push(',');
                }
                push_key(&mut s, key);
                push_json(&mut s, value);
            }
            s.push('}');
        }
        s.push_str("]}\n");
        s
    }
}

fn push_key(s: &mut String, key: &str) {
    push_string(s, key);
    s.push(':');
}

fn push_string(s: &mut String, v: &str) {
    s.push('"');
    for c in v.chars() {
        match c {
            '"' => s.push_str("\\\""),
            '\\' => s.push_str("\\\\"),
            '\n' => s.push_str("\\n"),
            c if (c as u32) < 0x20 => {
                let _ = write!(s, "\\u{:04x}", c as u32);
            }
            c => s.push(c),
        }
    }
    s.push('"');
}

fn push_json(s: &mut String, cell: &Cell) {
    match cell {
        Cell::Int(v) => {
            let _ = write!(s, "{v}");
        }
        Cell::Float(v) if v.is_finite() => s.push_str(&format_sig(*v)),
        Cell::Float(_) | Cell::Null => s.push_str("null"),
        Cell::Text(v) => push_string(s, v),
        Cell::Bool(v) => s.push_str(if *v { "true" } else { "false" }),
        Cell::List(items) => {
            s.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                push_json(s, item);
            }
            s.push(']');
        }
    }
}

fn csv_cell(cell: &Cell) -> String {
    match cell {
        Cell::Int(v) => v.to_string(),
        Cell::Float(v) if v.is_finite() => format_sig(*v),
        Cell::Float(v) => v.to_string(),
        Cell::Text(v) => v.clone(),
        Cell::Bool(v) => v.to_string(),
        Cell::List(items) => items.iter().map(csv_cell).collect::<Vec<_>>().join(";"),
        Cell::Null => String::new(),
    }
}

/// 12 significant digits, round-half-even, trailing zeros trimmed.
///
/// Plain notation is used for decimal exponents in `-5..12`, scientific
/// otherwise. The digits always come from a single exact rounding.
pub fn format_sig(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{:.11e}", v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let sign = if negative { "-" } else { "" };

    if (-5..12).contains(&exp) {
        let body = if exp >= 0 {
            let split = exp as usize + 1;
            format!("{}.{}", &digits[..split], &digits[split..])
        } else {
            format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
        };
        let body = body.trim_end_matches('0').trim_end_matches('.');
        format!("{sign}{body}")
    } else {
        let frac = digits[1..].trim_end_matches('0');
        if frac.is_empty() {
            format!("{sign}{}e{exp}", &digits[..1])
        } else {
            format!("{sign}{}.{frac}e{exp}", &digits[..1])
        }
    }
}
