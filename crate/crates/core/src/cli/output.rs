//! Table output: CSV with `#` header lines, or JSON lines with a header
//! object first.
//!
//! Reals are written with 17 significant digits, complex numbers in CSV as
//! `re+imi` and in JSON as `{"re": .., "im": ..}`.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        <Self as ValueEnum>::from_str(s, true)
    }
}

/// One table cell.
#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Real(f64),
    Complex(Complex64),
    Text(String),
    Bool(bool),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Real(v) => fmt_real(*v),
            Cell::Complex(z) => fmt_complex(*z),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Real(v) => real_json(*v),
            Cell::Complex(z) => json!({"re": real_json(z.re), "im": real_json(z.im)}),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
            Cell::Empty => Value::Null,
        }
    }
}

fn real_json(v: f64) -> Value {
    // JSON has no inf/nan
    if v.is_finite() {
        json!(v)
    } else {
        json!(v.to_string())
    }
}

pub fn fmt_real(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn fmt_complex(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{:.16e}{sign}{:.16e}i", z.re, z.im.abs())
}

/// Inverse of [`fmt_complex`]; also accepts a bare real.
pub fn parse_complex(s: &str) -> Option<Complex64> {
    let s = s.trim();
    let Some(body) = s.strip_suffix('i') else {
        return s.parse().ok().map(|re| Complex64::new(re, 0.0));
    };
    // split at the last sign that is neither leading nor part of an exponent
    let bytes = body.as_bytes();
    let cut = (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'))?;
    let re: f64 = body[..cut].parse().ok()?;
    let im: f64 = match &body[cut..] {
        "+" => 1.0,
        "-" => -1.0,
        t => t.trim_start_matches('+').parse().ok()?,
    };
    Some(Complex64::new(re, im))
}

/// Ordered `key = value` metadata written ahead of the rows.
#[derive(Clone, Debug, Default)]
pub struct Header(Vec<(String, Cell)>);

impl Header {
    pub fn new(command: &str) -> Self {
        let mut h = Self::default();
        h.push(
            "generator",
            Cell::Text(format!("modsurf {}", env!("CARGO_PKG_VERSION"))),
        );
        h.push("command", Cell::Text(command.to_string()));
        h
    }

    pub fn push(&mut self, key: &str, value: Cell) -> &mut Self {
        self.0.push((key.to_string(), value));
        self
    }

    pub fn entries(&self) -> &[(String, Cell)] {
        &self.0
    }
}

/// Output sink: a file or stdout.
pub struct Sink {
    path: Option<PathBuf>,
    inner: Box<dyn Write>,
}

impl Sink {
    pub fn open(path: Option<&Path>) -> Result<Self> {
        let inner: Box<dyn Write> = match path {
            Some(p) => Box::new(BufWriter::new(
                File::create(p).map_err(|e| Error::io(p, e))?,
            )),
            None => Box::new(BufWriter::new(io::stdout())),
        };
        Ok(Self {
            path: path.map(Path::to_path_buf),
            inner,
        })
    }

    fn err(&self, e: io::Error) -> Error {
        Error::io(
            self.path
                .clone()
                .unwrap_or_else(|| PathBuf::from("<stdout>")),
            e,
        )
    }

    pub fn write_table(
        &mut self,
        format: Format,
        header: &Header,
        columns: &[&str],
        rows: &[Vec<Cell>],
    ) -> Result<()> {
        let text = render_table(format, header, columns, rows)?;
        self.inner
            .write_all(text.as_bytes())
            .map_err(|e| self.err(e))?;
        self.inner.flush().map_err(|e| self.err(e))
    }
}

pub fn render_table(
    format: Format,
    header: &Header,
    columns: &[&str],
    rows: &[Vec<Cell>],
) -> Result<String> {
    let mut out = String::new();
    match format {
        Format::Csv => {
            for (k, v) in header.entries() {
                out.push_str(&format!("# {k} = {}\n", v.csv()));
            }
            let mut w = csv::Writer::from_writer(Vec::new());
            let csv_err = |e: csv::Error| Error::param(format!("csv encoding: {e}"));
            w.write_record(columns).map_err(csv_err)?;
            for row in rows {
                w.write_record(row.iter().map(Cell::csv)).map_err(csv_err)?;
            }
            let bytes = w
                .into_inner()
                .map_err(|e| Error::param(format!("csv encoding: {e}")))?;
            out.push_str(&String::from_utf8_lossy(&bytes));
        }
        Format::Json => {
            let h: Map<String, Value> = header
                .entries()
                .iter()
                .map(|(k, v)| (k.clone(), v.json()))
                .collect();
            out.push_str(&serde_json::to_string(&json!({ "header": h }))?);
            out.push('\n');
            for row in rows {
                let obj: Map<String, Value> = columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| (c.to_string(), v.json()))
                    .collect();
                out.push_str(&serde_json::to_string(&obj)?);
                out.push('\n');
            }
        }
    }
    Ok(out)
}
