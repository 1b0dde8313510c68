//! Reads a file written by `periodfn` and recomputes its residuals from the
//! stored samples.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde_json::Value;

use super::output::parse_complex;
use crate::error::{Error, Result};
use crate::spectral::residuals::{boundary_from_samples, three_term_from_samples};

pub const KIND_THREE_TERM: &str = "three_term";
pub const KIND_BOUNDARY: &str = "boundary";
pub const KIND_PSI: &str = "psi";
pub const COLUMNS: [&str; 5] = ["kind", "t", "v0", "v1", "v2"];

#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub kind: String,
    pub t: f64,
    pub v: [Option<Complex64>; 3],
}

#[derive(Clone, Debug)]
pub struct PsiFile {
    pub header: BTreeMap<String, String>,
    pub rows: Vec<Row>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub s: Complex64,
    pub three_term: f64,
    pub three_term_tol: f64,
    pub boundary: Option<f64>,
    pub header_three_term: Option<f64>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.three_term < self.three_term_tol
    }
}

fn schema(path: &Path, msg: impl Into<String>) -> Error {
    Error::Schema {
        path: path.to_path_buf(),
        msg: msg.into(),
    }
}

pub fn read_psi_file(path: &Path) -> Result<PsiFile> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    if text.trim().is_empty() {
        return Err(schema(path, "file is empty"));
    }
    if text.trim_start().starts_with('{') {
        parse_json(path, &text)
    } else {
        parse_csv(path, &text)
    }
}

fn parse_csv(path: &Path, text: &str) -> Result<PsiFile> {
    let mut header = BTreeMap::new();
    for line in text.lines().take_while(|l| l.starts_with('#')) {
        if let Some((k, v)) = line[1..].split_once('=') {
            header.insert(k.trim().to_string(), v.trim().to_string());
        }
    }
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .flexible(false)
        .from_reader(text.as_bytes());
    let cols = reader
        .headers()
        .map_err(|e| schema(path, e.to_string()))?
        .clone();
    if cols.iter().collect::<Vec<_>>() != COLUMNS {
        return Err(schema(
            path,
            format!("expected columns {COLUMNS:?}, got {cols:?}"),
        ));
    }
    let mut rows = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| schema(path, e.to_string()))?;
        let line = i + 1;
        let t = rec[1]
            .parse()
            .map_err(|_| schema(path, format!("row {line}: bad t {:?}", &rec[1])))?;
        let mut v = [None; 3];
        for (j, slot) in v.iter_mut().enumerate() {
            let raw = rec[2 + j].trim();
            if !raw.is_empty() {
                *slot = Some(
                    parse_complex(raw)
                        .ok_or_else(|| schema(path, format!("row {line}: bad value {raw:?}")))?,
                );
            }
        }
        rows.push(Row {
            kind: rec[0].to_string(),
            t,
            v,
        });
    }
    Ok(PsiFile { header, rows })
}

fn json_complex(v: &Value) -> Option<Complex64> {
    Some(Complex64::new(
        v.get("re")?.as_f64()?,
        v.get("im")?.as_f64()?,
    ))
}

fn parse_json(path: &Path, text: &str) -> Result<PsiFile> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let first: Value = serde_json::from_str(lines.next().unwrap_or_default())
        .map_err(|e| schema(path, format!("header line: {e}")))?;
    let h = first
        .get("header")
        .and_then(Value::as_object)
        .ok_or_else(|| schema(path, "first line must be {\"header\": {...}}"))?;
    let mut header = BTreeMap::new();
    for (k, v) in h {
        let text = match v {
            Value::String(s) => s.clone(),
            Value::Object(_) => match json_complex(v) {
                Some(z) => super::output::fmt_complex(z),
                None => v.to_string(),
            },
            other => other.to_string(),
        };
        header.insert(k.clone(), text);
    }
    let mut rows = Vec::new();
    for (i, line) in lines.enumerate() {
        let line_no = i + 2;
        let obj: Value =
            serde_json::from_str(line).map_err(|e| schema(path, format!("line {line_no}: {e}")))?;
        let kind = obj["kind"]
            .as_str()
            .ok_or_else(|| schema(path, format!("line {line_no}: missing kind")))?;
        let t = obj["t"]
            .as_f64()
            .ok_or_else(|| schema(path, format!("line {line_no}: missing t")))?;
        let mut v = [None; 3];
        for (j, slot) in v.iter_mut().enumerate() {
            let cell = &obj[COLUMNS[2 + j]];
            if !cell.is_null() {
                *slot = Some(
                    json_complex(cell)
                        .ok_or_else(|| schema(path, format!("line {line_no}: bad v{j}")))?,
                );
            }
        }
        rows.push(Row {
            kind: kind.to_string(),
            t,
            v,
        });
    }
    Ok(PsiFile { header, rows })
}

fn header_value<T: std::str::FromStr>(file: &PsiFile, path: &Path, key: &str) -> Result<T> {
    let raw = file
        .header
        .get(key)
        .ok_or_else(|| schema(path, format!("header lacks {key}")))?;
    raw.parse()
        .map_err(|_| schema(path, format!("header {key} = {raw:?} does not parse")))
}

/// Recomputes the residuals of a `periodfn` file.
pub fn verify_file(path: &Path) -> Result<VerifyReport> {
    let file = read_psi_file(path)?;
    let s = file
        .header
        .get("s")
        .and_then(|v| parse_complex(v))
        .ok_or_else(|| schema(path, "header lacks a complex s"))?;
    let three_term_tol: f64 = header_value(&file, path, "three_term_tol")?;
    let header_three_term = header_value(&file, path, "three_term_residual").ok();

    let mut tt = Vec::new();
    let mut bd = Vec::new();
    for (i, row) in file.rows.iter().enumerate() {
        let need =
            |k: usize| row.v[k].ok_or_else(|| schema(path, format!("row {}: missing v{k}", i + 1)));
        match row.kind.as_str() {
            KIND_THREE_TERM => tt.push((row.t, [need(0)?, need(1)?, need(2)?])),
            KIND_BOUNDARY => bd.push((row.t, need(0)?, need(1)?)),
            KIND_PSI => {}
            other => {
                return Err(schema(
                    path,
                    format!("row {}: unknown kind {other:?}", i + 1),
                ))
            }
        }
    }
    if tt.is_empty() {
        return Err(schema(path, "no three_term rows"));
    }
    let scale = tt
        .iter()
        .flat_map(|(_, v)| v.iter().map(|z| z.norm()))
        .fold(0.0, f64::max);
    if !(scale > 0.0) || !scale.is_finite() {
        return Err(schema(path, "samples are zero or not finite"));
    }
    let three_term = three_term_from_samples(s, &tt, scale);
    let boundary = match bd.len() {
        3 => Some(boundary_from_samples(&[bd[0], bd[1], bd[2]], scale)),
        0 => None,
        n => return Err(schema(path, format!("expected 3 boundary rows, got {n}"))),
    };
    Ok(VerifyReport {
        s,
        three_term: if three_term.is_nan() {
            f64::INFINITY
        } else {
            three_term
        },
        three_term_tol,
        boundary,
        header_three_term,
    })
}
