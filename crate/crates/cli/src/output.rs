//! Output records, written as line-delimited JSON or CSV.

use std::collections::BTreeMap;
use std::io::{self, Write};

use clap::ValueEnum;
use serde::Serialize;
use su11::num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// One row of output. Optional fields are `null` in JSON and empty in CSV,
/// so both formats always carry the same columns.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputRecord {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub value_re: f64,
    pub value_im: f64,
    pub expected_re: Option<f64>,
    pub expected_im: Option<f64>,
    /// `|value − expected|` as a complex modulus.
    pub abs_error: Option<f64>,
    pub status: Option<String>,
    pub note: Option<String>,
}

impl OutputRecord {
    pub fn new(command: &str, value: Complex64) -> Self {
        Self {
            command: command.to_string(),
            inputs: BTreeMap::new(),
            value_re: value.re,
            value_im: value.im,
            expected_re: None,
            expected_im: None,
            abs_error: None,
            status: None,
            note: None,
        }
    }

    pub fn input(mut self, key: &str, value: impl ToString) -> Self {
        self.inputs.insert(key.to_string(), value.to_string());
        self
    }

    pub fn expected(mut self, expected: Complex64) -> Self {
        let value = Complex64::new(self.value_re, self.value_im);
        self.expected_re = Some(expected.re);
        self.expected_im = Some(expected.im);
        self.abs_error = Some((value - expected).norm());
        self
    }

    pub fn status(mut self, status: &str) -> Self {
        self.status = Some(status.to_string());
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Serialize)]
struct CsvRow<'a> {
    command: &'a str,
    inputs: String,
    value_re: f64,
    value_im: f64,
    expected_re: Option<f64>,
    expected_im: Option<f64>,
    abs_error: Option<f64>,
    status: Option<&'a str>,
    note: Option<&'a str>,
}

impl<'a> From<&'a OutputRecord> for CsvRow<'a> {
    fn from(r: &'a OutputRecord) -> Self {
        let inputs = r.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";");
        Self {
            command: &r.command,
            inputs,
            value_re: r.value_re,
            value_im: r.value_im,
            expected_re: r.expected_re,
            expected_im: r.expected_im,
            abs_error: r.abs_error,
            status: r.status.as_deref(),
            note: r.note.as_deref(),
        }
    }
}

pub fn write_records<W: Write>(out: W, format: Format, records: &[OutputRecord]) -> io::Result<()> {
    match format {
        Format::Json => {
            let mut out = out;
            for r in records {
                serde_json::to_writer(&mut out, r)?;
                out.write_all(b"\n")?;
            }
            out.flush()
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            if records.is_empty() {
                w.write_record([
                    "command", "inputs", "value_re", "value_im", "expected_re", "expected_im", "abs_error", "status", "note",
                ])?;
            }
            for r in records {
                w.serialize(CsvRow::from(r))?;
            }
            w.flush()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> OutputRecord {
        OutputRecord::new("elem", Complex64::new(1.0, -0.5))
            .input("eta", "3/2")
            .input("n", 0)
            .expected(Complex64::new(1.0, 0.0))
    }

    #[test]
    fn json_line_per_record() {
        let mut buf = Vec::new();
        write_records(&mut buf, Format::Json, &[sample(), sample()]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 2);
        let v: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
        assert_eq!(v["inputs"]["eta"], "3/2");
        assert_eq!(v["abs_error"], 0.5);
        assert!(v["status"].is_null());
    }

    #[test]
    fn csv_has_same_columns() {
        let mut buf = Vec::new();
        write_records(&mut buf, Format::Csv, &[sample()]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "command,inputs,value_re,value_im,expected_re,expected_im,abs_error,status,note"
        );
        assert_eq!(lines.next().unwrap(), "elem,eta=3/2;n=0,1.0,-0.5,1.0,0.0,0.5,,");

        let json_keys: Vec<String> = match serde_json::to_value(sample()).unwrap() {
            serde_json::Value::Object(m) => m.keys().cloned().collect(),
            _ => unreachable!(),
        };
        let mut csv_keys: Vec<String> = text.lines().next().unwrap().split(',').map(String::from).collect();
        csv_keys.sort();
        let mut json_keys = json_keys;
        json_keys.sort();
        assert_eq!(csv_keys, json_keys);
    }
}
