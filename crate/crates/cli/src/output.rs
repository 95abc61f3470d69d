//! Formatting and writing of CSV and JSON artifacts.

use std::io::Write;
use std::path::Path;

use dirac_soliton::Params;
use serde_json::{json, Map, Value};

use crate::config::Format;
use crate::error::{CliError, Result};

pub const SIGNIFICANT_DIGITS: usize = 12;

/// `v` to twelve significant digits, like C's `%.12g`: fixed notation for
/// exponents in `[−5, 12)`, scientific otherwise, trailing zeros dropped.
pub fn fmt_num(v: f64) -> String {
    if v.is_nan() {
        return "NaN".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..SIGNIFICANT_DIGITS as i32).contains(&exp) {
        let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{v:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    if t == "-0" {
        "0".into()
    } else {
        t.into()
    }
}

/// JSON number carrying the same twelve digits as the CSV; `null` if not finite.
pub fn num(v: f64) -> Value {
    let rounded: f64 = fmt_num(v).parse().unwrap_or(f64::NAN);
    serde_json::Number::from_f64(rounded).map_or(Value::Null, Value::Number)
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(v) => fmt_num(*v),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(v) => num(*v),
            Cell::Text(s) => Value::String(s.clone()),
        }
    }
}

/// Rows with a fixed header; the JSON form is an array of objects keyed by
/// the header, optionally replaced by a richer document.
#[derive(Debug, Clone)]
pub struct Artifact {
    pub command: &'static str,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub json_data: Option<Value>,
}

impl Artifact {
    pub fn new(command: &'static str, header: Vec<&'static str>) -> Self {
        Self {
            command,
            header,
            rows: Vec::new(),
            json_data: None,
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let err = |e: csv::Error| CliError::Output(e.to_string());
        w.write_record(&self.header).map_err(err)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv)).map_err(err)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
    }

    pub fn to_json(&self, params: &Params) -> Result<String> {
        let data = match &self.json_data {
            Some(v) => v.clone(),
            None => Value::Array(
                self.rows
                    .iter()
                    .map(|row| {
                        let obj: Map<String, Value> = self
                            .header
                            .iter()
                            .zip(row)
                            .map(|(k, c)| (k.to_string(), c.json()))
                            .collect();
                        Value::Object(obj)
                    })
                    .collect(),
            ),
        };
        let doc = json!({
            "params": params_json(params),
            "data": data,
            "meta": {
                "version": env!("CARGO_PKG_VERSION"),
                "command": self.command,
            },
        });
        let mut s = serde_json::to_string_pretty(&doc).map_err(|e| CliError::Output(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }

    pub fn render(&self, format: Format, params: &Params) -> Result<String> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(params),
        }
    }
}

/// Echo of the model, with both λ and γ whichever was given.
pub fn params_json(p: &Params) -> Value {
    let mut v = json!({
        "mass": num(p.mass()),
        "lambda": num(p.lambda()),
        "gamma": num(p.gamma()),
        "half_period": num(p.half_period()),
        "alpha": num(p.alpha()),
    });
    if let Some(s) = p.alpha_scale() {
        v["alpha_scale"] = num(s);
    }
    v
}

/// Writes to `path`, or to standard output when there is none.
pub fn emit(text: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io {
            path: p.to_path_buf(),
            source,
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}
