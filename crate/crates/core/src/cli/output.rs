//! Number formatting, unit scaling and the CSV/JSON writers.

use std::f64::consts::LN_2;
use std::fmt::Write as _;

use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Units {
    Nats,
    Bits,
}

impl Units {
    pub fn name(self) -> &'static str {
        match self {
            Units::Nats => "nats",
            Units::Bits => "bits",
        }
    }

    /// Nats to display units.
    pub fn show(self, nats: f64) -> f64 {
        match self {
            Units::Nats => nats,
            Units::Bits => nats / LN_2,
        }
    }

    /// Display units to nats, for rates and thresholds read from flags.
    pub fn read(self, value: f64) -> f64 {
        match self {
            Units::Nats => value,
            Units::Bits => value * LN_2,
        }
    }
}

/// `x` with 12 significant digits, in the style of C's `%.12g`.
pub fn sig12(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let fixed = format!("{x:.prec$}", prec = (11 - exp) as usize);
        trim_zeros(&fixed).to_string()
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// `x` rounded to what [`sig12`] prints.
pub fn round12(x: f64) -> f64 {
    if x.is_finite() {
        sig12(x).parse().expect("sig12 output parses")
    } else {
        x
    }
}

/// Comment header, column names and numeric rows.
pub struct Table {
    pub comments: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(comments: Vec<String>, columns: &[&str]) -> Self {
        Self {
            comments,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for c in &self.comments {
            let _ = writeln!(out, "# {c}");
        }
        let _ = writeln!(out, "{}", self.columns.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&v| sig12(v)).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }
}

/// Divides every field named in `nats_keys` by `ln 2` (in bits mode), at any
/// depth, then rounds all floats to 12 significant digits.
pub fn finish_json(value: &mut Value, units: Units, nats_keys: &[&str]) {
    match value {
        Value::Object(map) => {
            for (k, v) in map.iter_mut() {
                if nats_keys.contains(&k.as_str()) {
                    scale(v, units);
                }
                finish_json(v, units, nats_keys);
            }
        }
        Value::Array(items) => items.iter_mut().for_each(|v| finish_json(v, units, nats_keys)),
        Value::Number(n) if n.is_f64() => {
            let x = round12(n.as_f64().expect("f64"));
            *value = serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number);
        }
        _ => {}
    }
}

fn scale(v: &mut Value, units: Units) {
    match v {
        Value::Number(n) => {
            if let Some(x) = n.as_f64() {
                *v = serde_json::Number::from_f64(units.show(x)).map_or(Value::Null, Value::Number);
            }
        }
        Value::Array(items) => items.iter_mut().for_each(|x| scale(x, units)),
        _ => {}
    }
}
