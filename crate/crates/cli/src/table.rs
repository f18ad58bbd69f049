//! Ordered rows and their CSV / JSON renderings.

use gup1d::checks::CheckOutcome;
use serde::ser::{Serialize, SerializeMap, Serializer};
use std::io::Write;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Bool(bool),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}
impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}
impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}
impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_owned())
    }
}
impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Cell::Int(v) => s.serialize_i64(*v),
            Cell::Float(v) if v.is_finite() => s.serialize_f64(*v),
            Cell::Float(_) => s.serialize_none(),
            Cell::Text(v) => s.serialize_str(v),
            Cell::Bool(v) => s.serialize_bool(*v),
        }
    }
}

/// Named cells in insertion order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Row(pub Vec<(&'static str, Cell)>);

impl Row {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &'static str, value: impl Into<Cell>) -> Self {
        self.0.push((key, value.into()));
        self
    }

    pub fn keys(&self) -> Vec<&'static str> {
        self.0.iter().map(|(k, _)| *k).collect()
    }
}

impl Serialize for Row {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct Report {
    pub command: &'static str,
    pub params: Row,
    pub rows: Vec<Row>,
    pub checks: Vec<CheckOutcome>,
}

impl Report {
    pub fn failures(&self) -> Vec<&'static str> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.check)
            .collect()
    }
}

/// 17 significant digits; scientific outside [1e-3, 1e6].
pub fn format_float(v: f64) -> String {
    if v == 0.0 {
        return if v.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let a = v.abs();
    if (1e-3..=1e6).contains(&a) {
        let decimals = (16 - a.log10().floor() as i32).max(0) as usize;
        format!("{v:.decimals$}")
    } else {
        format!("{v:.16e}")
    }
}

fn render(cell: &Cell) -> String {
    match cell {
        Cell::Int(v) => v.to_string(),
        Cell::Float(v) => format_float(*v),
        Cell::Text(v) => v.clone(),
        Cell::Bool(v) => v.to_string(),
    }
}

pub fn check_row(c: &CheckOutcome) -> Row {
    Row::new()
        .with("check", c.check)
        .with("group", c.group)
        .with("measured", c.measured)
        .with("comparison", c.comparison.symbol())
        .with("tolerance", c.tolerance)
        .with("passed", c.passed)
        .with("detail", c.detail.clone())
}

pub fn write_csv(rows: &[Row], out: impl Write) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if let Some(first) = rows.first() {
        w.write_record(first.keys())?;
    }
    for r in rows {
        w.write_record(r.0.iter().map(|(_, c)| render(c)))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json(report: &Report, mut out: impl Write) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut out, report)?;
    writeln!(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format_switches_notation() {
        assert_eq!(format_float(1.5), "1.5000000000000000");
        assert_eq!(format_float(1e-4), "1.0000000000000000e-4");
        assert_eq!(format_float(2e7), "2.0000000000000000e7");
        assert_eq!(format_float(0.0), "0");
        assert!(format_float(-0.125).starts_with("-0.125000000000000"));
    }

    #[test]
    fn float_format_round_trips() {
        for v in [
            1.855757081489239,
            -0.0555555555555556,
            1e-300,
            6.02e23,
            999999.9999999999,
            1e-3,
            1e6,
            0.1 + 0.2,
        ] {
            assert_eq!(format_float(v).parse::<f64>().unwrap(), v);
        }
    }

    proptest::proptest! {
        #[test]
        fn any_finite_float_round_trips(bits in proptest::prelude::any::<u64>()) {
            let v = f64::from_bits(bits);
            proptest::prop_assume!(v.is_finite());
            let text = format_float(v);
            proptest::prop_assert_eq!(text.parse::<f64>().unwrap().to_bits(), v.to_bits());
            let a = v.abs();
            proptest::prop_assert_eq!(text.contains('e'), a != 0.0 && !(1e-3..=1e6).contains(&a));
        }
    }
}
