// Copyright 2026 The gausscollide Authors
// SPDX-License-Identifier: Apache-2.0

//! Deterministic CSV and JSON-lines tables.

use std::io::{self, Write};

use clap::ValueEnum;

const SIG_DIGITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Jsonl,
}

/// One table cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(u64),
    Flag(bool),
    Missing,
}

/// Shortest rendering with at most 12 significant digits.
///
/// Plain decimal for magnitudes in `[1e-5, 1e12)`, exponent form otherwise.
/// Negative zero prints as `0`.
pub fn format_float(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return if v.is_nan() {
            "nan".into()
        } else if v > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{:.*e}", SIG_DIGITS - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..SIG_DIGITS as i32).contains(&exp) {
        let decimals = (SIG_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
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

impl Cell {
    fn csv(&self) -> String {
        match *self {
            Cell::Float(v) => format_float(v),
            Cell::Int(v) => v.to_string(),
            Cell::Flag(b) => u8::from(b).to_string(),
            Cell::Missing => String::new(),
        }
    }

    fn json(&self) -> String {
        match *self {
            Cell::Float(v) if v.is_finite() => format_float(v),
            Cell::Float(_) | Cell::Missing => "null".into(),
            Cell::Int(v) => v.to_string(),
            Cell::Flag(b) => b.to_string(),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Missing, Cell::Float)
    }
}

/// Writes rows under a fixed column list.
pub struct TableWriter<W: Write> {
    out: W,
    format: Format,
    columns: Vec<String>,
}

impl<W: Write> TableWriter<W> {
    pub fn new(mut out: W, format: Format, columns: Vec<String>) -> io::Result<Self> {
        if format == Format::Csv {
            writeln!(out, "{}", columns.join(","))?;
        }
        Ok(Self { out, format, columns })
    }

    pub fn row(&mut self, cells: &[Cell]) -> io::Result<()> {
        assert_eq!(cells.len(), self.columns.len(), "row width");
        let line = match self.format {
            Format::Csv => cells.iter().map(Cell::csv).collect::<Vec<_>>().join(","),
            Format::Jsonl => {
                let fields: Vec<String> = self
                    .columns
                    .iter()
                    .zip(cells)
                    .map(|(k, c)| format!("\"{k}\":{}", c.json()))
                    .collect();
                format!("{{{}}}", fields.join(","))
            }
        };
        writeln!(self.out, "{line}")
    }

    pub fn finish(mut self) -> io::Result<W> {
        self.out.flush()?;
        Ok(self.out)
    }
}
