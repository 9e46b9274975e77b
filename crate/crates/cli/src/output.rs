use std::io::Write;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Floats are reported to 10 significant digits.
pub fn sig10(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 {
            "0".to_string()
        } else {
            x.to_string()
        };
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (9 - mag).max(0) as usize;
    format!("{x:.decimals$}")
}

pub fn write_rows<T: Serialize>(
    rows: &[T],
    format: Format,
    out: &mut dyn Write,
) -> std::io::Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, rows)?;
            writeln!(out)
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new()
                .quote_style(csv::QuoteStyle::Never)
                .from_writer(out);
            for r in rows {
                w.serialize(r)?;
            }
            w.flush()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table1Out {
    pub p: u64,
    pub q: u64,
    pub k4_brute: Option<u64>,
    pub u: i64,
    pub q2_hyper: i64,
    pub k4_formula: u64,
    pub hyper_float: String,
    pub float_prefix_matches: Option<bool>,
    pub verdict: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticOut {
    pub m: usize,
    pub q: u64,
    pub count: u64,
    pub ratio: String,
    pub limit: String,
    pub deviation: String,
    pub envelope_lo: String,
    pub envelope_hi: String,
    pub within_envelope: bool,
    pub decreasing: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalOut {
    pub q: u64,
    pub expr: String,
    pub exact: String,
    pub approx: String,
}
