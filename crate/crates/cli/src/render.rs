//! Output rendering: exact rationals as `num/den` strings everywhere, with
//! plain, CSV, and JSON forms for records and verification reports.

use polybernoulli::{Mismatch, PolyBernoulliRecord, Rational};
use serde_json::json;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Plain,
    Csv,
    Json,
}

pub const RECORD_CSV_HEADER: &str = "r,m,k,method,value";

pub fn rational_str(v: &Rational) -> String {
    format!("{}/{}", v.numer(), v.denom())
}

pub fn rational_json(v: &Rational) -> serde_json::Value {
    json!({ "num": v.numer().to_string(), "den": v.denom().to_string() })
}

fn join_u32(values: &[u32]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(";")
}

fn join_i64(values: &[i64]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(";")
}

pub fn record_plain(rec: &PolyBernoulliRecord) -> String {
    format!(
        "B_({})^({}) = {}",
        rec.m
            .as_slice()
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(","),
        rec.k
            .as_slice()
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(","),
        rational_str(&rec.value)
    )
}

pub fn record_csv_row(rec: &PolyBernoulliRecord) -> String {
    format!(
        "{},{},{},{},{}",
        rec.r,
        join_u32(rec.m.as_slice()),
        join_i64(rec.k.as_slice()),
        rec.method.tag(),
        rational_str(&rec.value)
    )
}

pub fn record_json(rec: &PolyBernoulliRecord) -> serde_json::Value {
    json!({
        "r": rec.r,
        "m": rec.m.as_slice(),
        "k": rec.k.as_slice(),
        "method": rec.method.tag(),
        "value": rational_json(&rec.value),
    })
}

/// Result of one verification sweep.
pub struct VerifyReport {
    pub suite: String,
    pub cases_checked: u64,
    pub mismatches: Vec<Mismatch>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    /// Exit code contract: 0 when the suite passed, 1 when any mismatch
    /// was found. Usage errors never reach a report.
    pub fn exit_code(&self) -> u8 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Plain => {
                let mut out = format!(
                    "suite: {}\ncases checked: {}\nmismatches: {}\n",
                    self.suite,
                    self.cases_checked,
                    self.mismatches.len()
                );
                for mm in &self.mismatches {
                    out.push_str(&format!(
                        "mismatch: m={} k={} lhs={} rhs={}\n",
                        join_u32(&mm.m),
                        join_i64(&mm.k),
                        rational_str(&mm.lhs),
                        rational_str(&mm.rhs)
                    ));
                }
                out
            }
            OutputFormat::Csv => {
                let mut out = format!(
                    "suite,cases_checked,mismatch_count\n{},{},{}\n",
                    self.suite,
                    self.cases_checked,
                    self.mismatches.len()
                );
                if !self.mismatches.is_empty() {
                    out.push_str("m,k,lhs,rhs\n");
                    for mm in &self.mismatches {
                        out.push_str(&format!(
                            "{},{},{},{}\n",
                            join_u32(&mm.m),
                            join_i64(&mm.k),
                            rational_str(&mm.lhs),
                            rational_str(&mm.rhs)
                        ));
                    }
                }
                out
            }
            OutputFormat::Json => {
                let mismatches: Vec<_> = self
                    .mismatches
                    .iter()
                    .map(|mm| {
                        json!({
                            "m": mm.m,
                            "k": mm.k,
                            "lhs": rational_json(&mm.lhs),
                            "rhs": rational_json(&mm.rhs),
                        })
                    })
                    .collect();
                let value = json!({
                    "suite": self.suite,
                    "cases_checked": self.cases_checked,
                    "mismatches": mismatches,
                });
                format!("{value}\n")
            }
        }
    }
}
