//! Serializable report: tables of exact values, diagnostics and run settings,
//! rendered as JSON, CSV or aligned text.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::exact::{factor_rational, PiExact};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalRecord {
    pub num: String,
    pub den: String,
}

/// One exact table entry.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RowRecord {
    pub s: i64,
    pub entry: String,
    pub rational: RationalRecord,
    pub sign: i8,
    /// `(prime, exponent)`, negative exponents in the denominator.
    pub factored: Vec<(String, i64)>,
    pub factored_text: String,
    /// Exponent of π in half units.
    pub pi_half: i64,
    /// Full-unit exponent, absent when `pi_half` is odd.
    pub pi_power: Option<i64>,
    pub numeric: Option<f64>,
    pub flags: Vec<String>,
}

impl RowRecord {
    pub fn new(s: i64, entry: impl Into<String>, value: &PiExact) -> Self {
        let (sign, factored, factored_text) = match factor_rational(&value.coeff) {
            Ok(f) => (
                f.sign,
                f.factors.iter().map(|(p, e)| (p.to_string(), *e)).collect(),
                f.to_string(),
            ),
            Err(_) => (0, Vec::new(), "0".to_string()),
        };
        Self {
            s,
            entry: entry.into(),
            rational: RationalRecord {
                num: value.coeff.numer().to_string(),
                den: value.coeff.denom().to_string(),
            },
            sign,
            factored,
            factored_text,
            pi_half: value.half_pi_exp,
            pi_power: value.pi_power(),
            numeric: None,
            flags: Vec::new(),
        }
    }

    pub fn with_numeric(mut self, x: f64) -> Self {
        self.numeric = Some(x);
        self
    }

    pub fn pi_text(&self) -> String {
        if self.pi_half % 2 == 0 {
            format!("π^{}", self.pi_half / 2)
        } else {
            format!("π^({}/2)", self.pi_half)
        }
    }

    pub fn rational_text(&self) -> String {
        if self.rational.den == "1" {
            self.rational.num.clone()
        } else {
            format!("{}/{}", self.rational.num, self.rational.den)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Mismatch,
    /// Informational; never fails a run.
    Report,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub verdict: Verdict,
    pub certificate: Option<String>,
}

impl Diagnostic {
    pub fn new(name: impl Into<String>, expected: impl Into<String>, actual: impl Into<String>, verdict: Verdict) -> Self {
        Self {
            name: name.into(),
            expected: expected.into(),
            actual: actual.into(),
            verdict,
            certificate: None,
        }
    }

    pub fn compare(name: impl Into<String>, expected: String, actual: String) -> Self {
        let verdict = if expected == actual { Verdict::Pass } else { Verdict::Mismatch };
        Self::new(name, expected, actual, verdict)
    }

    pub fn with_certificate(mut self, c: impl Into<String>) -> Self {
        self.certificate = Some(c.into());
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tables: BTreeMap<String, Vec<RowRecord>>,
    pub diagnostics: Vec<Diagnostic>,
    pub metadata: BTreeMap<String, String>,
}

impl ReportDocument {
    pub fn failures(&self) -> usize {
        self.diagnostics.iter().filter(|d| d.verdict == Verdict::Mismatch).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        if !self.tables.is_empty() {
            out.push_str("table,s,entry,num,den,factored,pi_half,numeric,flags\n");
            for (name, rows) in &self.tables {
                for r in rows {
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{},{},{},{},{}",
                        name,
                        r.s,
                        csv_field(&r.entry),
                        r.rational.num,
                        r.rational.den,
                        csv_field(&r.factored_text),
                        r.pi_half,
                        r.numeric.map(|x| format!("{x:e}")).unwrap_or_default(),
                        csv_field(&r.flags.join(" ")),
                    );
                }
            }
        }
        if !self.diagnostics.is_empty() {
            out.push_str("diagnostic,expected,actual,verdict,certificate\n");
            for d in &self.diagnostics {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    csv_field(&d.name),
                    csv_field(&d.expected),
                    csv_field(&d.actual),
                    verdict_text(d.verdict),
                    csv_field(d.certificate.as_deref().unwrap_or("")),
                );
            }
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (name, rows) in &self.tables {
            let _ = writeln!(out, "== {name} ==");
            let width = rows.iter().map(|r| r.factored_text.chars().count()).max().unwrap_or(0);
            for r in rows {
                let num = r.numeric.map(|x| format!("{x:.6}")).unwrap_or_default();
                let pad = width - r.factored_text.chars().count();
                let _ = writeln!(
                    out,
                    "{:>3}  {:<6} {}{}  {:<9} {}{}",
                    r.s,
                    r.entry,
                    r.factored_text,
                    " ".repeat(pad),
                    r.pi_text(),
                    num,
                    if r.flags.is_empty() {
                        String::new()
                    } else {
                        format!("  [{}]", r.flags.join(", "))
                    }
                );
            }
        }
        if !self.diagnostics.is_empty() {
            let _ = writeln!(out, "== diagnostics ==");
            for d in &self.diagnostics {
                let _ = writeln!(
                    out,
                    "{:<8} {}: expected {}, got {}{}",
                    verdict_text(d.verdict),
                    d.name,
                    d.expected,
                    d.actual,
                    d.certificate
                        .as_ref()
                        .map(|c| format!(" ({c})"))
                        .unwrap_or_default()
                );
            }
            let _ = writeln!(
                out,
                "{} checks, {} mismatches",
                self.diagnostics.len(),
                self.failures()
            );
        }
        out
    }
}

fn verdict_text(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Mismatch => "MISMATCH",
        Verdict::Report => "report",
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
