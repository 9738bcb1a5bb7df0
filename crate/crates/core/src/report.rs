//! Reports: exact JSON certificates and a plain-text rendering.
//!
//! Every rational is written as an exact `"p/q"` string. Decimal renderings
//! live under `approx` and are for display only.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::classify::{Certificate, IdealSource, Outcome};
use crate::error::Error;
use crate::univariate::IsolatingInterval;
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    #[serde(with = "crate::serde_rational")]
    pub lo: Rational,
    #[serde(with = "crate::serde_rational")]
    pub hi: Rational,
}

impl From<&IsolatingInterval> for Interval {
    fn from(iv: &IsolatingInterval) -> Self {
        Interval { lo: iv.lo.clone(), hi: iv.hi.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApproxInterval {
    pub lo: String,
    pub hi: String,
}

/// Ten-digit decimal renderings of the certificate's rationals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Approx {
    pub r: String,
    #[serde(rename = "R1")]
    pub r1: String,
    #[serde(rename = "R2")]
    pub r2: String,
    pub f_star: String,
    pub f_minus: Option<ApproxInterval>,
    pub f_plus: Option<ApproxInterval>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorInfo {
    pub name: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub file: Option<String>,
    pub exit_code: i32,
    pub label: Option<String>,
    #[serde(with = "crate::serde_rational::option")]
    pub r: Option<Rational>,
    #[serde(rename = "R1", with = "crate::serde_rational::option")]
    pub r1: Option<Rational>,
    #[serde(rename = "R2", with = "crate::serde_rational::option")]
    pub r2: Option<Rational>,
    pub n1: Option<usize>,
    pub n2: Option<usize>,
    #[serde(with = "crate::serde_rational::option")]
    pub f_star: Option<Rational>,
    pub f_minus: Option<Interval>,
    pub f_plus: Option<Interval>,
    /// Rows of the matrix `A` in `x ↦ A·x`; `null` for the identity.
    pub coordinate_change: Option<Vec<Vec<String>>>,
    pub seed: u64,
    pub retries: Option<usize>,
    pub ideal_source: Option<IdealSource>,
    pub warnings: Vec<String>,
    /// Seconds per pipeline stage; only filled in when tracing, so that
    /// reports stay byte-identical across runs otherwise.
    pub timings: Option<BTreeMap<String, f64>>,
    pub approx: Option<Approx>,
    pub verified: Option<bool>,
    pub error: Option<ErrorInfo>,
}

/// `q` rounded to `digits` decimal places.
pub fn decimal(q: &Rational, digits: usize) -> String {
    let scale = BigInt::from(10).pow(digits as u32);
    let scaled = q.numer() * &scale;
    let (mut quot, rem) = scaled.abs().div_rem(q.denom());
    if &rem * BigInt::from(2) >= *q.denom() {
        quot += 1;
    }
    let mut digits_str = quot.to_string();
    if digits_str.len() <= digits {
        digits_str = format!("{}{}", "0".repeat(digits + 1 - digits_str.len()), digits_str);
    }
    let (int, frac) = digits_str.split_at(digits_str.len() - digits);
    let sign = if q.is_negative() && !quot.is_zero() { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

fn approx_iv(iv: &Option<IsolatingInterval>) -> Option<ApproxInterval> {
    iv.as_ref().map(|i| ApproxInterval { lo: decimal(&i.lo, 10), hi: decimal(&i.hi, 10) })
}

impl Report {
    fn empty(file: Option<String>, seed: u64) -> Report {
        Report {
            file,
            exit_code: 0,
            label: None,
            r: None,
            r1: None,
            r2: None,
            n1: None,
            n2: None,
            f_star: None,
            f_minus: None,
            f_plus: None,
            coordinate_change: None,
            seed,
            retries: None,
            ideal_source: None,
            warnings: Vec::new(),
            timings: None,
            approx: None,
            verified: None,
            error: None,
        }
    }

    pub fn from_certificate(file: Option<String>, label: &str, c: &Certificate) -> Report {
        let mut rep = Report::empty(file, c.seed);
        rep.label = Some(label.to_string());
        rep.r = Some(c.r.clone());
        rep.r1 = Some(c.r1.clone());
        rep.r2 = Some(c.r2.clone());
        rep.n1 = Some(c.n1);
        rep.n2 = Some(c.n2);
        rep.f_star = Some(c.f_star.clone());
        rep.f_minus = c.f_minus.as_ref().map(Interval::from);
        rep.f_plus = c.f_plus.as_ref().map(Interval::from);
        rep.coordinate_change = (!c.coordinate_change.is_identity()).then(|| {
            c.coordinate_change.matrix().to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
        });
        rep.retries = Some(c.retries);
        rep.ideal_source = Some(c.source);
        rep.warnings = c.warnings.clone();
        rep.approx = Some(Approx {
            r: decimal(&c.r, 10),
            r1: decimal(&c.r1, 10),
            r2: decimal(&c.r2, 10),
            f_star: decimal(&c.f_star, 10),
            f_minus: approx_iv(&c.f_minus),
            f_plus: approx_iv(&c.f_plus),
        });
        rep
    }

    pub fn from_outcome(file: Option<String>, o: &Outcome, with_timings: bool) -> Report {
        let mut rep = Report::from_certificate(file, o.classification.label(), &o.certificate);
        if with_timings {
            rep.timings = Some(o.stats.timings.iter().cloned().collect());
        }
        rep
    }

    pub fn from_error(file: Option<String>, seed: u64, e: &Error) -> Report {
        let mut rep = Report::empty(file, seed);
        rep.exit_code = exit_code(e);
        rep.error = Some(ErrorInfo { name: e.name().to_string(), message: e.to_string() });
        rep
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if let Some(f) = &self.file {
            let _ = writeln!(s, "problem: {f}");
        }
        if let Some(e) = &self.error {
            let _ = writeln!(s, "error: {} ({})", e.name, e.message);
            return s;
        }
        let approx = self.approx.as_ref();
        let show = |q: &Option<Rational>, a: Option<&String>| match (q, a) {
            (Some(q), Some(a)) => format!("{q} (≈ {a})"),
            (Some(q), None) => q.to_string(),
            _ => "-".into(),
        };
        let _ = writeln!(s, "label: {}", self.label.as_deref().unwrap_or("-"));
        let _ = writeln!(s, "f(x*) = {}", show(&self.f_star, approx.map(|a| &a.f_star)));
        let _ = writeln!(s, "r = {}", show(&self.r, approx.map(|a| &a.r)));
        let _ = writeln!(s, "R1 = {}", show(&self.r1, approx.map(|a| &a.r1)));
        let _ = writeln!(s, "R2 = {}", show(&self.r2, approx.map(|a| &a.r2)));
        let _ = writeln!(s, "n1 = {}, n2 = {}", self.n1.unwrap_or(0), self.n2.unwrap_or(0));
        for (name, iv, ap) in [
            ("f_r^-", &self.f_minus, approx.and_then(|a| a.f_minus.as_ref())),
            ("f_r^+", &self.f_plus, approx.and_then(|a| a.f_plus.as_ref())),
        ] {
            match (iv, ap) {
                (Some(iv), Some(ap)) => {
                    let _ = writeln!(s, "{name} in [{}, {}] (≈ [{}, {}])", iv.lo, iv.hi, ap.lo, ap.hi);
                }
                _ => {
                    let _ = writeln!(s, "{name}: empty");
                }
            }
        }
        if let Some(rows) = &self.coordinate_change {
            let _ = writeln!(s, "coordinate change: {rows:?}");
        }
        if let Some(v) = self.verified {
            let _ = writeln!(s, "verified: {v}");
        }
        for w in &self.warnings {
            let _ = writeln!(s, "warning: {w}");
        }
        if let Some(t) = &self.timings {
            for (k, v) in t {
                let _ = writeln!(s, "time {k}: {v:.3}s");
            }
        }
        s
    }
}

/// 1 for input errors, 2 for everything raised by the pipeline.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_input_error() {
        1
    } else {
        2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn decimals() {
        assert_eq!(decimal(&q(1, 3), 10), "0.3333333333");
        assert_eq!(decimal(&q(-2, 3), 4), "-0.6667");
        assert_eq!(decimal(&q(5, 1), 2), "5.00");
        assert_eq!(decimal(&q(-1, 1000), 2), "0.00");
        assert_eq!(decimal(&q(1234, 100), 0), "12");
    }
}
