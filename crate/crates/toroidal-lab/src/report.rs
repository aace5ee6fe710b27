//! Verification reports and their JSON form.
//!
//! Everything except `timing_ms` is part of the comparable body: reruns with
//! the same inputs serialize byte-identically once timing is stripped.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

/// Witnesses retained per report; the total count is kept separately.
pub const WITNESS_CAP: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Partial,
    Inconclusive,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Partial => "partial",
            Status::Inconclusive => "inconclusive",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Witness {
    pub inputs: Vec<String>,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub family: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub window: Option<i64>,
    pub status: Status,
    pub witnesses: Vec<Witness>,
    pub failures: u64,
    /// counters such as the number of triples examined
    pub stats: BTreeMap<String, u64>,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timing_ms: Option<u64>,
}

impl VerificationReport {
    pub fn new(check: &str, family: &str, n: usize, window: Option<i64>) -> VerificationReport {
        VerificationReport {
            check: check.to_string(),
            family: family.to_string(),
            n,
            window,
            status: Status::Pass,
            witnesses: Vec::new(),
            failures: 0,
            stats: BTreeMap::new(),
            notes: Vec::new(),
            timing_ms: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Records a failure; witnesses beyond the cap are only counted.
    pub fn fail(&mut self, inputs: Vec<String>, residual: String) {
        self.status = Status::Fail;
        self.failures += 1;
        if self.witnesses.len() < WITNESS_CAP {
            self.witnesses.push(Witness { inputs, residual });
        }
    }

    pub fn count(&mut self, key: &str, by: u64) {
        *self.stats.entry(key.to_string()).or_insert(0) += by;
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// Downgrades a passing report; failures are never masked.
    pub fn downgrade(&mut self, status: Status) {
        if self.status == Status::Pass {
            self.status = status;
        }
    }

    /// Sorts witnesses so concurrent producers aggregate deterministically.
    pub fn finish(mut self) -> VerificationReport {
        self.witnesses.sort();
        self
    }

    pub fn absorb(&mut self, other: VerificationReport) {
        for w in other.witnesses {
            if self.witnesses.len() < WITNESS_CAP {
                self.witnesses.push(w);
            }
        }
        self.failures += other.failures;
        for (k, v) in other.stats {
            self.count(&k, v);
        }
        self.notes.extend(other.notes);
        self.status = self.status.max(other.status);
        self.witnesses.sort();
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let window = self.window.map(|r| format!(" R={r}")).unwrap_or_default();
        write!(f, "{:<13} {:<9} N={}{}: {}", self.check, self.family, self.n, window, self.status)?;
        if self.failures > 0 {
            write!(f, " ({} failures)", self.failures)?;
        }
        for w in &self.witnesses {
            write!(f, "\n    [{}] -> {}", w.inputs.join(", "), w.residual)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ReportBundle {
    pub config: BTreeMap<String, String>,
    pub reports: Vec<VerificationReport>,
}

impl ReportBundle {
    pub fn any_failed(&self) -> bool {
        self.reports.iter().any(|r| r.status == Status::Fail)
    }

    pub fn all_passed(&self) -> bool {
        self.reports.iter().all(|r| r.status == Status::Pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// The JSON body with timing removed.
    pub fn comparable_body(&self) -> String {
        let mut v = serde_json::to_value(self).expect("reports serialize");
        strip_timing(&mut v);
        serde_json::to_string_pretty(&v).expect("reports serialize")
    }
}

fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("timing_ms");
            for child in map.values_mut() {
                strip_timing(child);
            }
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

fn diff_values(path: &str, a: &Value, b: &Value, out: &mut Vec<String>) {
    match (a, b) {
        (Value::Object(ma), Value::Object(mb)) => {
            let mut keys: Vec<&String> = ma.keys().chain(mb.keys()).collect();
            keys.sort();
            keys.dedup();
            for k in keys {
                let p = format!("{path}.{k}");
                match (ma.get(k), mb.get(k)) {
                    (Some(x), Some(y)) => diff_values(&p, x, y, out),
                    (Some(x), None) => out.push(format!("- {p}: {x}")),
                    (None, Some(y)) => out.push(format!("+ {p}: {y}")),
                    (None, None) => {}
                }
            }
        }
        (Value::Array(xa), Value::Array(xb)) => {
            for i in 0..xa.len().max(xb.len()) {
                let p = format!("{path}[{i}]");
                match (xa.get(i), xb.get(i)) {
                    (Some(x), Some(y)) => diff_values(&p, x, y, out),
                    (Some(x), None) => out.push(format!("- {p}: {x}")),
                    (None, Some(y)) => out.push(format!("+ {p}: {y}")),
                    (None, None) => {}
                }
            }
        }
        _ => {
            if a != b {
                out.push(format!("~ {path}: {a} -> {b}"));
            }
        }
    }
}

/// Structural diff of two serialized reports, ignoring timing. An empty
/// result means the comparable bodies agree.
pub fn report_diff(a: &str, b: &str) -> Result<Vec<String>> {
    let parse = |s: &str| -> Result<Value> {
        let mut v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(format!("malformed report: {e}")))?;
        if !v.is_object() {
            return Err(Error::Parse("malformed report: top level is not an object".into()));
        }
        strip_timing(&mut v);
        Ok(v)
    };
    let (va, vb) = (parse(a)?, parse(b)?);
    let mut out = Vec::new();
    diff_values("$", &va, &vb, &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(radius: i64) -> ReportBundle {
        let mut r = VerificationReport::new("jacobi", "tauH", 2, Some(radius));
        r.count("triples", 10);
        r.timing_ms = Some(radius as u64 * 7);
        ReportBundle { config: BTreeMap::new(), reports: vec![r] }
    }

    #[test]
    fn identical_bodies_have_empty_diff() {
        let mut a = sample(2);
        let b = sample(2);
        a.reports[0].timing_ms = Some(999);
        assert!(report_diff(&a.to_json(), &b.to_json()).unwrap().is_empty());
        assert_eq!(a.comparable_body(), b.comparable_body());
    }

    #[test]
    fn differing_radius_shows_up() {
        let d = report_diff(&sample(1).to_json(), &sample(2).to_json()).unwrap();
        assert_eq!(d, vec!["~ $.reports[0].window: 1 -> 2".to_string()]);
    }

    #[test]
    fn malformed_input_is_an_error() {
        assert!(report_diff("{", "{}").is_err());
        assert!(report_diff("[1]", "{}").is_err());
    }

    #[test]
    fn failures_are_capped_but_counted() {
        let mut r = VerificationReport::new("x", "y", 1, None);
        for i in 0..40 {
            r.fail(vec![i.to_string()], "1".into());
        }
        assert_eq!(r.failures, 40);
        assert_eq!(r.witnesses.len(), WITNESS_CAP);
        r.downgrade(Status::Partial);
        assert_eq!(r.status, Status::Fail);
    }
}
