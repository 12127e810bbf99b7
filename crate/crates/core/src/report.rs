//! Named residual checks.

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub enum Residual {
    /// Exact magnitude; the check passes iff it is zero.
    Exact(BigRational),
    /// Floating-point residual from the numeric search, compared against a tolerance.
    Float(f64),
}

impl Residual {
    pub fn is_zero(&self) -> bool {
        match self {
            Residual::Exact(r) => r.is_zero(),
            Residual::Float(f) => *f == 0.0,
        }
    }
}

impl fmt::Display for Residual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Residual::Exact(r) => write!(f, "{}", Scalar::Real(r.clone())),
            Residual::Float(x) => write!(f, "{x:e}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckEntry {
    pub name: String,
    pub residual: Residual,
    pub pass: bool,
}

impl CheckEntry {
    /// An exact check; passes iff the residual is exactly zero.
    pub fn exact(name: impl Into<String>, residual: BigRational) -> Self {
        let pass = residual.is_zero();
        CheckEntry {
            name: name.into(),
            residual: Residual::Exact(residual),
            pass,
        }
    }

    pub fn float(name: impl Into<String>, residual: f64, tol: f64) -> Self {
        CheckEntry {
            name: name.into(),
            residual: Residual::Float(residual),
            pass: residual.is_finite() && residual < tol,
        }
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(&self.residual, Residual::Exact(r) if r.is_zero())
    }
}

/// Ordered list of checks; the report passes iff every entry passes.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct VerificationReport {
    entries: Vec<CheckEntry>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, entry: CheckEntry) {
        self.entries.push(entry);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.entries.extend(other.entries);
    }

    /// Appends `other` with every name prefixed by `prefix/`.
    pub fn extend_prefixed(&mut self, prefix: &str, other: VerificationReport) {
        self.entries.extend(other.entries.into_iter().map(|mut e| {
            e.name = format!("{prefix}/{}", e.name);
            e
        }));
    }

    pub fn entries(&self) -> &[CheckEntry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn overall(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| !e.pass)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_json_checks(&self) -> Vec<CheckJson> {
        self.entries.iter().map(CheckJson::from).collect()
    }
}

impl FromIterator<CheckEntry> for VerificationReport {
    fn from_iter<I: IntoIterator<Item = CheckEntry>>(iter: I) -> Self {
        VerificationReport {
            entries: iter.into_iter().collect(),
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .entries
            .iter()
            .map(|e| e.name.len())
            .max()
            .unwrap_or(5)
            .max(5);
        writeln!(f, "{:<width$}  {:<6}  residual", "check", "status")?;
        for e in &self.entries {
            let status = if e.pass { "pass" } else { "FAIL" };
            writeln!(f, "{:<width$}  {:<6}  {}", e.name, status, e.residual)?;
        }
        write!(
            f,
            "overall: {}",
            if self.overall() { "pass" } else { "FAIL" }
        )
    }
}

/// JSON residual: exact residuals are rational strings, float residuals numbers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ResidualJson {
    Exact(String),
    Float(f64),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckJson {
    pub name: String,
    pub residual: ResidualJson,
    pub pass: bool,
}

impl From<&CheckEntry> for CheckJson {
    fn from(e: &CheckEntry) -> Self {
        CheckJson {
            name: e.name.clone(),
            residual: match &e.residual {
                Residual::Exact(r) => ResidualJson::Exact(Scalar::Real(r.clone()).to_string()),
                Residual::Float(x) => ResidualJson::Float(*x),
            },
            pass: e.pass,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn overall_is_conjunction() {
        let mut r = VerificationReport::new();
        assert!(r.overall());
        r.push(CheckEntry::exact("a", BigRational::zero()));
        assert!(r.overall());
        r.push(CheckEntry::exact(
            "b",
            BigRational::from_integer(BigInt::from(2)),
        ));
        assert!(!r.overall());
        assert_eq!(r.failures().count(), 1);
        assert_eq!(r.get("b").unwrap().residual.to_string(), "2");
    }

    #[test]
    fn float_checks_use_tolerance() {
        assert!(CheckEntry::float("x", 1e-14, 1e-12).pass);
        assert!(!CheckEntry::float("x", 1e-3, 1e-12).pass);
        assert!(!CheckEntry::float("x", f64::NAN, 1e-12).pass);
    }
}
