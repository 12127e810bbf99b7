//! JSON documents for algebras, r-matrices, twist maps and reports.
//!
//! Scalars travel as strings (`"p/q"`, or `"a+bi"` when `complex` is set) so
//! values survive the file boundary exactly. Basis indices are 1-based.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::coalgebra::CoBracket;
use crate::error::{Error, Result};
use crate::homlie::{HomTriAlgebra, TriBracket, TwistMap};
use crate::matrix::Matrix;
use crate::report::{CheckJson, VerificationReport};
use crate::scalar::Scalar;
use crate::ybe::RMatrix;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub dim: usize,
    #[serde(default)]
    pub bracket: Vec<BracketEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub complex: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RMatrixDocument {
    pub dim: usize,
    pub entries: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub complex: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlphaDocument {
    pub matrix: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub complex: bool,
}

/// The machine-readable output of every command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool_version: String,
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub header: Option<BTreeMap<String, String>>,
    pub checks: Vec<CheckJson>,
    pub overall: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub payload: Option<serde_json::Value>,
}

impl ReportDocument {
    pub fn new(tool_version: &str, command: &str, report: &VerificationReport) -> Self {
        ReportDocument {
            tool_version: tool_version.to_string(),
            command: command.to_string(),
            header: None,
            checks: report.to_json_checks(),
            overall: report.overall(),
            payload: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn from_json<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

fn parse_scalar(s: &str, complex: bool, at: impl Fn() -> String) -> Result<Scalar> {
    Scalar::parse(s, complex).map_err(|e| Error::Parse(format!("{}: {e}", at())))
}

fn parse_matrix(rows: &[Vec<String>], complex: bool, field: &str) -> Result<Matrix> {
    let parsed = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, s)| parse_scalar(s, complex, || format!("{field}[{i}][{j}]")))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    if parsed.is_empty() {
        return Err(Error::Parse(format!("{field}: empty matrix")));
    }
    Matrix::from_rows(parsed).map_err(|e| Error::Parse(format!("{field}: {e}")))
}

fn format_matrix(m: &Matrix) -> Vec<Vec<String>> {
    m.to_rows()
        .into_iter()
        .map(|row| row.iter().map(Scalar::to_string).collect())
        .collect()
}

impl AlgebraDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        from_json(text, "algebra document")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn to_algebra(&self) -> Result<HomTriAlgebra> {
        let n = self.dim;
        if n == 0 {
            return Err(Error::Parse("dim must be at least 1".into()));
        }
        let mut gens = Vec::with_capacity(self.bracket.len());
        for (pos, e) in self.bracket.iter().enumerate() {
            for (name, idx) in [("i", e.i), ("j", e.j), ("k", e.k)] {
                if idx == 0 || idx > n {
                    return Err(Error::Parse(format!(
                        "bracket[{pos}].{name} = {idx} is outside 1..={n}"
                    )));
                }
            }
            if e.value.len() != n {
                return Err(Error::Parse(format!(
                    "bracket[{pos}].value has {} entries, expected {n}",
                    e.value.len()
                )));
            }
            let value = e
                .value
                .iter()
                .enumerate()
                .map(|(l, s)| {
                    parse_scalar(s, self.complex, || format!("bracket[{pos}].value[{l}]"))
                })
                .collect::<Result<Vec<_>>>()?;
            gens.push((e.i - 1, e.j - 1, e.k - 1, value));
        }
        let bracket = TriBracket::from_generators(n, &gens)
            .map_err(|e| Error::Parse(format!("bracket: {e}")))?;
        let alpha = match &self.alpha {
            None => TwistMap::identity(n),
            Some(rows) => {
                let m = parse_matrix(rows, self.complex, "alpha")?;
                if m.rows() != n || m.cols() != n {
                    return Err(Error::Parse(format!(
                        "alpha is {}x{}, expected {n}x{n}",
                        m.rows(),
                        m.cols()
                    )));
                }
                TwistMap::new(m)?
            }
        };
        HomTriAlgebra::new_unchecked(bracket, alpha)
    }

    /// Generators `i < j < k` with nonzero value, and α written out in full.
    pub fn from_algebra(alg: &HomTriAlgebra) -> Self {
        let bracket = alg
            .bracket()
            .generators()
            .into_iter()
            .map(|(i, j, k, v)| BracketEntry {
                i: i + 1,
                j: j + 1,
                k: k + 1,
                value: v.iter().map(Scalar::to_string).collect(),
            })
            .collect();
        AlgebraDocument {
            dim: alg.dim(),
            bracket,
            alpha: Some(format_matrix(alg.alpha_matrix())),
            complex: !alg.is_real(),
        }
    }
}

impl RMatrixDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        from_json(text, "r-matrix document")
    }

    pub fn to_rmatrix(&self) -> Result<RMatrix> {
        let m = parse_matrix(&self.entries, self.complex, "entries")?;
        if m.rows() != self.dim || m.cols() != self.dim {
            return Err(Error::Parse(format!(
                "entries is {}x{}, expected {}x{}",
                m.rows(),
                m.cols(),
                self.dim,
                self.dim
            )));
        }
        RMatrix::new(m)
    }

    pub fn from_rmatrix(r: &RMatrix) -> Self {
        RMatrixDocument {
            dim: r.dim(),
            entries: format_matrix(r.matrix()),
            complex: !r.matrix().is_real(),
        }
    }
}

impl AlphaDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        from_json(text, "alpha document")
    }

    pub fn to_twist_map(&self) -> Result<TwistMap> {
        let m = parse_matrix(&self.matrix, self.complex, "matrix")?;
        if !m.is_square() {
            return Err(Error::Parse(format!(
                "matrix is {}x{}, expected square",
                m.rows(),
                m.cols()
            )));
        }
        TwistMap::new(m)
    }

    pub fn from_twist_map(alpha: &TwistMap) -> Self {
        AlphaDocument {
            matrix: format_matrix(alpha.matrix()),
            complex: !alpha.matrix().is_real(),
        }
    }
}

/// `[Δ(e_1), …, Δ(e_n)]`, each as its `n³` coefficients in row-major order.
pub fn cobracket_coefficients(d: &CoBracket) -> Vec<Vec<String>> {
    d.images()
        .iter()
        .map(|t| t.data().iter().map(Scalar::to_string).collect())
        .collect()
}

/// Parses a flat `name → scalar` parameter map.
pub fn parse_params(text: &str) -> Result<BTreeMap<String, Scalar>> {
    let raw: BTreeMap<String, String> = from_json(text, "parameter document")?;
    raw.into_iter()
        .map(|(k, v)| {
            let s = parse_scalar(&v, true, || k.clone())?;
            Ok((k, s))
        })
        .collect()
}
