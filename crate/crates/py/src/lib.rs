//! Python bindings. Scalars cross the boundary as strings (`"3/4"`, `"1+2i"`);
//! any Python object is accepted where a scalar is expected and passed through `str()`.

use std::collections::BTreeMap;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use hom3lie::bialgebra::{assemble_coboundary, LocalCocycleBialgebra};
use hom3lie::document::{cobracket_coefficients, AlgebraDocument, RMatrixDocument, ReportDocument};
use hom3lie::homlie::{
    hom_jacobi_residual, multiplicative_residual, skew_residual, twist, TriBracket,
};
use hom3lie::report::ResidualJson;
use hom3lie::solver::{solve as run_solver, SolverConfig};
use hom3lie::verify::{verify_ex31, verify_ex32};
use hom3lie::ybe::{self, RMatrix as CoreRMatrix};
use hom3lie::{Error, HomTriAlgebra, Matrix, Scalar, TwistMap, VerificationReport};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Parse(_) | Error::Dimension(_) | Error::Slot { .. } | Error::Residual { .. } => {
            PyValueError::new_err(e.to_string())
        }
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn scalar(obj: &Bound<'_, PyAny>, complex: bool) -> PyResult<Scalar> {
    let s = obj.str()?.to_string();
    Scalar::parse(&s, complex).map_err(py_err)
}

fn matrix(rows: &[Vec<Bound<'_, PyAny>>], complex: bool) -> PyResult<Matrix> {
    let parsed = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| scalar(x, complex))
                .collect::<PyResult<Vec<_>>>()
        })
        .collect::<PyResult<Vec<_>>>()?;
    Matrix::from_rows(parsed).map_err(py_err)
}

fn strings(m: &Matrix) -> Vec<Vec<String>> {
    m.to_rows()
        .into_iter()
        .map(|row| row.iter().map(Scalar::to_string).collect())
        .collect()
}

/// A check report: a list of `(name, residual, passed)` and the overall verdict.
#[pyclass(frozen, module = "hom3lie_py")]
struct Report {
    command: String,
    inner: VerificationReport,
}

impl Report {
    fn new(command: &str, inner: VerificationReport) -> Self {
        Report {
            command: command.to_string(),
            inner,
        }
    }
}

#[pymethods]
impl Report {
    #[getter]
    fn overall(&self) -> bool {
        self.inner.overall()
    }

    /// Exact residuals are rational strings; the solver's float residual is
    /// formatted in scientific notation.
    #[getter]
    fn checks(&self) -> Vec<(String, String, bool)> {
        self.inner
            .to_json_checks()
            .into_iter()
            .map(|c| {
                let residual = match c.residual {
                    ResidualJson::Exact(s) => s,
                    ResidualJson::Float(x) => format!("{x:e}"),
                };
                (c.name, residual, c.pass)
            })
            .collect()
    }

    fn failures(&self) -> Vec<String> {
        self.inner.failures().map(|e| e.name.clone()).collect()
    }

    fn to_json(&self) -> String {
        ReportDocument::new(env!("CARGO_PKG_VERSION"), &self.command, &self.inner).to_json()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

/// A 3-Hom-Lie algebra given by structure constants and a twist map.
#[pyclass(frozen, module = "hom3lie_py")]
struct Algebra {
    inner: HomTriAlgebra,
}

#[pymethods]
impl Algebra {
    /// `bracket` lists `(i, j, k, value)` with 1-based indices and `value`
    /// the coordinates of `[e_i, e_j, e_k]`; `alpha` defaults to the identity.
    #[new]
    #[pyo3(signature = (dim, bracket, alpha = None, complex = false))]
    fn new(
        dim: usize,
        bracket: Vec<(usize, usize, usize, Vec<Bound<'_, PyAny>>)>,
        alpha: Option<Vec<Vec<Bound<'_, PyAny>>>>,
        complex: bool,
    ) -> PyResult<Self> {
        let mut gens = Vec::with_capacity(bracket.len());
        for (i, j, k, value) in &bracket {
            if [*i, *j, *k].iter().any(|&x| x == 0 || x > dim) {
                return Err(PyValueError::new_err(format!(
                    "bracket index ({i}, {j}, {k}) is outside 1..={dim}"
                )));
            }
            let v = value
                .iter()
                .map(|x| scalar(x, complex))
                .collect::<PyResult<Vec<_>>>()?;
            gens.push((i - 1, j - 1, k - 1, v));
        }
        let b = TriBracket::from_generators(dim, &gens).map_err(py_err)?;
        let a = match alpha {
            Some(rows) => TwistMap::new(matrix(&rows, complex)?).map_err(py_err)?,
            None => TwistMap::identity(dim),
        };
        Ok(Algebra {
            inner: HomTriAlgebra::new_unchecked(b, a).map_err(py_err)?,
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let doc = AlgebraDocument::from_json(text).map_err(py_err)?;
        Ok(Algebra {
            inner: doc.to_algebra().map_err(py_err)?,
        })
    }

    fn to_json(&self) -> String {
        AlgebraDocument::from_algebra(&self.inner).to_json()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn alpha(&self) -> Vec<Vec<String>> {
        strings(self.inner.alpha_matrix())
    }

    /// `[e_i, e_j, e_k]` for 1-based indices.
    fn bracket(&self, i: usize, j: usize, k: usize) -> PyResult<Vec<String>> {
        let n = self.inner.dim();
        if [i, j, k].iter().any(|&x| x == 0 || x > n) {
            return Err(PyValueError::new_err(format!("index outside 1..={n}")));
        }
        Ok(self
            .inner
            .bracket()
            .constant(i - 1, j - 1, k - 1)
            .iter()
            .map(Scalar::to_string)
            .collect())
    }

    /// Skew-symmetry, Hom-Jacobi identity and multiplicativity.
    fn check(&self) -> Report {
        let report = [
            skew_residual(self.inner.bracket()),
            hom_jacobi_residual(&self.inner),
            multiplicative_residual(&self.inner),
        ]
        .into_iter()
        .collect();
        Report::new("check-algebra", report)
    }

    /// The twist `(L, α∘[·,·,·], α)` of this algebra's bracket; raises
    /// `ValueError` unless `alpha` is a morphism of a 3-Lie bracket.
    #[pyo3(signature = (alpha, complex = false))]
    fn twist(&self, alpha: Vec<Vec<Bound<'_, PyAny>>>, complex: bool) -> PyResult<Algebra> {
        let a = TwistMap::new(matrix(&alpha, complex)?).map_err(py_err)?;
        Ok(Algebra {
            inner: twist(self.inner.bracket(), &a).map_err(py_err)?,
        })
    }

    fn __repr__(&self) -> String {
        format!("Algebra(dim={})", self.inner.dim())
    }
}

/// An element `r = Σ R[a][b] e_a⊗e_b` of `L⊗L`.
#[pyclass(frozen, module = "hom3lie_py")]
struct RMatrix {
    inner: CoreRMatrix,
}

#[pymethods]
impl RMatrix {
    #[new]
    #[pyo3(signature = (entries, complex = false))]
    fn new(entries: Vec<Vec<Bound<'_, PyAny>>>, complex: bool) -> PyResult<Self> {
        Ok(RMatrix {
            inner: CoreRMatrix::new(matrix(&entries, complex)?).map_err(py_err)?,
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let doc = RMatrixDocument::from_json(text).map_err(py_err)?;
        Ok(RMatrix {
            inner: doc.to_rmatrix().map_err(py_err)?,
        })
    }

    fn to_json(&self) -> String {
        serde_json_pretty(&RMatrixDocument::from_rmatrix(&self.inner))
    }

    #[getter]
    fn entries(&self) -> Vec<Vec<String>> {
        strings(self.inner.matrix())
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn __eq__(&self, other: &RMatrix) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("RMatrix({:?})", self.entries())
    }
}

fn serde_json_pretty(doc: &RMatrixDocument) -> String {
    serde_json::to_string_pretty(doc).expect("document serializes")
}

/// The coboundary bialgebra of an r-matrix and its report.
#[pyclass(frozen, module = "hom3lie_py")]
struct Bialgebra {
    inner: LocalCocycleBialgebra,
}

#[pymethods]
impl Bialgebra {
    #[getter]
    fn report(&self) -> Report {
        Report::new("bialgebra", self.inner.report.clone())
    }

    /// `[Δ(e_1), …, Δ(e_n)]`, each as `n³` coefficients in row-major order.
    #[getter]
    fn delta(&self) -> Vec<Vec<String>> {
        cobracket_coefficients(self.inner.delta())
    }

    /// `Δ_1`, `Δ_2`, `Δ_3` in the same layout as `delta`.
    #[getter]
    fn components(&self) -> Vec<Vec<Vec<String>>> {
        self.inner
            .components
            .iter()
            .map(cobracket_coefficients)
            .collect()
    }
}

fn same_dim(alg: &Algebra, r: &RMatrix) -> PyResult<()> {
    if alg.inner.dim() != r.inner.dim() {
        return Err(PyValueError::new_err(format!(
            "r-matrix has dim {}, algebra has dim {}",
            r.inner.dim(),
            alg.inner.dim()
        )));
    }
    Ok(())
}

/// Skew-symmetry, α-invariance and the CHYBE residual of `r`.
#[pyfunction]
fn chybe(alg: &Algebra, r: &RMatrix) -> PyResult<Report> {
    same_dim(alg, r)?;
    let mut report = VerificationReport::new();
    report.push(ybe::skew_residual(&r.inner));
    report.push(ybe::alpha_invariance_residual(&r.inner, alg.inner.alpha()).map_err(py_err)?);
    report.push(ybe::chybe_residual(&r.inner, &alg.inner).map_err(py_err)?);
    report.push(ybe::ad_condition_residual(&r.inner, &alg.inner).map_err(py_err)?);
    Ok(Report::new("chybe", report))
}

/// The CHYBE bracket of `r` as its `n⁴` coefficients.
#[pyfunction]
fn chybe_bracket(alg: &Algebra, r: &RMatrix) -> PyResult<Vec<String>> {
    same_dim(alg, r)?;
    let t = ybe::chybe_bracket(&r.inner, &alg.inner).map_err(py_err)?;
    Ok(t.data().iter().map(Scalar::to_string).collect())
}

#[pyfunction]
fn bialgebra(alg: &Algebra, r: &RMatrix) -> PyResult<Bialgebra> {
    same_dim(alg, r)?;
    Ok(Bialgebra {
        inner: assemble_coboundary(&alg.inner, &r.inner).map_err(py_err)?,
    })
}

/// `(α^{⊗2})^n(r)`.
#[pyfunction]
fn twisted_r(alg: &Algebra, r: &RMatrix, n: u32) -> PyResult<RMatrix> {
    same_dim(alg, r)?;
    Ok(RMatrix {
        inner: ybe::twisted_r(&r.inner, alg.inner.alpha(), n).map_err(py_err)?,
    })
}

/// Searches the α-invariant skew subspace; returns the report, the subspace
/// basis and the exactly verified solutions.
#[pyfunction]
#[pyo3(signature = (alg, restarts = 32, seed = 0, tol = 1e-12, max_iters = 5000, max_denominator = 100))]
fn solve(
    alg: &Algebra,
    restarts: usize,
    seed: u64,
    tol: f64,
    max_iters: usize,
    max_denominator: u64,
) -> PyResult<(Report, Vec<RMatrix>, Vec<RMatrix>)> {
    let config = SolverConfig {
        restarts,
        seed,
        tol,
        max_iters,
        max_denominator,
        ..SolverConfig::default()
    };
    let out = run_solver(&alg.inner, &config).map_err(py_err)?;
    let wrap = |rs: &[CoreRMatrix]| rs.iter().map(|r| RMatrix { inner: r.clone() }).collect();
    Ok((
        Report::new("solve", out.report),
        wrap(out.param.basis()),
        wrap(&out.solutions),
    ))
}

/// Re-derives the claims of a bundled example (`"ex31"` or `"ex32"`).
#[pyfunction]
#[pyo3(signature = (which, params = None))]
fn verify_example(
    which: &str,
    params: Option<BTreeMap<String, Bound<'_, PyAny>>>,
) -> PyResult<Report> {
    let given = params
        .unwrap_or_default()
        .into_iter()
        .map(|(k, v)| Ok((k, scalar(&v, true)?)))
        .collect::<PyResult<BTreeMap<_, _>>>()?;
    let ex = match which {
        "ex31" => verify_ex31(&given),
        "ex32" => verify_ex32(&given),
        other => return Err(PyValueError::new_err(format!("unknown example {other:?}"))),
    }
    .map_err(py_err)?;
    Ok(Report::new(&format!("verify-example {which}"), ex.report))
}

#[pymodule]
fn hom3lie_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Algebra>()?;
    m.add_class::<RMatrix>()?;
    m.add_class::<Report>()?;
    m.add_class::<Bialgebra>()?;
    m.add_function(wrap_pyfunction!(chybe, m)?)?;
    m.add_function(wrap_pyfunction!(chybe_bracket, m)?)?;
    m.add_function(wrap_pyfunction!(bialgebra, m)?)?;
    m.add_function(wrap_pyfunction!(twisted_r, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(verify_example, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
