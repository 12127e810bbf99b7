//! Search for skew, α-invariant solutions of the CHYBE.
//!
//! Exact parametrization, float minimization of the cubic residual system,
//! rationalization, then exact verification. Floating point only proposes
//! candidates; acceptance always goes through [`ybe::chybe_bracket`].

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::homlie::{morphism_residual, HomTriAlgebra, TriBracket, TwistMap};
use crate::matrix::Matrix;
use crate::report::{CheckEntry, VerificationReport};
use crate::scalar::Scalar;
use crate::tensor::Tensor;
use crate::ybe::{self, RMatrix};

/// A basis of skew r-matrices, optionally restricted to `α^{⊗2}(r) = r`.
#[derive(Clone, Debug, PartialEq)]
pub struct SkewParametrization {
    dim: usize,
    basis: Vec<RMatrix>,
    alpha_restricted: bool,
}

impl SkewParametrization {
    /// All skew r-matrices, with basis `e_a⊗e_b − e_b⊗e_a` for `a < b`.
    pub fn full(n: usize) -> Self {
        SkewParametrization {
            dim: n,
            basis: skew_basis(n),
            alpha_restricted: false,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of parameters.
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[RMatrix] {
        &self.basis
    }

    pub fn is_alpha_restricted(&self) -> bool {
        self.alpha_restricted
    }

    pub fn assemble(&self, params: &[Scalar]) -> Result<RMatrix> {
        if params.len() != self.basis.len() {
            return Err(Error::Dimension(format!(
                "{} parameters for a {}-dimensional subspace",
                params.len(),
                self.basis.len()
            )));
        }
        let mut m = Matrix::zeros(self.dim, self.dim);
        for (b, t) in self.basis.iter().zip(params) {
            if !t.is_zero() {
                m = &m + &b.matrix().scale(t);
            }
        }
        RMatrix::new(m)
    }
}

fn skew_basis(n: usize) -> Vec<RMatrix> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            out.push(RMatrix::skew_from(n, &[(a, b, Scalar::one())]));
        }
    }
    out
}

/// Exact basis of `{r skew : α^{⊗2}(r) = r}`.
pub fn invariant_skew_subspace(alpha: &TwistMap) -> SkewParametrization {
    let n = alpha.dim();
    let skew = skew_basis(n);
    let upper: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    let a = alpha.matrix();
    let at = a.transpose();
    let columns: Vec<Vec<Scalar>> = skew
        .iter()
        .map(|b| {
            let moved = &(&(a * b.matrix()) * &at) - b.matrix();
            upper.iter().map(|&(i, j)| moved[(i, j)].clone()).collect()
        })
        .collect();
    let basis = if skew.is_empty() {
        Vec::new()
    } else {
        let m = Matrix::from_columns(&columns).expect("equal column lengths");
        m.nullspace()
            .into_iter()
            .map(|c| {
                let mut r = Matrix::zeros(n, n);
                for (k, t) in c.iter().enumerate() {
                    if !t.is_zero() {
                        r = &r + &skew[k].matrix().scale(t);
                    }
                }
                RMatrix::new(r).expect("square")
            })
            .collect()
    };
    SkewParametrization {
        dim: n,
        basis,
        alpha_restricted: true,
    }
}

/// A cubic polynomial: sorted variable triples with coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Cubic {
    pub terms: Vec<([usize; 3], Scalar)>,
}

impl Cubic {
    pub fn eval(&self, t: &[Scalar]) -> Scalar {
        self.terms
            .iter()
            .map(|([a, b, c], k)| &(&(k * &t[*a]) * &t[*b]) * &t[*c])
            .sum()
    }
}

/// `[[r, r, r]]^α` of `r = Σ t_k B_k` as cubic polynomials in `t`, one per
/// nonzero output entry of the arity-4 tensor.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidualPolynomialSystem {
    dim: usize,
    vars: usize,
    polys: Vec<(usize, Cubic)>,
    float: Vec<Vec<([usize; 3], f64)>>,
}

impl ResidualPolynomialSystem {
    /// The system `P_k(t) = Σ terms`; output indices are flat indices into `L^{⊗4}`.
    pub fn new(dim: usize, vars: usize, polys: Vec<(usize, Cubic)>) -> Result<Self> {
        for (_, p) in &polys {
            if p.terms.iter().any(|(m, _)| m.iter().any(|&v| v >= vars)) {
                return Err(Error::Invalid(
                    "monomial refers to a missing variable".into(),
                ));
            }
        }
        let float = polys
            .iter()
            .map(|(_, p)| {
                p.terms
                    .iter()
                    .map(|(m, c)| (*m, c.to_f64().unwrap_or(f64::NAN)))
                    .collect()
            })
            .collect();
        Ok(ResidualPolynomialSystem {
            dim,
            vars,
            polys,
            float,
        })
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn polynomials(&self) -> &[(usize, Cubic)] {
        &self.polys
    }

    pub fn is_identically_zero(&self) -> bool {
        self.polys.is_empty()
    }

    /// Exact evaluation as an arity-4 tensor.
    pub fn eval_exact(&self, t: &[Scalar]) -> Tensor {
        let mut out = Tensor::zeros(self.dim, 4);
        for (flat, p) in &self.polys {
            let idx = out.multi_index(*flat);
            out.set(&idx, p.eval(t));
        }
        out
    }

    fn eval_f64(&self, t: &[f64]) -> Vec<f64> {
        self.float
            .iter()
            .map(|p| {
                p.iter()
                    .fold(0.0, |acc, ([a, b, c], k)| acc + k * t[*a] * t[*b] * t[*c])
            })
            .collect()
    }

    /// `Φ(t) = Σ_k P_k(t)²`.
    pub fn objective(&self, t: &[f64]) -> f64 {
        self.eval_f64(t).iter().fold(0.0, |acc, p| acc + p * p)
    }

    /// Analytic gradient of [`objective`](Self::objective).
    pub fn gradient(&self, t: &[f64]) -> Vec<f64> {
        let values = self.eval_f64(t);
        let mut g = vec![0.0; self.vars];
        for (p, v) in self.float.iter().zip(values) {
            for ([a, b, c], k) in p {
                let w = 2.0 * v * k;
                g[*a] += w * t[*b] * t[*c];
                g[*b] += w * t[*a] * t[*c];
                g[*c] += w * t[*a] * t[*b];
            }
        }
        g
    }
}

/// Expands the CHYBE over the parametrization and cross-checks the result
/// against [`ybe::chybe_bracket`] at three random rational points.
pub fn residual_polynomials(
    alg: &HomTriAlgebra,
    param: &SkewParametrization,
) -> Result<ResidualPolynomialSystem> {
    let n = alg.dim();
    if param.dim() != n {
        return Err(Error::Dimension(format!(
            "parametrization has dim {}, algebra has dim {n}",
            param.dim()
        )));
    }
    let d = param.len();
    let b = param.basis();
    let mut coeffs: BTreeMap<(usize, [usize; 3]), Scalar> = BTreeMap::new();
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let t = ybe::chybe_trilinear([&b[i], &b[j], &b[k]], alg)?;
                let mut mono = [i, j, k];
                mono.sort_unstable();
                for (idx, v) in t.nonzero() {
                    let flat = t.flat_index(&idx);
                    *coeffs.entry((flat, mono)).or_insert_with(Scalar::zero) += v;
                }
            }
        }
    }
    let mut grouped: BTreeMap<usize, Vec<([usize; 3], Scalar)>> = BTreeMap::new();
    for ((flat, mono), c) in coeffs {
        if !c.is_zero() {
            grouped.entry(flat).or_default().push((mono, c));
        }
    }
    let polys = grouped
        .into_iter()
        .map(|(flat, terms)| (flat, Cubic { terms }))
        .collect();
    let sys = ResidualPolynomialSystem::new(n, d, polys)?;

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..3 {
        let point: Vec<Scalar> = (0..d)
            .map(|_| Scalar::ratio(rng.gen_range(-9..=9), rng.gen_range(1..=5)))
            .collect();
        let direct = ybe::chybe_bracket(&param.assemble(&point)?, alg)?;
        if direct != sys.eval_exact(&point) {
            return Err(Error::Invalid(
                "residual polynomials disagree with the CHYBE bracket".into(),
            ));
        }
    }
    Ok(sys)
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolverConfig {
    pub restarts: usize,
    /// Threshold on the sum of squares Φ.
    pub tol: f64,
    pub max_iters: usize,
    pub max_denominator: u64,
    pub seed: u64,
    /// Starts are drawn uniformly from `[−bound, bound]^d`.
    pub bound: f64,
    /// Candidates closer than this (Euclidean) are merged.
    pub dedup_distance: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            restarts: 32,
            tol: 1e-12,
            max_iters: 5000,
            max_denominator: 100,
            seed: 0,
            bound: 2.0,
            dedup_distance: 1e-6,
        }
    }
}

/// Gradient descent with backtracking from `restarts` random starts; returns
/// the points whose objective is below `tol`, deduplicated in start order.
pub fn minimize_residual(sys: &ResidualPolynomialSystem, config: &SolverConfig) -> Vec<Vec<f64>> {
    let d = sys.vars();
    if d == 0 {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut found: Vec<Vec<f64>> = Vec::new();
    for _ in 0..config.restarts {
        let start: Vec<f64> = (0..d)
            .map(|_| rng.gen_range(-config.bound..=config.bound))
            .collect();
        let (point, value) = descend(sys, start, config);
        if !(value < config.tol) {
            continue;
        }
        let close = found.iter().any(|q| {
            q.iter()
                .zip(&point)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt()
                < config.dedup_distance
        });
        if !close {
            found.push(point);
        }
    }
    found
}

fn descend(
    sys: &ResidualPolynomialSystem,
    mut t: Vec<f64>,
    config: &SolverConfig,
) -> (Vec<f64>, f64) {
    let mut value = sys.objective(&t);
    let mut step = 1.0;
    for _ in 0..config.max_iters {
        if value < config.tol {
            break;
        }
        let g = sys.gradient(&t);
        let gg: f64 = g.iter().map(|x| x * x).sum();
        if gg == 0.0 || !gg.is_finite() {
            break;
        }
        step *= 2.0;
        loop {
            let trial: Vec<f64> = t.iter().zip(&g).map(|(x, gx)| x - step * gx).collect();
            let tv = sys.objective(&trial);
            if tv <= value - 1e-4 * step * gg {
                t = trial;
                value = tv;
                break;
            }
            step *= 0.5;
            if step < 1e-30 {
                return (t, value);
            }
        }
    }
    (t, value)
}

/// Best rational approximation from the continued-fraction convergents of
/// `x` with denominator at most `max_denominator`.
pub fn rationalize(x: f64, max_denominator: u64) -> Result<BigRational> {
    if !x.is_finite() {
        return Err(Error::Invalid(format!("cannot rationalize {x}")));
    }
    let max_den = BigInt::from(max_denominator.max(1));
    let exact = BigRational::from_float(x).expect("finite");
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut rest = exact.clone();
    let mut best = BigRational::from_integer(exact.floor().to_integer());
    loop {
        let a = rest.floor().to_integer();
        let h2 = &a * &h1 + &h0;
        let k2 = &a * &k1 + &k0;
        if k2 > max_den {
            break;
        }
        best = BigRational::new(h2.clone(), k2.clone());
        let frac = &rest - BigRational::from_integer(a);
        // stop once the convergent reproduces x to double precision
        let err = (&best - &exact).abs().to_f64().unwrap_or(0.0);
        if frac.is_zero() || err <= 1e-12 * x.abs().max(1.0) {
            break;
        }
        rest = frac.recip();
        h0 = std::mem::replace(&mut h1, h2);
        k0 = std::mem::replace(&mut k1, k2);
    }
    Ok(best)
}

/// Rationalizes `point` and returns the r-matrix only when it is an exact
/// skew, α-invariant CHYBE solution; otherwise the failing residual.
pub fn rationalize_and_verify(
    alg: &HomTriAlgebra,
    param: &SkewParametrization,
    point: &[f64],
    max_denominator: u64,
) -> Result<RMatrix> {
    let exact: Vec<Scalar> = point
        .iter()
        .map(|&x| rationalize(x, max_denominator).map(Scalar::Real))
        .collect::<Result<_>>()?;
    verify_candidate(alg, &param.assemble(&exact)?)
}

/// Whether `r = c·s` for some scalar `c`; the CHYBE is homogeneous, so only
/// one representative per line is kept.
fn proportional(s: &RMatrix, r: &RMatrix) -> bool {
    let (a, b) = (s.matrix().data(), r.matrix().data());
    let Some(pivot) = a.iter().position(|x| !x.is_zero()) else {
        return r.is_zero();
    };
    let c = &b[pivot] / &a[pivot];
    a.iter().zip(b).all(|(x, y)| &(&c * x) == y)
}

fn verify_candidate(alg: &HomTriAlgebra, r: &RMatrix) -> Result<RMatrix> {
    for entry in [
        ybe::skew_residual(r),
        ybe::alpha_invariance_residual(r, alg.alpha())?,
        ybe::chybe_residual(r, alg)?,
    ] {
        if !entry.pass {
            return Err(Error::Residual {
                check: entry.name,
                residual: entry.residual.to_string(),
            });
        }
    }
    Ok(r.clone())
}

/// `max |α([e_i,e_j,e_k]) − [α e_i, α e_j, α e_k]|`.
pub fn morphism_constraint_residual(b: &TriBracket, alpha: &TwistMap) -> Result<CheckEntry> {
    if b.dim() != alpha.dim() {
        return Err(Error::Dimension("bracket and α dimensions differ".into()));
    }
    Ok(CheckEntry::exact(
        "morphism",
        morphism_residual(b, alpha.matrix()),
    ))
}

#[derive(Clone, Debug)]
pub struct SolveOutcome {
    pub param: SkewParametrization,
    /// Float candidates from the search, before rationalization.
    pub candidates: Vec<Vec<f64>>,
    pub solutions: Vec<RMatrix>,
    pub report: VerificationReport,
}

/// The whole pipeline on the α-invariant skew subspace of `alg`.
///
/// The subspace basis elements are tried as exact candidates before the
/// search results.
pub fn solve(alg: &HomTriAlgebra, config: &SolverConfig) -> Result<SolveOutcome> {
    if !alg.is_real() {
        return Err(Error::Invalid(
            "numeric search supports rational algebras only".into(),
        ));
    }
    let param = invariant_skew_subspace(alg.alpha());
    let mut report = VerificationReport::new();
    report.push(CheckEntry::exact("parametrization", BigRational::zero()));
    if param.is_empty() {
        report.push(CheckEntry::exact(
            "no verified solutions",
            BigRational::zero(),
        ));
        return Ok(SolveOutcome {
            param,
            candidates: Vec::new(),
            solutions: Vec::new(),
            report,
        });
    }
    let sys = residual_polynomials(alg, &param)?;
    let candidates = minimize_residual(&sys, config);
    if let Some(best) = candidates
        .iter()
        .map(|c| sys.objective(c))
        .min_by(|a, b| a.total_cmp(b))
    {
        report.push(CheckEntry::float("best float residual", best, config.tol));
    }

    if sys.is_identically_zero() {
        // every point of the subspace solves; its basis describes them all
        report.push(CheckEntry::exact(
            "residual identically zero",
            BigRational::zero(),
        ));
        let mut solutions = Vec::new();
        for r in param.basis() {
            report.push(CheckEntry::exact(
                format!("solution {}", solutions.len() + 1),
                BigRational::zero(),
            ));
            solutions.push(verify_candidate(alg, r)?);
        }
        return Ok(SolveOutcome {
            param,
            candidates,
            solutions,
            report,
        });
    }

    let mut solutions: Vec<RMatrix> = Vec::new();
    let d = param.len();
    let unit = |k: usize| -> Vec<Scalar> {
        (0..d)
            .map(|j| {
                if j == k {
                    Scalar::one()
                } else {
                    Scalar::zero()
                }
            })
            .collect()
    };
    let mut exact_points: Vec<Vec<Scalar>> = (0..d).map(unit).collect();
    for c in &candidates {
        exact_points.push(
            c.iter()
                .map(|&x| rationalize(x, config.max_denominator).map(Scalar::Real))
                .collect::<Result<_>>()?,
        );
    }
    for point in exact_points {
        let r = param.assemble(&point)?;
        if r.is_zero() || solutions.iter().any(|s| proportional(s, &r)) {
            continue;
        }
        if let Ok(r) = verify_candidate(alg, &r) {
            report.push(CheckEntry::exact(
                format!("solution {}", solutions.len() + 1),
                BigRational::zero(),
            ));
            solutions.push(r);
        }
    }
    if solutions.is_empty() {
        report.push(CheckEntry::exact(
            "no verified solutions",
            BigRational::zero(),
        ));
    }
    Ok(SolveOutcome {
        param,
        candidates,
        solutions,
        report,
    })
}
