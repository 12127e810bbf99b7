//! Reproduction reports for the two worked examples.
//!
//! Every displayed claim becomes its own check entry with an exact residual.
//! Claims are tested, not assumed: a failing entry is part of the result.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use crate::bialgebra::{assemble_coboundary, LocalCocycleBialgebra};
use crate::bundled;
use crate::coalgebra::CoBracket;
use crate::error::{Error, Result};
use crate::homlie::{
    hom_jacobi_residual, multiplicative_residual, skew_residual, twist, HomTriAlgebra, TwistMap,
};
use crate::matrix::{basis_vector, Matrix};
use crate::report::{CheckEntry, VerificationReport};
use crate::scalar::Scalar;
use crate::solver::morphism_constraint_residual;
use crate::tensor::{wedge3, Tensor};
use crate::ybe::{self, RMatrix};

#[derive(Clone, Debug)]
pub struct ExampleReport {
    /// Parameter values and the constraint equations they are meant to satisfy.
    pub header: BTreeMap<String, String>,
    pub report: VerificationReport,
    pub bialgebra: LocalCocycleBialgebra,
}

const EX31_KEYS: [&str; 10] = [
    "a11", "a12", "a13", "a22", "a23", "a32", "a33", "r12", "r13", "r23",
];
const EX32_KEYS: [&str; 5] = ["a11", "a12", "a13", "a22", "a23"];

/// Defaults: `a11 = 1`, α = id, `r = e2∧e3` (`r12 = r13 = 0`, `r23 = 1`).
pub fn ex31_defaults() -> BTreeMap<String, Scalar> {
    let one = ["a11", "a22", "a33", "r23"];
    EX31_KEYS
        .iter()
        .map(|k| {
            let v = if one.contains(k) {
                Scalar::one()
            } else {
                Scalar::zero()
            };
            (k.to_string(), v)
        })
        .collect()
}

/// Defaults: `a11 = 1, a12 = −1, a13 = 0, a22 = 1, a23 = 1`.
pub fn ex32_defaults() -> BTreeMap<String, Scalar> {
    [("a11", 1), ("a12", -1), ("a13", 0), ("a22", 1), ("a23", 1)]
        .into_iter()
        .map(|(k, v)| (k.to_string(), Scalar::from_int(v)))
        .collect()
}

fn merge(
    defaults: BTreeMap<String, Scalar>,
    given: &BTreeMap<String, Scalar>,
    keys: &[&str],
) -> Result<BTreeMap<String, Scalar>> {
    let mut out = defaults;
    for (k, v) in given {
        if !keys.contains(&k.as_str()) {
            return Err(Error::Parse(format!(
                "unknown parameter {k:?}; expected one of {}",
                keys.join(", ")
            )));
        }
        out.insert(k.clone(), v.clone());
    }
    Ok(out)
}

fn equation(name: &str, lhs: Scalar, rhs: Scalar) -> CheckEntry {
    CheckEntry::exact(name, (&lhs - &rhs).magnitude())
}

fn tensor_claim(name: impl Into<String>, got: &Tensor, want: &Tensor) -> CheckEntry {
    CheckEntry::exact(name, (got - want).max_magnitude())
}

fn algebra_checks(prefix: &str, alg: &HomTriAlgebra) -> VerificationReport {
    let mut r = VerificationReport::new();
    r.extend_prefixed(
        prefix,
        [
            skew_residual(alg.bracket()),
            hom_jacobi_residual(alg),
            multiplicative_residual(alg),
        ]
        .into_iter()
        .collect(),
    );
    r
}

fn header_of(
    params: &BTreeMap<String, Scalar>,
    extra: &[(&str, &str)],
) -> BTreeMap<String, String> {
    let mut h: BTreeMap<String, String> = params
        .iter()
        .map(|(k, v)| (k.clone(), v.to_string()))
        .collect();
    for (k, v) in extra {
        h.insert(k.to_string(), v.to_string());
    }
    h
}

/// `Δ_i(e_k)` compared against `sign · (r ⊗_i v)` for i = 1, 2, 3.
fn component_claims(
    report: &mut VerificationReport,
    comps: &[CoBracket; 3],
    r: &RMatrix,
    k: usize,
    sign_of: impl Fn(usize) -> Scalar,
    v: &[Scalar],
) -> Result<()> {
    let rt = r.to_tensor();
    for i in 1..=3 {
        let want = rt.insert_at(v, i)?.scale(&sign_of(i));
        report.push(tensor_claim(
            format!("Δ{i}(e{}) closed form", k + 1),
            comps[i - 1].image(k),
            &want,
        ));
    }
    Ok(())
}

fn alternating(i: usize) -> Scalar {
    Scalar::from_int(if i.is_multiple_of(2) { 1 } else { -1 })
}

/// The three-dimensional example `[e1, e2, e3] = e1`.
///
/// α has columns `α(e1) = a11 e1`, `α(e2) = a12 e1 + a22 e2 + a32 e3`,
/// `α(e3) = a13 e1 + a23 e2 + a33 e3`, and `r = Σ_{i<j} r_ij e_i∧e_j`.
pub fn verify_ex31(given: &BTreeMap<String, Scalar>) -> Result<ExampleReport> {
    let p = merge(ex31_defaults(), given, &EX31_KEYS)?;
    let g = |k: &str| p[k].clone();
    let (a11, a12, a13) = (g("a11"), g("a12"), g("a13"));
    let (a22, a23, a32, a33) = (g("a22"), g("a23"), g("a32"), g("a33"));
    let (r12, r13, r23) = (g("r12"), g("r13"), g("r23"));
    let z = Scalar::zero;
    let alpha = TwistMap::new(Matrix::from_rows(vec![
        vec![a11.clone(), a12.clone(), a13.clone()],
        vec![z(), a22.clone(), a23.clone()],
        vec![z(), a32.clone(), a33.clone()],
    ])?)?;
    let r = RMatrix::skew_from(
        3,
        &[
            (0, 1, r12.clone()),
            (0, 2, r13.clone()),
            (1, 2, r23.clone()),
        ],
    );
    let mut report = VerificationReport::new();

    report.push(equation(
        "constraint a22·a33 − a23·a32 = 1",
        &a22 * &a33 - &a23 * &a32,
        Scalar::one(),
    ));
    let u = &r12 * &a11 - &r23 * &a13;
    let w = &r13 * &a11 + &r23 * &a12;
    report.push(equation(
        "constraint (r12·a11 − r23·a13)·a22 + (r13·a11 + r23·a12)·a23 = r12",
        &u * &a22 + &w * &a23,
        r12.clone(),
    ));
    report.push(equation(
        "constraint (r12·a11 − r23·a13)·a32 + (r13·a11 + r23·a12)·a33 = r13",
        &u * &a32 + &w * &a33,
        r13.clone(),
    ));

    let base = bundled::ex31_bracket();
    report.push(morphism_constraint_residual(&base, &alpha)?);
    let untwisted = HomTriAlgebra::untwisted(base.clone())?;
    let l_alpha = twist_unchecked(&base, &alpha)?;
    report.extend(algebra_checks("L_alpha", &l_alpha));
    report.push(ybe::alpha_invariance_residual(&r, &alpha)?);
    report.push(ybe::skew_residual(&r));
    let mut in_l = ybe::chybe_residual(&r, &untwisted)?;
    in_l.name = "chybe in L".into();
    report.push(in_l);
    let mut in_la = ybe::chybe_residual(&r, &l_alpha)?;
    in_la.name = "chybe in L_alpha".into();
    report.push(in_la);

    let bialgebra = assemble_coboundary(&l_alpha, &r)?;
    let comps = &bialgebra.components;
    let a11e1 = crate::matrix::scale_vector(&basis_vector(3, 0), &a11);
    component_claims(
        &mut report,
        comps,
        &r,
        0,
        |i| &alternating(i) * &r23,
        &a11e1,
    )?;
    component_claims(
        &mut report,
        comps,
        &r,
        1,
        |i| &(-&alternating(i)) * &r13,
        &a11e1,
    )?;
    component_claims(
        &mut report,
        comps,
        &r,
        2,
        |i| &alternating(i) * &r12,
        &a11e1,
    )?;

    let e = |i| basis_vector(3, i);
    let w123 = wedge3(&e(0), &e(1), &e(2))?;
    let delta = bialgebra.delta();
    let closed = [
        -&(&(&r23 * &r23) * &a11),
        &(&r13 * &r23) * &a11,
        -&(&(&r12 * &r23) * &a11),
    ];
    for (k, c) in closed.iter().enumerate() {
        report.push(tensor_claim(
            format!("Δ(e{}) closed form", k + 1),
            delta.image(k),
            &w123.scale(c),
        ));
    }
    report.extend_prefixed("bialgebra", bialgebra.report.clone());

    let header = header_of(
        &p,
        &[
            ("algebra", "[e1,e2,e3] = e1, dim 3; checks run on L_alpha"),
            ("alpha", "alpha(e1) = a11 e1, alpha(e2) = a12 e1 + a22 e2 + a32 e3, alpha(e3) = a13 e1 + a23 e2 + a33 e3"),
            ("r", "r12 e1^e2 + r13 e1^e3 + r23 e2^e3"),
        ],
    );
    Ok(ExampleReport {
        header,
        report,
        bialgebra,
    })
}

/// `(L, α∘[·,·,·], α)` without requiring α to be a morphism, so that a bad
/// parameter choice still yields a report.
fn twist_unchecked(base: &crate::homlie::TriBracket, alpha: &TwistMap) -> Result<HomTriAlgebra> {
    match twist(base, alpha) {
        Ok(a) => Ok(a),
        Err(Error::Residual { .. }) => {
            HomTriAlgebra::new_unchecked(base.compose_left(alpha.matrix()), alpha.clone())
        }
        Err(e) => Err(e),
    }
}

/// The four-dimensional example `[e1, e2, e3] = e1` with
/// `r = −e3⊗e4 + e4⊗e3 + Σ_{i<j} e_i∧e_j`.
pub fn verify_ex32(given: &BTreeMap<String, Scalar>) -> Result<ExampleReport> {
    let p = merge(ex32_defaults(), given, &EX32_KEYS)?;
    let g = |k: &str| p[k].clone();
    let (a11, a12, a13, a22, a23) = (g("a11"), g("a12"), g("a13"), g("a22"), g("a23"));
    let s = Scalar::from_int;
    let z = Scalar::zero;
    // columns are the images of e1..e4
    let alpha = TwistMap::new(Matrix::from_rows(vec![
        vec![a11.clone(), a12.clone(), a13.clone(), z()],
        vec![z(), a22.clone(), a23.clone(), z()],
        vec![z(), s(1), s(2), z()],
        vec![z(), s(1), s(2), z()],
    ])?)?;
    let mut terms: Vec<(usize, usize, Scalar)> = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            terms.push((i, j, Scalar::one()));
        }
    }
    terms.push((2, 3, s(-1)));
    let r = RMatrix::skew_from(4, &terms);
    let mut report = VerificationReport::new();

    report.push(equation(
        "constraint a11·(a22 + a23) + a12·a23 − a22·a13 = 1",
        &(&a11 * &(&a22 + &a23)) + &(&(&a12 * &a23) - &(&a22 * &a13)),
        Scalar::one(),
    ));
    report.push(equation(
        "constraint 3·a11 + 2·a12 − a13 = 1",
        &(&(&s(3) * &a11) + &(&s(2) * &a12)) - &a13,
        Scalar::one(),
    ));
    report.push(equation(
        "constraint 2·a22 − a23 = 1",
        &(&s(2) * &a22) - &a23,
        Scalar::one(),
    ));

    let base = bundled::ex32_bracket();
    report.push(morphism_constraint_residual(&base, &alpha)?);
    let untwisted = HomTriAlgebra::untwisted(base.clone())?;
    let l_alpha = twist_unchecked(&base, &alpha)?;
    report.extend(algebra_checks("L_alpha", &l_alpha));
    report.push(ybe::alpha_invariance_residual(&r, &alpha)?);
    report.push(ybe::skew_residual(&r));
    let mut in_l = ybe::chybe_residual(&r, &untwisted)?;
    in_l.name = "chybe in L".into();
    report.push(in_l);
    let mut in_la = ybe::chybe_residual(&r, &l_alpha)?;
    in_la.name = "chybe in L_alpha".into();
    report.push(in_la);

    let bialgebra = assemble_coboundary(&l_alpha, &r)?;
    let comps = &bialgebra.components;
    let a11e1 = crate::matrix::scale_vector(&basis_vector(4, 0), &a11);
    component_claims(&mut report, comps, &r, 0, alternating, &a11e1)?;
    component_claims(&mut report, comps, &r, 1, |i| -&alternating(i), &a11e1)?;
    component_claims(&mut report, comps, &r, 2, alternating, &a11e1)?;

    let e = |i| basis_vector(4, i);
    let delta = bialgebra.delta();
    let mut d2 = wedge3(&e(0), &e(1), &e(2))?;
    d2.add_assign(&wedge3(&e(0), &e(1), &e(3))?);
    let d2 = d2.scale(&a11);
    report.push(tensor_claim("Δ(e2) closed form", delta.image(1), &d2));
    report.push(tensor_claim(
        "Δ(e1) = −Δ(e2)",
        delta.image(0),
        &(-delta.image(1)),
    ));
    report.push(tensor_claim(
        "Δ(e3) = −Δ(e2)",
        delta.image(2),
        &(-delta.image(1)),
    ));
    report.push(CheckEntry::exact(
        "Δ(e4) = 0",
        delta.image(3).max_magnitude(),
    ));
    report.extend_prefixed("bialgebra", bialgebra.report.clone());

    let header = header_of(
        &p,
        &[
            ("algebra", "[e1,e2,e3] = e1, dim 4; checks run on L_alpha"),
            (
                "alpha",
                "alpha(e1) = a11 e1, alpha(e2) = a12 e1 + a22 e2 + e3 + e4, alpha(e3) = a13 e1 + a23 e2 + 2 e3 + 2 e4, alpha(e4) = 0",
            ),
            ("r", "-e3(x)e4 + e4(x)e3 + sum_{i<j} e_i^e_j"),
        ],
    );
    Ok(ExampleReport {
        header,
        report,
        bialgebra,
    })
}

/// Largest exact residual in a report, for summaries.
pub fn worst_exact(report: &VerificationReport) -> BigRational {
    report
        .entries()
        .iter()
        .filter_map(|e| match &e.residual {
            crate::report::Residual::Exact(r) => Some(r.clone()),
            crate::report::Residual::Float(_) => None,
        })
        .max()
        .unwrap_or_else(BigRational::zero)
}
