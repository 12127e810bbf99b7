//! Coboundary local cocycle bialgebras built from r-matrices.

use crate::coalgebra::{
    cojacobi_residual, comultiplicative_residual, coskew_residual, CoBracket, HomTriCoalgebra,
};
use crate::error::{Error, Result};
use crate::homlie::{hom_jacobi_residual, multiplicative_residual, skew_residual, HomTriAlgebra};
use crate::matrix::Matrix;
use crate::repcoh::{local_rep, one_cocycle_residual};
use crate::report::VerificationReport;
use crate::scalar::Scalar;
use crate::tensor::Tensor;
use crate::ybe::{self, RMatrix};

/// A bialgebra `(L, [·,·,·], Δ, α)` with `Δ = Δ1 + Δ2 + Δ3` and the report of
/// every check that was run on it.
#[derive(Clone, Debug)]
pub struct LocalCocycleBialgebra {
    pub alg: HomTriAlgebra,
    pub co: HomTriCoalgebra,
    pub components: [CoBracket; 3],
    pub r: Option<RMatrix>,
    pub report: VerificationReport,
}

impl LocalCocycleBialgebra {
    pub fn delta(&self) -> &CoBracket {
        self.co.cobracket()
    }

    pub fn passes(&self) -> bool {
        self.report.overall()
    }
}

/// The three components without the co-skew validation.
pub fn delta_components_unchecked(alg: &HomTriAlgebra, r: &RMatrix) -> Result<[CoBracket; 3]> {
    let n = alg.dim();
    if r.dim() != n {
        return Err(Error::Dimension(format!(
            "r-matrix has dim {}, algebra has dim {n}",
            r.dim()
        )));
    }
    // row a of Y is Σ_b R[a][b] α(e_b): the α-image of the second leg paired with e_a
    let y = r.matrix() * &alg.alpha_matrix().transpose();
    let nz_rows: Vec<Vec<(usize, Scalar)>> = (0..n)
        .map(|a| {
            y.row(a)
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(q, v)| (q, v.clone()))
                .collect()
        })
        .collect();
    let mut comps: [Vec<Tensor>; 3] = Default::default();
    for x in 0..n {
        let mut d = [
            Tensor::zeros(n, 3),
            Tensor::zeros(n, 3),
            Tensor::zeros(n, 3),
        ];
        for a in 0..n {
            if nz_rows[a].is_empty() {
                continue;
            }
            for c in 0..n {
                if nz_rows[c].is_empty() {
                    continue;
                }
                let br = alg.bracket().constant(x, a, c);
                for (l, bl) in br.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                    for (u, yu) in &nz_rows[a] {
                        let t = bl * yu;
                        for (v, yv) in &nz_rows[c] {
                            let w = &t * yv;
                            // Δ1: [x,x_i,x_j] ⊗ α(y_j) ⊗ α(y_i)
                            d[0].add_at(&[l, *v, *u], &w);
                            // Δ2: α(y_i) ⊗ [x,x_i,x_j] ⊗ α(y_j)
                            d[1].add_at(&[*u, l, *v], &w);
                            // Δ3: α(y_j) ⊗ α(y_i) ⊗ [x,x_i,x_j]
                            d[2].add_at(&[*v, *u, l], &w);
                        }
                    }
                }
            }
        }
        for (k, t) in d.into_iter().enumerate() {
            comps[k].push(t);
        }
    }
    let [c1, c2, c3] = comps;
    Ok([
        CoBracket::new(n, c1)?,
        CoBracket::new(n, c2)?,
        CoBracket::new(n, c3)?,
    ])
}

/// `Δ1, Δ2, Δ3` induced by `r`; rejected if `Δ1 + Δ2 + Δ3` is not co-skew.
pub fn build_delta_components(alg: &HomTriAlgebra, r: &RMatrix) -> Result<[CoBracket; 3]> {
    let comps = delta_components_unchecked(alg, r)?;
    let total = sum_components(&comps)?;
    let skew = coskew_residual(&total);
    if !skew.pass {
        return Err(Error::Residual {
            check: skew.name,
            residual: skew.residual.to_string(),
        });
    }
    Ok(comps)
}

pub fn sum_components(comps: &[CoBracket; 3]) -> Result<CoBracket> {
    comps[0].try_add(&comps[1])?.try_add(&comps[2])
}

/// Each `Δs` checked as a 1-cocycle of the local representation on slot `s`.
pub fn verify_local_cocycle(
    alg: &HomTriAlgebra,
    comps: &[CoBracket; 3],
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new();
    for (s, d) in comps.iter().enumerate() {
        if d.dim() != alg.dim() {
            return Err(Error::Dimension(
                "cobracket and algebra dimensions differ".into(),
            ));
        }
        let rep = local_rep(alg, s + 1)?;
        let mut entry = one_cocycle_residual(alg, &d.to_matrix(), &rep)?;
        entry.name = format!("local cocycle Δ{}", s + 1);
        report.push(entry);
    }
    Ok(report)
}

/// Runs every check of the coboundary construction and returns the result
/// together with its report; failures are recorded, not raised.
pub fn assemble_coboundary(alg: &HomTriAlgebra, r: &RMatrix) -> Result<LocalCocycleBialgebra> {
    let n = alg.dim();
    if r.dim() != n {
        return Err(Error::Dimension(format!(
            "r-matrix has dim {}, algebra has dim {n}",
            r.dim()
        )));
    }
    let mut report = VerificationReport::new();
    report.push(skew_residual(alg.bracket()));
    report.push(hom_jacobi_residual(alg));
    report.push(multiplicative_residual(alg));
    report.push(ybe::skew_residual(r));
    report.push(ybe::alpha_invariance_residual(r, alg.alpha())?);
    report.push(ybe::chybe_residual(r, alg)?);

    let comps = delta_components_unchecked(alg, r)?;
    let total = sum_components(&comps)?;
    let co = HomTriCoalgebra::new_unchecked(total, alg.alpha().clone())?;
    report.push(coskew_residual(co.cobracket()));
    report.push(comultiplicative_residual(&co));
    report.push(cojacobi_residual(&co));
    report.extend(verify_local_cocycle(alg, &comps)?);
    report.push(ybe::ad_condition_residual(r, alg)?);
    Ok(LocalCocycleBialgebra {
        alg: alg.clone(),
        co,
        components: comps,
        r: Some(r.clone()),
        report,
    })
}

/// Replaces one coefficient of a cobracket; used to probe the checks.
pub fn perturb(d: &CoBracket, i: usize, indices: [usize; 3], by: &Scalar) -> Result<CoBracket> {
    let mut m: Matrix = d.to_matrix();
    let n = d.dim();
    let row = indices[0] * n * n + indices[1] * n + indices[2];
    m[(row, i)] += by;
    CoBracket::from_matrix(&m)
}
