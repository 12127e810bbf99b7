//! r-matrices and the 3-Lie classical Hom-Yang-Baxter bracket.
//!
//! An element `r = Σ_{a,b} R[a][b] e_a⊗e_b ∈ L⊗L` is stored as the matrix `R`.
//! Brackets of embedded copies `r_pq` follow one rule: the slot shared by all
//! three factors receives the bracket of the legs sitting there (in factor
//! order), every other slot receives α of its single leg.

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::homlie::{HomTriAlgebra, TwistMap};
use crate::matrix::{Matrix, Vector};
use crate::report::CheckEntry;
use crate::scalar::Scalar;
use crate::tensor::Tensor;

#[derive(Clone, Debug, PartialEq)]
pub struct RMatrix(Matrix);

impl RMatrix {
    pub fn new(m: Matrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Dimension(format!(
                "r-matrix must be square, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        Ok(RMatrix(m))
    }

    pub fn zero(n: usize) -> Self {
        RMatrix(Matrix::zeros(n, n))
    }

    /// `Σ c·(e_a⊗e_b − e_b⊗e_a)` over the given `(a, b, c)`, 0-based.
    pub fn skew_from(n: usize, terms: &[(usize, usize, Scalar)]) -> Self {
        let mut m = Matrix::zeros(n, n);
        for (a, b, c) in terms {
            m[(*a, *b)] += c;
            m[(*b, *a)] -= c;
        }
        RMatrix(m)
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn to_tensor(&self) -> Tensor {
        Tensor::from_data(self.dim(), 2, self.0.data().to_vec()).expect("n×n is n^2")
    }

    fn check_dim(&self, n: usize) -> Result<()> {
        if self.dim() != n {
            return Err(Error::Dimension(format!(
                "r-matrix has dim {}, algebra has dim {n}",
                self.dim()
            )));
        }
        Ok(())
    }
}

/// `r_pq`: the legs of `r` placed at slots `p` and `q` (1-based) of `slots`.
#[derive(Clone, Copy, Debug)]
pub struct EmbeddedFactor<'a> {
    pub r: &'a RMatrix,
    pub p: usize,
    pub q: usize,
    pub slots: usize,
}

impl<'a> EmbeddedFactor<'a> {
    pub fn new(r: &'a RMatrix, p: usize, q: usize, slots: usize) -> Result<Self> {
        if p == 0 || q == 0 || p > slots || q > slots {
            return Err(Error::Slot {
                slot: if p == 0 || p > slots { p } else { q },
                max: slots,
            });
        }
        if p == q {
            return Err(Error::Invalid(format!(
                "r_{p}{q} puts both legs in one slot"
            )));
        }
        Ok(EmbeddedFactor { r, p, q, slots })
    }
}

/// Checks the occupancy pattern and returns the shared slot and, per factor,
/// whether its first leg sits in the shared slot and where its other leg goes.
fn occupancy(f: &[EmbeddedFactor; 3]) -> Result<(usize, [(bool, usize); 3])> {
    let slots = f[0].slots;
    if f.iter().any(|x| x.slots != slots) {
        return Err(Error::Invalid(
            "embedded factors disagree on the slot count".into(),
        ));
    }
    let mut count = vec![0usize; slots + 1];
    for x in f {
        count[x.p] += 1;
        count[x.q] += 1;
    }
    let triple: Vec<usize> = (1..=slots).filter(|&s| count[s] == 3).collect();
    if triple.len() != 1 || (1..=slots).any(|s| count[s] != 1 && count[s] != 3) {
        return Err(Error::Invalid(format!(
            "occupancy {:?} of [r_{}{}, r_{}{}, r_{}{}] is not one triple slot plus single slots",
            &count[1..],
            f[0].p,
            f[0].q,
            f[1].p,
            f[1].q,
            f[2].p,
            f[2].q
        )));
    }
    let s = triple[0];
    let legs = [0, 1, 2].map(|k| {
        if f[k].p == s {
            (true, f[k].q)
        } else {
            (false, f[k].p)
        }
    });
    Ok((s, legs))
}

/// `[f1, f2, f3]` under the occupancy rule, as a tensor of arity `slots`.
pub fn embedded_triple_bracket(
    f1: EmbeddedFactor,
    f2: EmbeddedFactor,
    f3: EmbeddedFactor,
    alg: &HomTriAlgebra,
) -> Result<Tensor> {
    let factors = [f1, f2, f3];
    let (shared, legs) = occupancy(&factors)?;
    let n = alg.dim();
    for f in &factors {
        f.r.check_dim(n)?;
    }
    // N_f[u][w]: weight of bracket leg e_u together with α-image component w of the single leg
    let alpha_t = alg.alpha_matrix().transpose();
    let mats: Vec<Matrix> = factors
        .iter()
        .zip(&legs)
        .map(|(f, (first_shared, _))| {
            let m = if *first_shared {
                f.r.matrix().clone()
            } else {
                f.r.matrix().transpose()
            };
            &m * &alpha_t
        })
        .collect();
    let nz = |m: &Matrix, u: usize| -> Vec<(usize, Scalar)> {
        m.row(u)
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(w, v)| (w, v.clone()))
            .collect()
    };
    let rows: Vec<Vec<Vec<(usize, Scalar)>>> = mats
        .iter()
        .map(|m| (0..n).map(|u| nz(m, u)).collect())
        .collect();

    let slots = factors[0].slots;
    let mut out = Tensor::zeros(n, slots);
    let mut idx = vec![0usize; slots];
    for u1 in 0..n {
        if rows[0][u1].is_empty() {
            continue;
        }
        for u2 in 0..n {
            if rows[1][u2].is_empty() {
                continue;
            }
            for u3 in 0..n {
                if rows[2][u3].is_empty() {
                    continue;
                }
                let c = alg.bracket().constant(u1, u2, u3);
                for (l, cl) in c.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                    idx[shared - 1] = l;
                    for (w1, v1) in &rows[0][u1] {
                        idx[legs[0].1 - 1] = *w1;
                        let c1 = cl * v1;
                        for (w2, v2) in &rows[1][u2] {
                            idx[legs[1].1 - 1] = *w2;
                            let c2 = &c1 * v2;
                            for (w3, v3) in &rows[2][u3] {
                                idx[legs[2].1 - 1] = *w3;
                                out.add_at(&idx, &(&c2 * v3));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// A signed sum of embedded triple brackets; slot pairs are written `(p, q)`.
type Term = (i64, [(usize, usize); 3]);

const CHYBE_TERMS: [Term; 4] = [
    (1, [(1, 2), (1, 3), (1, 4)]),
    (1, [(1, 2), (2, 3), (2, 4)]),
    (1, [(1, 3), (2, 3), (3, 4)]),
    (1, [(1, 4), (2, 4), (3, 4)]),
];

const VARIANT_1: [Term; 4] = [
    (1, [(1, 2), (1, 3), (1, 4)]),
    (1, [(1, 2), (2, 3), (2, 4)]),
    (-1, [(1, 3), (3, 2), (3, 4)]),
    (1, [(1, 4), (4, 2), (4, 3)]),
];

const VARIANT_1_AS_PRINTED: [Term; 4] = [
    (1, [(1, 2), (1, 3), (1, 4)]),
    (1, [(1, 2), (2, 3), (2, 4)]),
    (-1, [(1, 3), (3, 2), (3, 4)]),
    (-1, [(1, 4), (4, 2), (4, 3)]),
];

const VARIANT_2: [Term; 4] = [
    (1, [(1, 2), (3, 1), (1, 4)]),
    (-1, [(2, 1), (3, 2), (2, 4)]),
    (-1, [(3, 1), (3, 2), (3, 4)]),
    (-1, [(4, 1), (4, 2), (3, 4)]),
];

const VARIANT_3: [Term; 4] = [
    (-1, [(1, 2), (1, 3), (4, 1)]),
    (1, [(2, 1), (2, 3), (4, 2)]),
    (-1, [(3, 1), (3, 2), (4, 3)]),
    (-1, [(4, 1), (4, 2), (4, 3)]),
];

fn signed_sum(terms: &[Term], rs: [&RMatrix; 3], alg: &HomTriAlgebra) -> Result<Tensor> {
    let n = alg.dim();
    let mut out = Tensor::zeros(n, 4);
    for (sign, pairs) in terms {
        let f = |k: usize| EmbeddedFactor::new(rs[k], pairs[k].0, pairs[k].1, 4);
        let t = embedded_triple_bracket(f(0)?, f(1)?, f(2)?, alg)?;
        out.add_scaled(&t, &Scalar::from_int(*sign));
    }
    Ok(out)
}

/// `[[r, r, r]]^α = [r12, r13, r14] + [r12, r23, r24] + [r13, r23, r34] + [r14, r24, r34]`.
pub fn chybe_bracket(r: &RMatrix, alg: &HomTriAlgebra) -> Result<Tensor> {
    let t = chybe_trilinear([r, r, r], alg)?;
    debug_assert_eq!(
        Some(&t),
        chybe_bracket_expanded(r, alg).ok().as_ref(),
        "embedded-factor bracket disagrees with the direct expansion"
    );
    Ok(t)
}

/// The CHYBE bracket with the `k`-th factor of every term taken from `rs[k]`.
/// Trilinear in `rs`; `chybe_bracket(r) = chybe_trilinear([r, r, r])`.
pub fn chybe_trilinear(rs: [&RMatrix; 3], alg: &HomTriAlgebra) -> Result<Tensor> {
    signed_sum(&CHYBE_TERMS, rs, alg)
}

/// Direct expansion over the legs of `r`:
/// `Σ [x_i,x_j,x_k]⊗αy_i⊗αy_j⊗αy_k + αx_i⊗[y_i,x_j,x_k]⊗αy_j⊗αy_k
///  + αx_i⊗αx_j⊗[y_i,y_j,x_k]⊗αy_k + αx_i⊗αx_j⊗αx_k⊗[y_i,y_j,y_k]`.
pub fn chybe_bracket_expanded(r: &RMatrix, alg: &HomTriAlgebra) -> Result<Tensor> {
    let n = alg.dim();
    r.check_dim(n)?;
    let acol: Vec<Vec<(usize, Scalar)>> = (0..n)
        .map(|i| sparse(&alg.alpha_matrix().column(i)))
        .collect();
    let br = |a: usize, b: usize, c: usize| sparse(alg.bracket().constant(a, b, c));
    let legs: Vec<(usize, usize, Scalar)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| !r.matrix()[(a, b)].is_zero())
        .map(|(a, b)| (a, b, r.matrix()[(a, b)].clone()))
        .collect();
    let mut out = Tensor::zeros(n, 4);
    for (xi, yi, ci) in &legs {
        for (xj, yj, cj) in &legs {
            let cij = ci * cj;
            for (xk, yk, ck) in &legs {
                let c = &cij * ck;
                let terms = [
                    [
                        br(*xi, *xj, *xk),
                        acol[*yi].clone(),
                        acol[*yj].clone(),
                        acol[*yk].clone(),
                    ],
                    [
                        acol[*xi].clone(),
                        br(*yi, *xj, *xk),
                        acol[*yj].clone(),
                        acol[*yk].clone(),
                    ],
                    [
                        acol[*xi].clone(),
                        acol[*xj].clone(),
                        br(*yi, *yj, *xk),
                        acol[*yk].clone(),
                    ],
                    [
                        acol[*xi].clone(),
                        acol[*xj].clone(),
                        acol[*xk].clone(),
                        br(*yi, *yj, *yk),
                    ],
                ];
                for [s1, s2, s3, s4] in &terms {
                    for (i1, v1) in s1 {
                        let c1 = &c * v1;
                        for (i2, v2) in s2 {
                            let c2 = &c1 * v2;
                            for (i3, v3) in s3 {
                                let c3 = &c2 * v3;
                                for (i4, v4) in s4 {
                                    out.add_at(&[*i1, *i2, *i3, *i4], &(&c3 * v4));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

fn sparse(v: &[Scalar]) -> Vec<(usize, Scalar)> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

/// The three signed sums `[[r,r,r]]^α_1`, `[[r,r,r]]^α_2`, `[[r,r,r]]^α_3`.
///
/// The last term of the first sum is taken with sign `+`; see
/// [`variant_brackets_as_printed`] for the other sign.
pub fn variant_brackets(r: &RMatrix, alg: &HomTriAlgebra) -> Result<[Tensor; 3]> {
    Ok([
        signed_sum(&VARIANT_1, [r, r, r], alg)?,
        signed_sum(&VARIANT_2, [r, r, r], alg)?,
        signed_sum(&VARIANT_3, [r, r, r], alg)?,
    ])
}

/// The first variant with `−[r14, r42, r43]` as its last term.
pub fn variant_brackets_as_printed(r: &RMatrix, alg: &HomTriAlgebra) -> Result<Tensor> {
    signed_sum(&VARIANT_1_AS_PRINTED, [r, r, r], alg)
}

/// Max of `α R αᵀ − R`, the matrix form of `α^{⊗2}(r) − r`.
pub fn alpha_invariance_residual(r: &RMatrix, alpha: &TwistMap) -> Result<CheckEntry> {
    r.check_dim(alpha.dim())?;
    let a = alpha.matrix();
    let moved = &(a * r.matrix()) * &a.transpose();
    Ok(CheckEntry::exact(
        "alpha-invariance",
        (&moved - r.matrix()).max_magnitude(),
    ))
}

/// Max of `R + Rᵀ`.
pub fn skew_residual(r: &RMatrix) -> CheckEntry {
    let s = r.matrix() + &r.matrix().transpose();
    CheckEntry::exact("r skew-symmetry", s.max_magnitude())
}

/// `α^n R (α^n)ᵀ`, the matrix of `(α^{⊗2})^n(r)`.
pub fn twisted_r(r: &RMatrix, alpha: &TwistMap, n: u32) -> Result<RMatrix> {
    r.check_dim(alpha.dim())?;
    let an = alpha.matrix().pow(n);
    RMatrix::new(&(&an * r.matrix()) * &an.transpose())
}

/// Whether `ad_1(x_i, x)` or `ad_1(x, x_i)` acts on the distinguished slot.
#[derive(Clone, Copy)]
enum AdOrder {
    LegFirst,
    XFirst,
}

/// `(slot carrying ad_1, argument order, variant, insertion slot)`, all 1-based.
const AD_CONDITION_TERMS: [(usize, AdOrder, usize, usize); 8] = [
    (1, AdOrder::LegFirst, 1, 2),
    (2, AdOrder::XFirst, 1, 1),
    (3, AdOrder::XFirst, 2, 5),
    (3, AdOrder::LegFirst, 2, 4),
    (4, AdOrder::XFirst, 2, 3),
    (4, AdOrder::LegFirst, 3, 5),
    (5, AdOrder::XFirst, 3, 4),
    (5, AdOrder::LegFirst, 3, 3),
];

/// Left side of the ad condition at the basis vector `e_x`, an arity-5 tensor.
///
/// Each of the eight summands is `Σ_i (… ⊗ ad_1 ⊗ …)(V ⊗_m α(y_i))` with α on
/// every slot other than the one carrying `ad_1`.
pub fn ad_condition_tensor(r: &RMatrix, alg: &HomTriAlgebra, x: usize) -> Result<Tensor> {
    let n = alg.dim();
    r.check_dim(n)?;
    let variants = variant_brackets(r, alg)?;
    ad_condition_from_variants(r, alg, &variants, x)
}

fn ad_condition_from_variants(
    r: &RMatrix,
    alg: &HomTriAlgebra,
    variants: &[Tensor; 3],
    x: usize,
) -> Result<Tensor> {
    let n = alg.dim();
    let alpha = alg.alpha_matrix();
    let ex = crate::matrix::basis_vector(n, x);
    // α applied to Σ_b R[a][b] α(e_b): the inserted leg also passes through an α slot
    let alpha2_rt = &(&alpha.pow(2) * &r.matrix().transpose());
    let inserted: Vec<Vector> = (0..n).map(|a| alpha2_rt.column(a)).collect();
    let mut out = Tensor::zeros(n, 5);
    for (ad_slot, order, variant, at) in AD_CONDITION_TERMS {
        // α on every slot of V except the one that lands on ad_slot
        let v = &variants[variant - 1];
        let mut w = v.clone();
        for k in 1..=4 {
            let lands = if k < at { k } else { k + 1 };
            if lands != ad_slot {
                w = w.apply_one_slot(k - 1, alpha);
            }
        }
        for (a, ins) in inserted.iter().enumerate() {
            if ins.iter().all(Scalar::is_zero) {
                continue;
            }
            let ea = crate::matrix::basis_vector(n, a);
            let ad = match order {
                AdOrder::LegFirst => alg.ad1(&ea, &ex)?,
                AdOrder::XFirst => alg.ad1(&ex, &ea)?,
            };
            if ad.is_zero() {
                continue;
            }
            let t = w.insert_at(ins, at)?.apply_one_slot(ad_slot - 1, &ad);
            out.add_assign(&t);
        }
    }
    Ok(out)
}

/// Max over basis `x` of the left side of the ad condition.
pub fn ad_condition_residual(r: &RMatrix, alg: &HomTriAlgebra) -> Result<CheckEntry> {
    let n = alg.dim();
    r.check_dim(n)?;
    let variants = variant_brackets(r, alg)?;
    let mut worst = BigRational::zero();
    for x in 0..n {
        let m = ad_condition_from_variants(r, alg, &variants, x)?.max_magnitude();
        if m > worst {
            worst = m;
        }
    }
    Ok(CheckEntry::exact("ad condition", worst))
}

/// Exact CHYBE check entry.
pub fn chybe_residual(r: &RMatrix, alg: &HomTriAlgebra) -> Result<CheckEntry> {
    Ok(CheckEntry::exact(
        "chybe",
        chybe_bracket(r, alg)?.max_magnitude(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled;
    use crate::homlie::TriBracket;

    fn r23() -> RMatrix {
        RMatrix::skew_from(3, &[(1, 2, Scalar::one())])
    }

    fn r12() -> RMatrix {
        RMatrix::skew_from(3, &[(0, 1, Scalar::one())])
    }

    #[test]
    fn invariance_examples() {
        let diag = bundled::ex31_alpha_diag();
        assert!(
            alpha_invariance_residual(&r23(), &TwistMap::identity(3))
                .unwrap()
                .pass
        );
        assert!(alpha_invariance_residual(&r23(), &diag).unwrap().pass);
        assert!(!alpha_invariance_residual(&r12(), &diag).unwrap().pass);
    }

    #[test]
    fn skew_examples() {
        assert!(skew_residual(&RMatrix::zero(3)).pass);
        assert!(skew_residual(&r23()).pass);
        let mut m = Matrix::zeros(3, 3);
        m[(0, 0)] = Scalar::one();
        assert_eq!(
            skew_residual(&RMatrix::new(m).unwrap())
                .residual
                .to_string(),
            "2"
        );
    }

    #[test]
    fn occupancy_is_validated() {
        let alg = bundled::ex31_algebra();
        let r = r23();
        let f = |p, q| EmbeddedFactor::new(&r, p, q, 4).unwrap();
        assert!(embedded_triple_bracket(f(1, 2), f(1, 3), f(1, 4), &alg).is_ok());
        // no triple slot
        assert!(embedded_triple_bracket(f(1, 2), f(2, 3), f(3, 4), &alg).is_err());
        // slot 1 doubly occupied
        assert!(embedded_triple_bracket(f(1, 2), f(1, 3), f(2, 3), &alg).is_err());
        assert!(EmbeddedFactor::new(&r, 2, 2, 4).is_err());
        assert!(EmbeddedFactor::new(&r, 0, 2, 4).is_err());
        assert!(EmbeddedFactor::new(&r, 1, 5, 4).is_err());
    }

    #[test]
    fn first_embedded_term_matches_expansion() {
        // [r12, r13, r14] = Σ [x_i,x_j,x_k]⊗αy_i⊗αy_j⊗αy_k, written out for r = e1⊗e2 + 2 e3⊗e1
        let alg = bundled::ex31_twisted();
        let mut m = Matrix::zeros(3, 3);
        m[(0, 1)] = Scalar::one();
        m[(2, 0)] = Scalar::from_int(2);
        let r = RMatrix::new(m).unwrap();
        let f = |p, q| EmbeddedFactor::new(&r, p, q, 4).unwrap();
        let got = embedded_triple_bracket(f(1, 2), f(1, 3), f(1, 4), &alg).unwrap();
        let legs = [(0usize, 1usize, Scalar::one()), (2, 0, Scalar::from_int(2))];
        let alpha = alg.alpha_matrix();
        let mut want = Tensor::zeros(3, 4);
        for (xi, yi, ci) in &legs {
            for (xj, yj, cj) in &legs {
                for (xk, yk, ck) in &legs {
                    let b = alg.bracket().constant(*xi, *xj, *xk).to_vec();
                    let (a1, a2, a3) = (alpha.column(*yi), alpha.column(*yj), alpha.column(*yk));
                    let t = Tensor::product_of(&[&b, &a1, &a2, &a3]).unwrap();
                    want.add_scaled(&t, &(&(ci * cj) * ck));
                }
            }
        }
        assert_eq!(got, want);
    }

    #[test]
    fn chybe_examples() {
        let alg = bundled::ex31_algebra();
        assert!(chybe_bracket(&RMatrix::zero(3), &alg).unwrap().is_zero());
        assert!(chybe_bracket(&r23(), &alg).unwrap().is_zero());
        let abelian = HomTriAlgebra::untwisted(TriBracket::zero(3)).unwrap();
        let dense = RMatrix::new(Matrix::from_rows(vec![vec![Scalar::from_int(5); 3]; 3]).unwrap())
            .unwrap();
        assert!(chybe_bracket(&dense, &abelian).unwrap().is_zero());
        assert!(chybe_bracket(&RMatrix::zero(4), &alg).is_err());
    }

    #[test]
    fn r13_r32_r34_vanishes_on_r23() {
        let alg = bundled::ex31_algebra();
        let r = r23();
        let f = |p, q| EmbeddedFactor::new(&r, p, q, 4).unwrap();
        let t = embedded_triple_bracket(f(1, 3), f(3, 2), f(3, 4), &alg).unwrap();
        assert!(t.is_zero());
    }

    #[test]
    fn variants_on_example_instance() {
        let alg = bundled::ex31_algebra();
        for v in variant_brackets(&r23(), &alg).unwrap() {
            assert!(v.is_zero());
        }
        for v in variant_brackets(&RMatrix::zero(3), &alg).unwrap() {
            assert!(v.is_zero());
        }
    }

    #[test]
    fn ad_condition_examples() {
        let alg = bundled::ex31_algebra();
        assert!(ad_condition_residual(&RMatrix::zero(3), &alg).unwrap().pass);
        assert!(ad_condition_residual(&r23(), &alg).unwrap().pass);
    }

    #[test]
    fn twisted_r_examples() {
        let r = r23();
        assert_eq!(twisted_r(&r, &bundled::ex31_alpha_diag(), 0).unwrap(), r);
        assert_eq!(twisted_r(&r, &TwistMap::identity(3), 4).unwrap(), r);
        let alg = bundled::ex31_twisted();
        for n in 0..4 {
            let t = twisted_r(&r, alg.alpha(), n).unwrap();
            assert!(chybe_bracket(&t, &alg).unwrap().is_zero());
        }
    }
}
