//! 3-Hom-Lie algebras given by structure constants.
//!
//! A [`TriBracket`] stores all `n^4` constants `c_{ijk}^l` with
//! `[e_i, e_j, e_k] = Σ_l c_{ijk}^l e_l`; a [`TwistMap`] stores α as a matrix
//! whose column `j` is `α(e_j)`.

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::{sub_vectors, zero_vector, Matrix, Vector};
use crate::report::CheckEntry;
use crate::scalar::{max_magnitude, Scalar};
use crate::tensor::S3;

/// ω_m acting on argument tuples: new position `k` takes old position `OMEGA[m][k]`.
const OMEGA_ARGS: [[usize; 5]; 3] = [[3, 4, 1, 2, 5], [4, 5, 1, 2, 3], [5, 3, 1, 2, 4]];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriBracket {
    dim: usize,
    c: Vec<Scalar>,
}

impl TriBracket {
    pub fn zero(dim: usize) -> Self {
        TriBracket {
            dim,
            c: vec![Scalar::zero(); dim.pow(4)],
        }
    }

    /// Builds a fully antisymmetric bracket from generator entries
    /// `(i, j, k, [e_i, e_j, e_k])` with 0-based, pairwise distinct indices.
    /// Entries may be given in any order of `(i, j, k)`; the antisymmetric
    /// images are filled in, and two entries that disagree after
    /// antisymmetrization are rejected.
    pub fn from_generators(dim: usize, entries: &[(usize, usize, usize, Vector)]) -> Result<Self> {
        let mut b = TriBracket::zero(dim);
        let mut assigned = vec![false; dim.pow(3)];
        for (i, j, k, value) in entries {
            let (i, j, k) = (*i, *j, *k);
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::Invalid(format!(
                    "bracket index ({}, {}, {}) out of range for dim {dim}",
                    i + 1,
                    j + 1,
                    k + 1
                )));
            }
            if value.len() != dim {
                return Err(Error::Dimension(format!(
                    "bracket value for ({}, {}, {}) has length {}, expected {dim}",
                    i + 1,
                    j + 1,
                    k + 1,
                    value.len()
                )));
            }
            if i == j || j == k || i == k {
                if value.iter().all(Scalar::is_zero) {
                    continue;
                }
                return Err(Error::Invalid(format!(
                    "bracket ({}, {}, {}) has a repeated index but a nonzero value",
                    i + 1,
                    j + 1,
                    k + 1
                )));
            }
            let args = [i, j, k];
            for (perm, sign) in S3 {
                let (a, bb, cc) = (args[perm[0] - 1], args[perm[1] - 1], args[perm[2] - 1]);
                let signed: Vector = value.iter().map(|v| v * &Scalar::from_int(sign)).collect();
                let slot = (a * dim + bb) * dim + cc;
                if assigned[slot] {
                    if b.constant(a, bb, cc) != signed.as_slice() {
                        return Err(Error::Invalid(format!(
                            "bracket entry ({}, {}, {}) conflicts with an earlier entry under antisymmetry",
                            i + 1,
                            j + 1,
                            k + 1
                        )));
                    }
                } else {
                    assigned[slot] = true;
                    b.set_constant(a, bb, cc, &signed);
                }
            }
        }
        Ok(b)
    }

    /// Raw constants in `((i·n + j)·n + k)·n + l` order, without enforcing
    /// antisymmetry. Used to examine defective input.
    pub fn from_dense_unchecked(dim: usize, c: Vec<Scalar>) -> Result<Self> {
        if c.len() != dim.pow(4) {
            return Err(Error::Dimension(format!(
                "expected {} structure constants, got {}",
                dim.pow(4),
                c.len()
            )));
        }
        Ok(TriBracket { dim, c })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn dense(&self) -> &[Scalar] {
        &self.c
    }

    /// `[e_i, e_j, e_k]` as a coefficient slice.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> &[Scalar] {
        let n = self.dim;
        let at = ((i * n + j) * n + k) * n;
        &self.c[at..at + n]
    }

    fn set_constant(&mut self, i: usize, j: usize, k: usize, v: &[Scalar]) {
        let n = self.dim;
        let at = ((i * n + j) * n + k) * n;
        self.c[at..at + n].clone_from_slice(v);
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().all(Scalar::is_zero)
    }

    /// Generators `i < j < k` with nonzero value, 0-based.
    pub fn generators(&self) -> Vec<(usize, usize, usize, Vector)> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let v = self.constant(i, j, k);
                    if v.iter().any(|x| !x.is_zero()) {
                        out.push((i, j, k, v.to_vec()));
                    }
                }
            }
        }
        out
    }

    /// Trilinear extension of the structure constants.
    pub fn eval(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Result<Vector> {
        let n = self.dim;
        if x.len() != n || y.len() != n || z.len() != n {
            return Err(Error::Dimension(format!(
                "bracket arguments must have length {n}"
            )));
        }
        let mut out = zero_vector(n);
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let xy = xi * yj;
                for (k, zk) in z.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                    let coef = &xy * zk;
                    for (l, c) in self.constant(i, j, k).iter().enumerate() {
                        if !c.is_zero() {
                            out[l] += &(&coef * c);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// `α ∘ [·,·,·]`.
    pub fn compose_left(&self, alpha: &Matrix) -> TriBracket {
        let n = self.dim;
        let mut out = TriBracket::zero(n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let v = alpha.mul_vec(self.constant(i, j, k));
                    out.set_constant(i, j, k, &v);
                }
            }
        }
        out
    }
}

/// The twisting map α: L → L.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistMap(Matrix);

impl TwistMap {
    pub fn new(m: Matrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Dimension(format!(
                "twist map must be square, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        Ok(TwistMap(m))
    }

    pub fn identity(n: usize) -> Self {
        TwistMap(Matrix::identity(n))
    }

    pub fn diag(entries: &[Scalar]) -> Self {
        TwistMap(Matrix::diag(entries))
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn apply(&self, v: &[Scalar]) -> Vector {
        self.0.mul_vec(v)
    }

    /// α^k; negative `k` requires α to be invertible.
    pub fn power(&self, k: i64) -> Result<Matrix> {
        self.0.signed_pow(k).map_err(|e| match e {
            Error::Singular => Error::Invalid(format!(
                "α^{k} with negative exponent requires an invertible α"
            )),
            other => other,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomTriAlgebra {
    bracket: TriBracket,
    alpha: TwistMap,
    multiplicative: bool,
}

impl HomTriAlgebra {
    /// Pairs a bracket with a twist map without checking the Hom-Jacobi
    /// identity; the multiplicativity flag is computed.
    pub fn new_unchecked(bracket: TriBracket, alpha: TwistMap) -> Result<Self> {
        if bracket.dim() != alpha.dim() {
            return Err(Error::Dimension(format!(
                "bracket has dim {}, α has dim {}",
                bracket.dim(),
                alpha.dim()
            )));
        }
        let mut alg = HomTriAlgebra {
            bracket,
            alpha,
            multiplicative: false,
        };
        alg.multiplicative = multiplicative_residual(&alg).pass;
        Ok(alg)
    }

    /// Like [`HomTriAlgebra::new_unchecked`] but rejects input whose
    /// skew-symmetry or Hom-Jacobi residual is nonzero.
    pub fn new(bracket: TriBracket, alpha: TwistMap) -> Result<Self> {
        let alg = Self::new_unchecked(bracket, alpha)?;
        for entry in [skew_residual(&alg.bracket), hom_jacobi_residual(&alg)] {
            if !entry.pass {
                return Err(Error::Residual {
                    check: entry.name,
                    residual: entry.residual.to_string(),
                });
            }
        }
        Ok(alg)
    }

    /// The 3-Lie algebra `(L, [·,·,·], id)`.
    pub fn untwisted(bracket: TriBracket) -> Result<Self> {
        let n = bracket.dim();
        Self::new_unchecked(bracket, TwistMap::identity(n))
    }

    pub fn dim(&self) -> usize {
        self.bracket.dim()
    }

    pub fn bracket(&self) -> &TriBracket {
        &self.bracket
    }

    pub fn alpha(&self) -> &TwistMap {
        &self.alpha
    }

    pub fn alpha_matrix(&self) -> &Matrix {
        self.alpha.matrix()
    }

    pub fn is_multiplicative(&self) -> bool {
        self.multiplicative
    }

    pub fn is_real(&self) -> bool {
        self.bracket.dense().iter().all(Scalar::is_real) && self.alpha.matrix().is_real()
    }

    pub fn bracket_eval(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Result<Vector> {
        self.bracket.eval(x, y, z)
    }

    /// Matrix of `z ↦ [u, v, z]`.
    pub(crate) fn left_mult(&self, u: &[Scalar], v: &[Scalar]) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for (i, ui) in u.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, vj) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                let uv = ui * vj;
                for k in 0..n {
                    for (l, c) in self.bracket.constant(i, j, k).iter().enumerate() {
                        if !c.is_zero() {
                            m[(l, k)] += &(&uv * c);
                        }
                    }
                }
            }
        }
        m
    }

    /// `ad_1(x, y)`: the matrix of `z ↦ [α(x), α(y), z]`.
    pub fn ad1(&self, x: &[Scalar], y: &[Scalar]) -> Result<Matrix> {
        let n = self.dim();
        if x.len() != n || y.len() != n {
            return Err(Error::Dimension(format!(
                "ad_1 arguments must have length {n}"
            )));
        }
        Ok(self.left_mult(&self.alpha.apply(x), &self.alpha.apply(y)))
    }

    /// `ad_1(e_i, e_j)` for all basis pairs, indexed `i·n + j`.
    pub(crate) fn ad1_basis(&self) -> Vec<Matrix> {
        let n = self.dim();
        let cols: Vec<Vector> = (0..n).map(|i| self.alpha.matrix().column(i)).collect();
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                out.push(self.left_mult(&cols[i], &cols[j]));
            }
        }
        out
    }

    /// The inner derivation `z ↦ [x, y, α^k(z)]` for α-fixed `x`, `y`.
    pub fn inner_derivation(&self, x: &[Scalar], y: &[Scalar], k: i64) -> Result<Matrix> {
        let n = self.dim();
        if x.len() != n || y.len() != n {
            return Err(Error::Dimension(format!("arguments must have length {n}")));
        }
        let fixed = max_magnitude(
            sub_vectors(&self.alpha.apply(x), x)
                .iter()
                .chain(sub_vectors(&self.alpha.apply(y), y).iter()),
        );
        if !fixed.is_zero() {
            return Err(Error::Residual {
                check: "alpha-fixed point".into(),
                residual: Scalar::Real(fixed).to_string(),
            });
        }
        let ak = self.alpha.power(k)?;
        Ok(&self.left_mult(x, y) * &ak)
    }

    /// `(L, α∘[·,·,·], α)` built from this algebra's bracket.
    pub fn twisted_by(&self, phi: &TwistMap) -> Result<HomTriAlgebra> {
        twist(&self.bracket, phi)
    }
}

/// Max of `c_{ijk}^l + c_{jik}^l` and `c_{ijk}^l + c_{ikj}^l`.
pub fn skew_residual(b: &TriBracket) -> CheckEntry {
    let n = b.dim();
    let mut worst = BigRational::zero();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let here = b.constant(i, j, k);
                for other in [b.constant(j, i, k), b.constant(i, k, j)] {
                    for (a, c) in here.iter().zip(other) {
                        let m = (a + c).magnitude();
                        if m > worst {
                            worst = m;
                        }
                    }
                }
            }
        }
    }
    CheckEntry::exact("skew-symmetry", worst)
}

/// `μ(α⊗α⊗μ)(1 − ω1 − ω2 − ω3)` on every basis 5-tuple.
pub fn hom_jacobi_residual(alg: &HomTriAlgebra) -> CheckEntry {
    let n = alg.dim();
    let ad = alg.ad1_basis();
    let b = alg.bracket();
    let outer =
        |y: &[usize; 5]| -> Vector { ad[y[0] * n + y[1]].mul_vec(b.constant(y[2], y[3], y[4])) };
    let mut worst = BigRational::zero();
    let mut x = [0usize; 5];
    for flat in 0..n.pow(5) {
        let mut f = flat;
        for slot in (0..5).rev() {
            x[slot] = f % n;
            f /= n;
        }
        let mut acc = outer(&x);
        for perm in OMEGA_ARGS {
            let y = [
                x[perm[0] - 1],
                x[perm[1] - 1],
                x[perm[2] - 1],
                x[perm[3] - 1],
                x[perm[4] - 1],
            ];
            acc = sub_vectors(&acc, &outer(&y));
        }
        let m = max_magnitude(&acc);
        if m > worst {
            worst = m;
        }
    }
    CheckEntry::exact("hom-jacobi", worst)
}

/// `max |φ([e_i,e_j,e_k]) − [φ(e_i), φ(e_j), φ(e_k)]|` over basis triples.
pub fn morphism_residual(b: &TriBracket, phi: &Matrix) -> BigRational {
    let n = b.dim();
    let cols: Vec<Vector> = (0..n).map(|i| phi.column(i)).collect();
    let mut worst = BigRational::zero();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let lhs = phi.mul_vec(b.constant(i, j, k));
                let rhs = b.eval(&cols[i], &cols[j], &cols[k]).expect("dims checked");
                let m = max_magnitude(&sub_vectors(&lhs, &rhs));
                if m > worst {
                    worst = m;
                }
            }
        }
    }
    worst
}

/// `α[·,·,·] = [·,·,·]∘α^{⊗3}` on basis triples.
pub fn multiplicative_residual(alg: &HomTriAlgebra) -> CheckEntry {
    CheckEntry::exact(
        "multiplicativity",
        morphism_residual(alg.bracket(), alg.alpha_matrix()),
    )
}

/// Defect of `D` as an α^k-derivation, including the commutation `D∘α = α∘D`.
pub fn derivation_residual(alg: &HomTriAlgebra, d: &Matrix, k: i64) -> Result<CheckEntry> {
    let n = alg.dim();
    if d.rows() != n || d.cols() != n {
        return Err(Error::Dimension(format!("derivation must be {n}x{n}")));
    }
    let ak = alg.alpha().power(k)?;
    let a = alg.alpha_matrix();
    let mut worst = (&(d * a) - &(a * d)).max_magnitude();
    let dcols: Vec<Vector> = (0..n).map(|i| d.column(i)).collect();
    let akcols: Vec<Vector> = (0..n).map(|i| ak.column(i)).collect();
    let b = alg.bracket();
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                let mut v = d.mul_vec(b.constant(i, j, l));
                for term in [
                    b.eval(&dcols[i], &akcols[j], &akcols[l])?,
                    b.eval(&akcols[i], &dcols[j], &akcols[l])?,
                    b.eval(&akcols[i], &akcols[j], &dcols[l])?,
                ] {
                    v = sub_vectors(&v, &term);
                }
                let m = max_magnitude(&v);
                if m > worst {
                    worst = m;
                }
            }
        }
    }
    Ok(CheckEntry::exact(format!("alpha^{k}-derivation"), worst))
}

/// The twist `L_φ = (L, φ∘[·,·,·], φ)` of a 3-Lie algebra by an endomorphism.
pub fn twist(b: &TriBracket, phi: &TwistMap) -> Result<HomTriAlgebra> {
    if b.dim() != phi.dim() {
        return Err(Error::Dimension(format!(
            "bracket has dim {}, twist map has dim {}",
            b.dim(),
            phi.dim()
        )));
    }
    let base = HomTriAlgebra::untwisted(b.clone())?;
    let fi = hom_jacobi_residual(&base);
    if !fi.pass {
        return Err(Error::Residual {
            check: "fundamental identity".into(),
            residual: fi.residual.to_string(),
        });
    }
    let morph = morphism_residual(b, phi.matrix());
    if !morph.is_zero() {
        return Err(Error::Residual {
            check: "morphism".into(),
            residual: Scalar::Real(morph).to_string(),
        });
    }
    HomTriAlgebra::new_unchecked(b.compose_left(phi.matrix()), phi.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled;
    use crate::matrix::basis_vector;

    fn v(n: usize, i: usize) -> Vector {
        basis_vector(n, i)
    }

    fn alpha_half() -> TwistMap {
        TwistMap::diag(&[Scalar::one(), Scalar::from_int(2), Scalar::ratio(1, 2)])
    }

    #[test]
    fn example_bracket_values() {
        let alg = bundled::ex31_algebra();
        assert_eq!(
            alg.bracket_eval(&v(3, 0), &v(3, 1), &v(3, 2)).unwrap(),
            v(3, 0)
        );
        let neg: Vector = v(3, 0).iter().map(|x| -x).collect();
        assert_eq!(alg.bracket_eval(&v(3, 1), &v(3, 0), &v(3, 2)).unwrap(), neg);
        let x = vec![
            Scalar::from_int(2),
            Scalar::ratio(1, 3),
            Scalar::from_int(-1),
        ];
        let y = vec![Scalar::one(), Scalar::zero(), Scalar::from_int(5)];
        assert!(alg
            .bracket_eval(&x, &x, &y)
            .unwrap()
            .iter()
            .all(Scalar::is_zero));
        assert!(alg.bracket_eval(&x, &y, &v(2, 0)).is_err());
    }

    #[test]
    fn generator_validation() {
        let one = v(3, 0);
        // consistent duplicates under antisymmetry are accepted
        let ok = TriBracket::from_generators(
            3,
            &[
                (0, 1, 2, one.clone()),
                (1, 0, 2, one.iter().map(|x| -x).collect()),
            ],
        );
        assert!(ok.is_ok());
        let clash =
            TriBracket::from_generators(3, &[(0, 1, 2, one.clone()), (1, 0, 2, one.clone())]);
        assert!(clash.is_err());
        assert!(TriBracket::from_generators(3, &[(0, 0, 2, one.clone())]).is_err());
        assert!(TriBracket::from_generators(3, &[(0, 1, 3, one)]).is_err());
    }

    #[test]
    fn skew_residual_examples() {
        assert!(skew_residual(&TriBracket::zero(3)).pass);
        assert!(skew_residual(bundled::ex31_algebra().bracket()).pass);
        let mut dense = vec![Scalar::zero(); 81];
        // c_{123}^1 = 1 and c_{213}^1 = 1
        dense[(3 + 2) * 3] = Scalar::one();
        dense[(3 * 3 + 2) * 3] = Scalar::one();
        let broken = TriBracket::from_dense_unchecked(3, dense).unwrap();
        let entry = skew_residual(&broken);
        assert!(!entry.pass);
        assert_eq!(entry.residual.to_string(), "2");
    }

    #[test]
    fn hom_jacobi_examples() {
        let abelian = HomTriAlgebra::new_unchecked(TriBracket::zero(3), alpha_half()).unwrap();
        assert!(hom_jacobi_residual(&abelian).pass);
        assert!(hom_jacobi_residual(&bundled::ex31_algebra()).pass);
        let twisted = twist(bundled::ex31_algebra().bracket(), &alpha_half()).unwrap();
        assert!(hom_jacobi_residual(&twisted).pass);
    }

    #[test]
    fn multiplicative_examples() {
        let b = bundled::ex31_algebra().bracket().clone();
        let ok = HomTriAlgebra::new_unchecked(b.clone(), alpha_half()).unwrap();
        assert!(ok.is_multiplicative());
        let bad_alpha = TwistMap::diag(&[Scalar::one(), Scalar::from_int(2), Scalar::one()]);
        let bad = HomTriAlgebra::new_unchecked(b, bad_alpha).unwrap();
        let entry = multiplicative_residual(&bad);
        assert_eq!(entry.residual.to_string(), "1");
        assert!(!bad.is_multiplicative());
    }

    #[test]
    fn ad1_examples() {
        let alg = bundled::ex31_algebra();
        assert!(alg.ad1(&v(3, 1), &v(3, 1)).unwrap().is_zero());
        let m = alg.ad1(&v(3, 1), &v(3, 2)).unwrap();
        let mut want = Matrix::zeros(3, 3);
        want[(0, 0)] = Scalar::one();
        assert_eq!(m, want);
        let tw = HomTriAlgebra::new_unchecked(alg.bracket().clone(), alpha_half()).unwrap();
        let m = tw.ad1(&v(3, 0), &v(3, 1)).unwrap();
        let mut want = Matrix::zeros(3, 3);
        want[(0, 2)] = Scalar::from_int(2);
        assert_eq!(m, want);
    }

    #[test]
    fn inner_derivations() {
        let alg = bundled::ex31_algebra();
        assert!(alg
            .inner_derivation(&v(3, 1), &v(3, 1), 0)
            .unwrap()
            .is_zero());
        let d = alg.inner_derivation(&v(3, 1), &v(3, 2), 0).unwrap();
        let mut want = Matrix::zeros(3, 3);
        want[(0, 0)] = Scalar::one();
        assert_eq!(d, want);
        assert!(derivation_residual(&alg, &d, 1).unwrap().pass);
        assert!(
            derivation_residual(&alg, &Matrix::zeros(3, 3), 0)
                .unwrap()
                .pass
        );

        let tw = HomTriAlgebra::new_unchecked(alg.bracket().clone(), alpha_half()).unwrap();
        // e1 is the only α-fixed basis vector here; e2 is not
        let err = tw.inner_derivation(&v(3, 0), &v(3, 1), 0).unwrap_err();
        assert!(matches!(err, Error::Residual { .. }));
        // negative powers need an invertible α
        assert!(tw.inner_derivation(&v(3, 0), &v(3, 0), -2).is_ok());
        let singular = HomTriAlgebra::new_unchecked(
            alg.bracket().clone(),
            TwistMap::diag(&[Scalar::one(), Scalar::zero(), Scalar::zero()]),
        )
        .unwrap();
        assert!(derivation_residual(&singular, &Matrix::zeros(3, 3), -1).is_err());
    }

    #[test]
    fn twist_examples() {
        let b = bundled::ex31_algebra().bracket().clone();
        let same = twist(&b, &TwistMap::identity(3)).unwrap();
        assert_eq!(same, bundled::ex31_algebra());
        let tw = twist(&b, &alpha_half()).unwrap();
        assert_eq!(tw.bracket().constant(0, 1, 2), v(3, 0).as_slice());
        let zero = twist(&b, &TwistMap::new(Matrix::zeros(3, 3)).unwrap()).unwrap();
        assert!(zero.bracket().is_abelian());
        assert!(hom_jacobi_residual(&zero).pass && multiplicative_residual(&zero).pass);
        let bad = TwistMap::diag(&[Scalar::one(), Scalar::from_int(2), Scalar::one()]);
        assert!(matches!(twist(&b, &bad), Err(Error::Residual { .. })));
    }
}
