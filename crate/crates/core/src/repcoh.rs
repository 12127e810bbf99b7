//! Representations, cochains and the coboundary operators.

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::homlie::HomTriAlgebra;
use crate::matrix::{
    add_vectors, basis_vector, scale_vector, sub_vectors, zero_vector, Matrix, Vector,
};
use crate::report::{CheckEntry, VerificationReport};
use crate::scalar::{max_magnitude, Scalar};
use crate::tensor::Tensor;

/// A representation `ρ: L∧L → gl(V)` together with the structure map `A ∈ gl(V)`.
///
/// ρ is stored on basis pairs `i < j` and extended by antisymmetry and
/// bilinearity.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation {
    dim: usize,
    module_dim: usize,
    a: Matrix,
    /// `ρ(e_i, e_j)` for `i < j`, in lexicographic order.
    upper: Vec<Matrix>,
}

impl Representation {
    /// Builds a representation from `ρ(e_i, e_j)` on all ordered basis pairs,
    /// indexed `i·n + j`. Rejects input that is not antisymmetric.
    pub fn from_basis_pairs(dim: usize, a: Matrix, rho: Vec<Matrix>) -> Result<Self> {
        let m = a.rows();
        if !a.is_square() {
            return Err(Error::Dimension("structure map A must be square".into()));
        }
        if rho.len() != dim * dim {
            return Err(Error::Dimension(format!(
                "expected {} ρ matrices, got {}",
                dim * dim,
                rho.len()
            )));
        }
        if rho.iter().any(|r| r.rows() != m || r.cols() != m) {
            return Err(Error::Dimension(format!(
                "every ρ(e_i, e_j) must be {m}x{m}"
            )));
        }
        for i in 0..dim {
            if !rho[i * dim + i].is_zero() {
                return Err(Error::Invalid(format!("ρ(e{0}, e{0}) is nonzero", i + 1)));
            }
            for j in i + 1..dim {
                if rho[i * dim + j] != -&rho[j * dim + i] {
                    return Err(Error::Invalid(format!(
                        "ρ(e{}, e{}) ≠ −ρ(e{}, e{})",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        let mut upper = Vec::with_capacity(dim * dim.saturating_sub(1) / 2);
        for i in 0..dim {
            for j in i + 1..dim {
                upper.push(rho[i * dim + j].clone());
            }
        }
        Ok(Representation {
            dim,
            module_dim: m,
            a,
            upper,
        })
    }

    /// The zero representation on a module of dimension `m` with structure map `a`.
    pub fn zero(dim: usize, a: Matrix) -> Result<Self> {
        let m = a.rows();
        Self::from_basis_pairs(dim, a, vec![Matrix::zeros(m, m); dim * dim])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn module_dim(&self) -> usize {
        self.module_dim
    }

    pub fn structure_map(&self) -> &Matrix {
        &self.a
    }

    fn pair_index(&self, i: usize, j: usize) -> usize {
        // position of (i, j), i < j, in lexicographic order
        i * self.dim - i * (i + 1) / 2 + (j - i - 1)
    }

    pub fn rho_basis(&self, i: usize, j: usize) -> Matrix {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => Matrix::zeros(self.module_dim, self.module_dim),
            std::cmp::Ordering::Less => self.upper[self.pair_index(i, j)].clone(),
            std::cmp::Ordering::Greater => -&self.upper[self.pair_index(j, i)],
        }
    }

    /// `ρ(u, v) = Σ_{i<j} (u_i v_j − u_j v_i) ρ(e_i, e_j)`.
    pub fn rho(&self, u: &[Scalar], v: &[Scalar]) -> Matrix {
        assert_eq!(u.len(), self.dim, "ρ argument has wrong length");
        assert_eq!(v.len(), self.dim, "ρ argument has wrong length");
        let m = self.module_dim;
        let mut out = Matrix::zeros(m, m);
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let coef = &(&u[i] * &v[j]) - &(&u[j] * &v[i]);
                if coef.is_zero() {
                    continue;
                }
                let r = &self.upper[self.pair_index(i, j)];
                out = &out + &r.scale(&coef);
            }
        }
        out
    }
}

fn check_rep_dims(alg: &HomTriAlgebra, rep: &Representation) -> Result<()> {
    if alg.dim() != rep.dim() {
        return Err(Error::Dimension(format!(
            "algebra has dim {}, representation is over dim {}",
            alg.dim(),
            rep.dim()
        )));
    }
    Ok(())
}

/// Residuals of the three representation conditions:
///
/// - (i)   `ρ(α(a), α(b))∘A = A∘ρ(a, b)`
/// - (ii)  `ρ(α(b),α(c))ρ(a,d) + ρ(α(c),α(a))ρ(b,d) − ρ([a,b,c],α(d))∘A + ρ(α(a),α(b))ρ(c,d) = 0`
/// - (iii) `ρ(α(c),α(d))ρ(a,b) − ρ(α(a),α(b))ρ(c,d) + ρ([a,b,c],α(d))∘A + ρ(α(c),[a,b,d])∘A = 0`
///
/// Signs and orderings are taken exactly as stated above.
pub fn rep_residuals(alg: &HomTriAlgebra, rep: &Representation) -> Result<VerificationReport> {
    check_rep_dims(alg, rep)?;
    let n = alg.dim();
    let a_map = rep.structure_map();
    let acols: Vec<Vector> = (0..n).map(|i| alg.alpha_matrix().column(i)).collect();
    let rho_aa: Vec<Matrix> = (0..n * n)
        .map(|k| rep.rho(&acols[k / n], &acols[k % n]))
        .collect();
    let rho_b: Vec<Matrix> = (0..n * n).map(|k| rep.rho_basis(k / n, k % n)).collect();

    let mut worst = [
        BigRational::zero(),
        BigRational::zero(),
        BigRational::zero(),
    ];
    let mut bump = |slot: usize, m: BigRational| {
        if m > worst[slot] {
            worst[slot] = m;
        }
    };
    for a in 0..n {
        for b in 0..n {
            let lhs = &rho_aa[a * n + b] * a_map;
            let rhs = a_map * &rho_b[a * n + b];
            bump(0, (&lhs - &rhs).max_magnitude());
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let abc = alg.bracket().constant(a, b, c).to_vec();
                for d in 0..n {
                    let abd = alg.bracket().constant(a, b, d).to_vec();
                    let ii = &(&(&(&rho_aa[b * n + c] * &rho_b[a * n + d])
                        + &(&rho_aa[c * n + a] * &rho_b[b * n + d]))
                        - &(&rep.rho(&abc, &acols[d]) * a_map))
                        + &(&rho_aa[a * n + b] * &rho_b[c * n + d]);
                    bump(1, ii.max_magnitude());
                    let iii = &(&(&(&rho_aa[c * n + d] * &rho_b[a * n + b])
                        - &(&rho_aa[a * n + b] * &rho_b[c * n + d]))
                        + &(&rep.rho(&abc, &acols[d]) * a_map))
                        + &(&rep.rho(&acols[c], &abd) * a_map);
                    bump(2, iii.max_magnitude());
                }
            }
        }
    }
    let [w1, w2, w3] = worst;
    Ok([
        CheckEntry::exact("representation (i)", w1),
        CheckEntry::exact("representation (ii)", w2),
        CheckEntry::exact("representation (iii)", w3),
    ]
    .into_iter()
    .collect())
}

/// The adjoint representation `ad_1` on `V = L` with `A = α`.
pub fn adjoint_rep(alg: &HomTriAlgebra) -> Representation {
    Representation::from_basis_pairs(alg.dim(), alg.alpha_matrix().clone(), alg.ad1_basis())
        .expect("ad_1 is antisymmetric by construction")
}

/// `(L⊗L⊗L, ad_1⊗α⊗α)` and its slot-2 and slot-3 analogues; `slot` is 1-based.
pub fn local_rep(alg: &HomTriAlgebra, slot: usize) -> Result<Representation> {
    if !(1..=3).contains(&slot) {
        return Err(Error::Slot { slot, max: 3 });
    }
    let alpha = alg.alpha_matrix();
    let a3 = alpha.kron(alpha).kron(alpha);
    let rho = alg
        .ad1_basis()
        .into_iter()
        .map(|ad| {
            let mut factors = [alpha, alpha, alpha];
            factors[slot - 1] = &ad;
            factors[0].kron(factors[1]).kron(factors[2])
        })
        .collect();
    Representation::from_basis_pairs(alg.dim(), a3, rho)
}

/// A multilinear map `f: L^{⊗p} → V`, stored as the `m × n^p` matrix whose
/// column for a basis tuple is `f` of that tuple.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain {
    dim: usize,
    arity: usize,
    coeffs: Matrix,
}

impl Cochain {
    pub fn new(dim: usize, arity: usize, coeffs: Matrix) -> Result<Self> {
        if coeffs.cols() != dim.pow(arity as u32) {
            return Err(Error::Dimension(format!(
                "a {arity}-cochain on dim {dim} needs {} columns, got {}",
                dim.pow(arity as u32),
                coeffs.cols()
            )));
        }
        Ok(Cochain { dim, arity, coeffs })
    }

    pub fn zero(dim: usize, arity: usize, module_dim: usize) -> Self {
        Cochain {
            dim,
            arity,
            coeffs: Matrix::zeros(module_dim, dim.pow(arity as u32)),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn module_dim(&self) -> usize {
        self.coeffs.rows()
    }

    pub fn coeffs(&self) -> &Matrix {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    /// Multilinear evaluation on arbitrary vectors.
    pub fn eval(&self, args: &[&[Scalar]]) -> Vector {
        assert_eq!(
            args.len(),
            self.arity,
            "cochain evaluated on wrong number of arguments"
        );
        if self.arity == 0 {
            return self.coeffs.column(0);
        }
        let t = Tensor::product_of(args).expect("arguments share the algebra dimension");
        self.coeffs.mul_vec(t.data())
    }

    pub fn eval_basis(&self, tuple: &[usize]) -> Vector {
        let flat = tuple.iter().fold(0, |acc, &i| acc * self.dim + i);
        self.coeffs.column(flat)
    }
}

/// `max |A(f(t)) − f(α^{⊗p}(t))|` over basis tuples `t`.
pub fn is_cochain(alg: &HomTriAlgebra, f: &Cochain, rep: &Representation) -> Result<CheckEntry> {
    check_rep_dims(alg, rep)?;
    if f.module_dim() != rep.module_dim() || f.dim != alg.dim() {
        return Err(Error::Dimension(
            "cochain does not match the representation".into(),
        ));
    }
    let alpha = alg.alpha_matrix();
    let mut ap = Matrix::identity(1);
    for _ in 0..f.arity {
        ap = ap.kron(alpha);
    }
    let lhs = rep.structure_map() * f.coeffs();
    let rhs = f.coeffs() * &ap;
    Ok(CheckEntry::exact("cochain", (&lhs - &rhs).max_magnitude()))
}

/// The coboundary `δ: C^p → C^{p+2}`.
///
/// For odd `p = 2N − 1` the arguments are `x_1, …, x_{2N+1}` and ρ is
/// evaluated on `α^{N−1}`-images; for even `p = 2N` a distinguished first
/// argument `y` is carried along and ρ uses `α^N`. In the final double sum
/// the bracket `[x_{2k−1}, x_{2k}, x_j]` replaces `x_j` without α while every
/// other surviving argument (including `y`) is hit by α once.
pub fn coboundary(alg: &HomTriAlgebra, f: &Cochain, rep: &Representation) -> Result<Cochain> {
    check_rep_dims(alg, rep)?;
    if f.arity == 0 {
        return Err(Error::Invalid(
            "coboundary of a 0-cochain is not defined".into(),
        ));
    }
    if f.module_dim() != rep.module_dim() || f.dim != alg.dim() {
        return Err(Error::Dimension(
            "cochain does not match the representation".into(),
        ));
    }
    let n = alg.dim();
    let p = f.arity;
    let even = p.is_multiple_of(2);
    let big_n = if even { p / 2 } else { p.div_ceil(2) };
    let exp = if even { big_n } else { big_n - 1 };
    let alpha_e = alg.alpha_matrix().pow(exp as u32);
    let alpha = alg.alpha_matrix();
    let out_arity = p + 2;
    let m = rep.module_dim();
    let mut coeffs = Matrix::zeros(m, n.pow(out_arity as u32));
    let e: Vec<Vector> = (0..n).map(|i| basis_vector(n, i)).collect();
    let mut tuple = vec![0usize; out_arity];

    for flat in 0..n.pow(out_arity as u32) {
        let mut rest = flat;
        for slot in (0..out_arity).rev() {
            tuple[slot] = rest % n;
            rest /= n;
        }
        let (lead, xs): (Option<&Vector>, Vec<&Vector>) = if even {
            (
                Some(&e[tuple[0]]),
                tuple[1..].iter().map(|&i| &e[i]).collect(),
            )
        } else {
            (None, tuple.iter().map(|&i| &e[i]).collect())
        };
        // x_k for 1-based k
        let x = |k: usize| xs[k - 1];
        let rho_e = |u: &Vector, v: &Vector| rep.rho(&alpha_e.mul_vec(u), &alpha_e.mul_vec(v));
        let call = |args: Vec<Vector>| -> Vector {
            let mut full: Vec<Vector> = Vec::with_capacity(p);
            if let Some(y) = lead {
                full.push(y.clone());
            }
            full.extend(args);
            let refs: Vec<&[Scalar]> = full.iter().map(Vec::as_slice).collect();
            f.eval(&refs)
        };
        let upto = |hi: usize, skip: &[usize]| -> Vec<Vector> {
            (1..=hi)
                .filter(|k| !skip.contains(k))
                .map(|k| x(k).clone())
                .collect()
        };

        let two_n = 2 * big_n;
        let mut acc = rho_e(x(two_n), x(two_n + 1)).mul_vec(&call(upto(two_n - 1, &[])));
        let mut b_args = upto(two_n - 2, &[]);
        b_args.push(x(two_n).clone());
        acc = sub_vectors(
            &acc,
            &rho_e(x(two_n - 1), x(two_n + 1)).mul_vec(&call(b_args)),
        );
        for k in 1..=big_n {
            let sign = Scalar::from_int(if (big_n + k) % 2 == 0 { 1 } else { -1 });
            let term =
                rho_e(x(2 * k - 1), x(2 * k)).mul_vec(&call(upto(two_n + 1, &[2 * k - 1, 2 * k])));
            acc = add_vectors(&acc, &scale_vector(&term, &sign));
        }
        for k in 1..=big_n {
            let sign = Scalar::from_int(if (big_n + k + 1) % 2 == 0 { 1 } else { -1 });
            for j in 2 * k + 1..=two_n + 1 {
                let inner = alg.bracket_eval(x(2 * k - 1), x(2 * k), x(j))?;
                let mut args: Vec<Vector> = Vec::with_capacity(p);
                if let Some(y) = lead {
                    args.push(alpha.mul_vec(y));
                }
                for idx in (1..=two_n + 1).filter(|&i| i != 2 * k - 1 && i != 2 * k) {
                    args.push(if idx == j {
                        inner.clone()
                    } else {
                        alpha.mul_vec(x(idx))
                    });
                }
                let refs: Vec<&[Scalar]> = args.iter().map(Vec::as_slice).collect();
                let term = f.eval(&refs);
                acc = add_vectors(&acc, &scale_vector(&term, &sign));
            }
        }
        for (row, v) in acc.into_iter().enumerate() {
            coeffs[(row, flat)] = v;
        }
    }
    Cochain::new(n, out_arity, coeffs)
}

/// `max |δ(δ f)|`. Zero whenever `f` passes [`is_cochain`]; arbitrary
/// coefficient matrices can give a nonzero value when α is not the identity.
pub fn coboundary_squared_residual(
    alg: &HomTriAlgebra,
    f: &Cochain,
    rep: &Representation,
) -> Result<CheckEntry> {
    let once = coboundary(alg, f, rep)?;
    let twice = coboundary(alg, &once, rep)?;
    Ok(CheckEntry::exact(
        "coboundary squared",
        twice.coeffs().max_magnitude(),
    ))
}

/// Defect of `f([x,y,z]) = ρ(x,y)f(z) + ρ(y,z)f(x) + ρ(z,x)f(y)` over basis
/// triples; `f` is the `m × n` matrix of a linear map `L → V`.
pub fn one_cocycle_residual(
    alg: &HomTriAlgebra,
    f: &Matrix,
    rep: &Representation,
) -> Result<CheckEntry> {
    check_rep_dims(alg, rep)?;
    let n = alg.dim();
    if f.cols() != n || f.rows() != rep.module_dim() {
        return Err(Error::Dimension(format!(
            "1-cochain must be {}x{n}, got {}x{}",
            rep.module_dim(),
            f.rows(),
            f.cols()
        )));
    }
    let fcols: Vec<Vector> = (0..n).map(|i| f.column(i)).collect();
    let mut worst = BigRational::zero();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let mut v = f.mul_vec(alg.bracket().constant(x, y, z));
                for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
                    let t = rep.rho_basis(a, b).mul_vec(&fcols[c]);
                    v = sub_vectors(&v, &t);
                }
                let m = max_magnitude(&v);
                if m > worst {
                    worst = m;
                }
            }
        }
    }
    Ok(CheckEntry::exact("1-cocycle", worst))
}

/// `0 ∈ V` helper for callers building cochains by hand.
pub fn zero_in(rep: &Representation) -> Vector {
    zero_vector(rep.module_dim())
}
