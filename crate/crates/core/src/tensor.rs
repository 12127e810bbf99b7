//! Dense tensors in `L^{⊗k}` and the slot operators acting on them.
//!
//! Entries are stored row-major with slot 1 most significant, so the flat
//! index of `e_{i1}⊗…⊗e_{ik}` is `Σ i_s·n^{k−s}`. This is the layout that
//! [`Matrix::kron`] acts on. Slot indices in this module are 1-based;
//! basis indices are 0-based.

use std::ops::{Add, Neg, Sub};

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::matrix::{Matrix, Vector};
use crate::scalar::{max_magnitude, Scalar};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Tensor {
    dim: usize,
    arity: usize,
    data: Vec<Scalar>,
}

/// Images of `x1⊗…⊗x5` under ω1, ω2, ω3: new slot `k` holds old slot `OMEGA[m][k]`.
const OMEGA: [[usize; 5]; 3] = [[3, 4, 1, 2, 5], [4, 5, 1, 2, 3], [5, 3, 1, 2, 4]];

impl Tensor {
    pub fn zeros(dim: usize, arity: usize) -> Self {
        assert!(dim >= 1, "tensor dimension must be at least 1");
        Tensor {
            dim,
            arity,
            data: vec![Scalar::zero(); dim.pow(arity as u32)],
        }
    }

    pub fn from_data(dim: usize, arity: usize, data: Vec<Scalar>) -> Result<Self> {
        if dim == 0 || data.len() != dim.pow(arity as u32) {
            return Err(Error::Dimension(format!(
                "expected {} entries for dim {dim}, arity {arity}, got {}",
                dim.pow(arity as u32),
                data.len()
            )));
        }
        Ok(Tensor { dim, arity, data })
    }

    pub fn scalar(dim: usize, value: Scalar) -> Self {
        Tensor {
            dim,
            arity: 0,
            data: vec![value],
        }
    }

    pub fn vector(v: Vector) -> Self {
        Tensor {
            dim: v.len(),
            arity: 1,
            data: v,
        }
    }

    /// The basis tensor `e_{i1}⊗…⊗e_{ik}` (0-based basis indices).
    pub fn basis(dim: usize, indices: &[usize]) -> Self {
        let mut t = Tensor::zeros(dim, indices.len());
        let at = t.flat_index(indices);
        t.data[at] = Scalar::one();
        t
    }

    /// Tensor product of vectors `v1⊗…⊗vk`.
    pub fn product_of(vectors: &[&[Scalar]]) -> Result<Self> {
        let dim = vectors
            .first()
            .map(|v| v.len())
            .ok_or_else(|| Error::Invalid("empty tensor product".into()))?;
        if vectors.iter().any(|v| v.len() != dim) {
            return Err(Error::Dimension("factors of unequal dimension".into()));
        }
        let mut t = Tensor::scalar(dim, Scalar::one());
        for v in vectors {
            t = t.outer(&Tensor::vector(v.to_vec()))?;
        }
        Ok(t)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    pub fn into_data(self) -> Vec<Scalar> {
        self.data
    }

    pub fn get(&self, indices: &[usize]) -> &Scalar {
        &self.data[self.flat_index(indices)]
    }

    pub fn set(&mut self, indices: &[usize], value: Scalar) {
        let at = self.flat_index(indices);
        self.data[at] = value;
    }

    pub fn add_at(&mut self, indices: &[usize], value: &Scalar) {
        let at = self.flat_index(indices);
        self.data[at] += value;
    }

    pub fn flat_index(&self, indices: &[usize]) -> usize {
        assert_eq!(indices.len(), self.arity, "index arity mismatch");
        indices.iter().fold(0, |acc, &i| {
            assert!(i < self.dim, "basis index out of range");
            acc * self.dim + i
        })
    }

    pub fn multi_index(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.arity];
        for slot in (0..self.arity).rev() {
            idx[slot] = flat % self.dim;
            flat /= self.dim;
        }
        idx
    }

    /// Nonzero entries as `(multi-index, value)`.
    pub fn nonzero(&self) -> impl Iterator<Item = (Vec<usize>, &Scalar)> + '_ {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| (self.multi_index(k), v))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn max_magnitude(&self) -> BigRational {
        max_magnitude(&self.data)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Tensor {
            dim: self.dim,
            arity: self.arity,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    fn check_same_shape(&self, other: &Tensor) -> Result<()> {
        if self.dim != other.dim || self.arity != other.arity {
            return Err(Error::Dimension(format!(
                "tensor shapes (dim {}, arity {}) and (dim {}, arity {}) differ",
                self.dim, self.arity, other.dim, other.arity
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Tensor) -> Result<Tensor> {
        self.check_same_shape(other)?;
        Ok(Tensor {
            dim: self.dim,
            arity: self.arity,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn add_assign(&mut self, other: &Tensor) {
        self.check_same_shape(other).expect("tensor shape mismatch");
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Tensor, s: &Scalar) {
        self.check_same_shape(other).expect("tensor shape mismatch");
        if s.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a += &(b * s);
            }
        }
    }

    /// `self ⊗ other`, slots of `self` first.
    pub fn outer(&self, other: &Tensor) -> Result<Tensor> {
        if self.dim != other.dim {
            return Err(Error::Dimension(
                "outer product of unequal dimensions".into(),
            ));
        }
        let mut data = Vec::with_capacity(self.data.len() * other.data.len());
        for a in &self.data {
            for b in &other.data {
                data.push(if a.is_zero() || b.is_zero() {
                    Scalar::zero()
                } else {
                    a * b
                });
            }
        }
        Ok(Tensor {
            dim: self.dim,
            arity: self.arity + other.arity,
            data,
        })
    }

    fn check_slot(&self, slot: usize, max: usize) -> Result<()> {
        if slot == 0 || slot > max {
            return Err(Error::Slot { slot, max });
        }
        Ok(())
    }

    /// Linear extension of the slot permutation sending `x1⊗…⊗xk` to
    /// `x_{perm[0]}⊗…⊗x_{perm[k−1]}` (1-based `perm`).
    pub fn permute_slots(&self, perm: &[usize]) -> Result<Tensor> {
        if perm.len() != self.arity {
            return Err(Error::Invalid(format!(
                "permutation of length {} for arity {}",
                perm.len(),
                self.arity
            )));
        }
        let mut seen = vec![false; self.arity];
        for &p in perm {
            self.check_slot(p, self.arity)?;
            if std::mem::replace(&mut seen[p - 1], true) {
                return Err(Error::Invalid(format!("{perm:?} is not a permutation")));
            }
        }
        let mut out = Tensor::zeros(self.dim, self.arity);
        let mut target = vec![0; self.arity];
        for (idx, v) in self.nonzero() {
            for (k, &p) in perm.iter().enumerate() {
                target[k] = idx[p - 1];
            }
            let at = out.flat_index(&target);
            out.data[at] = v.clone();
        }
        Ok(out)
    }

    /// The (ij)-switching operator σ_ij, `1 ≤ i ≤ j ≤ arity`.
    pub fn sigma_switch(&self, i: usize, j: usize) -> Result<Tensor> {
        self.check_slot(i, self.arity)?;
        self.check_slot(j, self.arity)?;
        if i > j {
            return Err(Error::Invalid(format!("σ_{i}{j} requires i ≤ j")));
        }
        let mut perm: Vec<usize> = (1..=self.arity).collect();
        perm.swap(i - 1, j - 1);
        self.permute_slots(&perm)
    }

    fn omega_perm(&self, m: usize) -> Result<&'static [usize; 5]> {
        if self.arity != 5 {
            return Err(Error::Invalid(format!(
                "ω is defined on 5-tensors, got arity {}",
                self.arity
            )));
        }
        OMEGA
            .get(m.wrapping_sub(1))
            .ok_or_else(|| Error::Invalid(format!("ω_{m} is undefined, expected m ∈ {{1,2,3}}")))
    }

    /// ω_m: `x1⊗x2⊗x3⊗x4⊗x5` ↦ `x3⊗x4⊗x1⊗x2⊗x5`, `x4⊗x5⊗x1⊗x2⊗x3`,
    /// `x5⊗x3⊗x1⊗x2⊗x4` for m = 1, 2, 3.
    pub fn omega(&self, m: usize) -> Result<Tensor> {
        let perm = self.omega_perm(m)?;
        self.permute_slots(perm)
    }

    /// Transpose of ω_m with respect to the standard pairing of `L^{⊗5}`
    /// with its dual, i.e. the inverse slot permutation.
    pub fn omega_transpose(&self, m: usize) -> Result<Tensor> {
        let perm = self.omega_perm(m)?;
        let mut inverse = [0; 5];
        for (k, &p) in perm.iter().enumerate() {
            inverse[p - 1] = k + 1;
        }
        self.permute_slots(&inverse)
    }

    /// `t ⊗_i a`: inserts the vector `a` at slot `i` (1-based, `1 ≤ i ≤ k+1`).
    pub fn insert_at(&self, a: &[Scalar], i: usize) -> Result<Tensor> {
        self.check_slot(i, self.arity + 1)?;
        if a.len() != self.dim {
            return Err(Error::Dimension(format!(
                "inserted vector has length {}, tensor dim is {}",
                a.len(),
                self.dim
            )));
        }
        let mut out = Tensor::zeros(self.dim, self.arity + 1);
        let nonzero_a: Vec<(usize, &Scalar)> =
            a.iter().enumerate().filter(|(_, v)| !v.is_zero()).collect();
        let mut target = vec![0; self.arity + 1];
        for (idx, v) in self.nonzero() {
            target[..i - 1].copy_from_slice(&idx[..i - 1]);
            target[i..].copy_from_slice(&idx[i - 1..]);
            for &(q, av) in &nonzero_a {
                target[i - 1] = q;
                let at = out.flat_index(&target);
                out.data[at] = v * av;
            }
        }
        Ok(out)
    }

    /// Contracts slot `i` against a covector, removing that slot.
    pub fn contract_slot(&self, i: usize, covector: &[Scalar]) -> Result<Tensor> {
        self.check_slot(i, self.arity)?;
        if covector.len() != self.dim {
            return Err(Error::Dimension("covector length differs from dim".into()));
        }
        let mut out = Tensor::zeros(self.dim, self.arity - 1);
        for (idx, v) in self.nonzero() {
            let w = &covector[idx[i - 1]];
            if w.is_zero() {
                continue;
            }
            let rest: Vec<usize> = idx
                .iter()
                .enumerate()
                .filter(|&(s, _)| s != i - 1)
                .map(|(_, &x)| x)
                .collect();
            out.add_at(&rest, &(v * w));
        }
        Ok(out)
    }

    /// Applies `maps[s]` to slot `s+1`, i.e. the Kronecker action of
    /// `maps[0]⊗…⊗maps[k−1]`.
    pub fn apply_slot_maps(&self, maps: &[&Matrix]) -> Result<Tensor> {
        if maps.len() != self.arity {
            return Err(Error::Dimension(format!(
                "{} slot maps for arity {}",
                maps.len(),
                self.arity
            )));
        }
        if let Some(m) = maps
            .iter()
            .find(|m| m.rows() != self.dim || m.cols() != self.dim)
        {
            return Err(Error::Dimension(format!(
                "slot map is {}x{}, expected {}x{}",
                m.rows(),
                m.cols(),
                self.dim,
                self.dim
            )));
        }
        let mut cur = self.clone();
        for (s, m) in maps.iter().enumerate() {
            if **m == Matrix::identity(self.dim) {
                continue;
            }
            cur = cur.apply_one_slot(s, m);
        }
        Ok(cur)
    }

    /// Applies `m` to the 0-based slot `s`; shapes are assumed checked.
    pub(crate) fn apply_one_slot(&self, s: usize, m: &Matrix) -> Tensor {
        let mut out = Tensor::zeros(self.dim, self.arity);
        let stride = self.dim.pow((self.arity - 1 - s) as u32);
        for (flat, v) in self.data.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let j = (flat / stride) % self.dim;
            let base = flat - j * stride;
            for i in 0..self.dim {
                let a = &m[(i, j)];
                if !a.is_zero() {
                    out.data[base + i * stride] += &(a * v);
                }
            }
        }
        out
    }
}

impl Add for &Tensor {
    type Output = Tensor;
    fn add(self, rhs: &Tensor) -> Tensor {
        self.try_add(rhs).expect("tensor shape mismatch")
    }
}

impl Sub for &Tensor {
    type Output = Tensor;
    fn sub(self, rhs: &Tensor) -> Tensor {
        self.check_same_shape(rhs).expect("tensor shape mismatch");
        Tensor {
            dim: self.dim,
            arity: self.arity,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &Tensor {
    type Output = Tensor;
    fn neg(self) -> Tensor {
        self.scale(&Scalar::from_int(-1))
    }
}

/// Free-function form of [`Tensor::sigma_switch`].
pub fn sigma_switch(t: &Tensor, i: usize, j: usize) -> Result<Tensor> {
    t.sigma_switch(i, j)
}

/// Free-function form of [`Tensor::omega`].
pub fn omega(t: &Tensor, m: usize) -> Result<Tensor> {
    t.omega(m)
}

/// Free-function form of [`Tensor::insert_at`].
pub fn insert_at(t: &Tensor, a: &[Scalar], i: usize) -> Result<Tensor> {
    t.insert_at(a, i)
}

/// Free-function form of [`Tensor::apply_slot_maps`].
pub fn apply_slot_maps(maps: &[&Matrix], t: &Tensor) -> Result<Tensor> {
    t.apply_slot_maps(maps)
}

/// `u∧v∧w = Σ_{σ∈S3} sgn(σ)` of the slot-permuted `u⊗v⊗w`.
pub fn wedge3(u: &[Scalar], v: &[Scalar], w: &[Scalar]) -> Result<Tensor> {
    let base = Tensor::product_of(&[u, v, w])?;
    let mut out = Tensor::zeros(base.dim, 3);
    for (perm, sign) in S3 {
        let term = base.permute_slots(&perm)?;
        out.add_scaled(&term, &Scalar::from_int(sign));
    }
    Ok(out)
}

/// Elements of S3 on slots {1,2,3} with their signs.
pub const S3: [([usize; 3], i64); 6] = [
    ([1, 2, 3], 1),
    ([2, 1, 3], -1),
    ([1, 3, 2], -1),
    ([3, 2, 1], -1),
    ([2, 3, 1], 1),
    ([3, 1, 2], 1),
];
