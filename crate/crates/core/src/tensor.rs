//! Real tensors of order `m` and dimension `n`, their contractions
//! `x ↦ Ax^{m−1}`, and the structured positive-definite operators used for `B`.
//!
//! Index tuples are zero-based throughout this module.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::{dot, norm2, powi, Error, Matrix};

/// The map `x ↦ Bx^{m−1}` together with its Jacobian.
///
/// Implementations assume `x.len() == self.dim()` and panic otherwise; use
/// [`checked_apply`] when the length is not known to be right.
pub trait TensorOperator {
    fn order(&self) -> usize;
    fn dim(&self) -> usize;

    /// `Bx^{m−1}`.
    fn apply(&self, x: &[f64]) -> Vec<f64>;

    /// `∂(Bx^{m−1})/∂x`, an `n × n` matrix.
    fn jacobian(&self, x: &[f64]) -> Matrix;

    /// `Bx^m = xᵀ(Bx^{m−1})`.
    fn scalar(&self, x: &[f64]) -> f64 {
        dot(x, &self.apply(x))
    }
}

/// [`TensorOperator::apply`] with a length check.
pub fn checked_apply<T: TensorOperator + ?Sized>(op: &T, x: &[f64]) -> Result<Vec<f64>, Error> {
    check_len(op.dim(), x)?;
    Ok(op.apply(x))
}

/// [`TensorOperator::jacobian`] with a length check.
pub fn checked_jacobian<T: TensorOperator + ?Sized>(op: &T, x: &[f64]) -> Result<Matrix, Error> {
    check_len(op.dim(), x)?;
    Ok(op.jacobian(x))
}

fn check_len(dim: usize, x: &[f64]) -> Result<(), Error> {
    if x.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: x.len(),
        });
    }
    Ok(())
}

fn check_shape(order: usize, dim: usize) -> Result<(), Error> {
    if order < 2 {
        return Err(Error::InvalidOrder(order));
    }
    if dim == 0 {
        return Err(Error::InvalidDimension(dim));
    }
    Ok(())
}

/// Number of distinct orderings of a sorted multiset of indices.
pub fn multinomial(sorted: &[usize]) -> f64 {
    let mut total = 1.0;
    let mut run = 0usize;
    for (pos, idx) in sorted.iter().enumerate() {
        run = if pos > 0 && sorted[pos - 1] == *idx {
            run + 1
        } else {
            1
        };
        total *= (pos + 1) as f64 / run as f64;
    }
    total
}

/// Calls `visit` with every sorted (non-decreasing) tuple of `len` indices
/// below `dim`, in lexicographic order.
pub fn for_each_sorted_tuple(len: usize, dim: usize, mut visit: impl FnMut(&[usize])) {
    if len == 0 {
        visit(&[]);
        return;
    }
    let mut idx = vec![0usize; len];
    loop {
        visit(&idx);
        // advance to the next non-decreasing tuple
        let mut pos = len;
        while pos > 0 && idx[pos - 1] == dim - 1 {
            pos -= 1;
        }
        if pos == 0 {
            return;
        }
        let next = idx[pos - 1] + 1;
        for slot in &mut idx[pos - 1..] {
            *slot = next;
        }
    }
}

/// Symmetric tensor stored by canonical (sorted) index tuples.
///
/// Each stored key stands for its whole permutation class; tuples that are
/// not stored are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricTensor {
    order: usize,
    dim: usize,
    entries: BTreeMap<Vec<usize>, f64>,
}

impl SymmetricTensor {
    pub fn zeros(order: usize, dim: usize) -> Result<Self, Error> {
        check_shape(order, dim)?;
        Ok(Self {
            order,
            dim,
            entries: BTreeMap::new(),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn canonical(&self, index: &[usize]) -> Result<Vec<usize>, Error> {
        if index.len() != self.order || index.iter().any(|&i| i >= self.dim) {
            return Err(Error::InvalidIndex {
                order: self.order,
                dim: self.dim,
            });
        }
        let mut key = index.to_vec();
        key.sort_unstable();
        Ok(key)
    }

    /// Sets the value of the whole permutation class of `index`.
    pub fn set(&mut self, index: &[usize], value: f64) -> Result<(), Error> {
        let key = self.canonical(index)?;
        if value == 0.0 {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, value);
        }
        Ok(())
    }

    /// Entry at an arbitrary index tuple, resolved through sorting.
    pub fn get(&self, index: &[usize]) -> Result<f64, Error> {
        let key = self.canonical(index)?;
        Ok(self.entries.get(&key).copied().unwrap_or(0.0))
    }

    /// Stored canonical entries in lexicographic key order.
    pub fn entries(&self) -> impl Iterator<Item = (&[usize], f64)> {
        self.entries.iter().map(|(k, v)| (k.as_slice(), *v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// `Ax^{m−1}`, each stored entry weighted by the number of orderings of
    /// the trailing indices it represents.
    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>, Error> {
        check_len(self.dim, x)?;
        let mut out = vec![0.0; self.dim];
        let mut tail = Vec::with_capacity(self.order - 1);
        for (key, &value) in &self.entries {
            for (pos, &lead) in key.iter().enumerate() {
                if pos > 0 && key[pos - 1] == lead {
                    continue;
                }
                tail.clear();
                tail.extend_from_slice(&key[..pos]);
                tail.extend_from_slice(&key[pos + 1..]);
                let prod: f64 = tail.iter().map(|&j| x[j]).product();
                out[lead] += value * multinomial(&tail) * prod;
            }
        }
        Ok(out)
    }

    /// `Ax^m`.
    pub fn scalar(&self, x: &[f64]) -> Result<f64, Error> {
        Ok(dot(x, &self.apply(x)?))
    }

    /// The same tensor viewed as semi-symmetric (symmetric in indices `2..m`).
    pub fn to_semi_symmetric(&self) -> SemiSymmetricTensor {
        let mut rows: Vec<BTreeMap<Vec<usize>, f64>> = vec![BTreeMap::new(); self.dim];
        for (key, &value) in &self.entries {
            for (pos, &lead) in key.iter().enumerate() {
                if pos > 0 && key[pos - 1] == lead {
                    continue;
                }
                let mut tail = key[..pos].to_vec();
                tail.extend_from_slice(&key[pos + 1..]);
                let weight = value * multinomial(&tail);
                *rows[lead].entry(tail).or_insert(0.0) += weight;
            }
        }
        SemiSymmetricTensor::from_rows(self.order, self.dim, rows)
    }

    /// Dense `n^m` expansion.
    pub fn to_general(&self) -> GeneralTensor {
        let mut dense = GeneralTensor::zeros(self.order, self.dim).expect("shape already checked");
        let mut index = vec![0usize; self.order];
        let mut key = vec![0usize; self.order];
        for flat in 0..dense.data.len() {
            dense.unflatten(flat, &mut index);
            key.copy_from_slice(&index);
            key.sort_unstable();
            if let Some(v) = self.entries.get(&key) {
                dense.data[flat] = *v;
            }
        }
        dense
    }
}

/// Dense order-`m`, dimension-`n` tensor with no symmetry assumed.
///
/// Storage is row-major with the first index most significant.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralTensor {
    order: usize,
    dim: usize,
    data: Vec<f64>,
}

impl GeneralTensor {
    pub fn zeros(order: usize, dim: usize) -> Result<Self, Error> {
        check_shape(order, dim)?;
        let len = dim
            .checked_pow(order as u32)
            .ok_or(Error::InvalidDimension(dim))?;
        Ok(Self {
            order,
            dim,
            data: vec![0.0; len],
        })
    }

    pub fn from_data(order: usize, dim: usize, data: Vec<f64>) -> Result<Self, Error> {
        let mut t = Self::zeros(order, dim)?;
        if data.len() != t.data.len() {
            return Err(Error::DimensionMismatch {
                expected: t.data.len(),
                found: data.len(),
            });
        }
        t.data = data;
        Ok(t)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    fn flatten(&self, index: &[usize]) -> Result<usize, Error> {
        if index.len() != self.order || index.iter().any(|&i| i >= self.dim) {
            return Err(Error::InvalidIndex {
                order: self.order,
                dim: self.dim,
            });
        }
        Ok(index.iter().fold(0, |acc, &i| acc * self.dim + i))
    }

    pub(crate) fn unflatten(&self, mut flat: usize, index: &mut [usize]) {
        for slot in index.iter_mut().rev() {
            *slot = flat % self.dim;
            flat /= self.dim;
        }
    }

    pub fn get(&self, index: &[usize]) -> Result<f64, Error> {
        Ok(self.data[self.flatten(index)?])
    }

    pub fn set(&mut self, index: &[usize], value: f64) -> Result<(), Error> {
        let flat = self.flatten(index)?;
        self.data[flat] = value;
        Ok(())
    }

    /// `Ax^{m−1}` by contracting the trailing index `m − 1` times.
    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>, Error> {
        check_len(self.dim, x)?;
        let mut current = self.data.clone();
        while current.len() > self.dim {
            current = current
                .chunks_exact(self.dim)
                .map(|fiber| dot(fiber, x))
                .collect();
        }
        Ok(current)
    }

    pub fn scalar(&self, x: &[f64]) -> Result<f64, Error> {
        Ok(dot(x, &self.apply(x)?))
    }

    /// The unique semi-symmetric tensor with the same vector field
    /// `x ↦ Ax^{m−1}`: trailing indices are averaged over their
    /// permutations, the first index is left alone.
    pub fn semi_symmetrize(&self) -> SemiSymmetricTensor {
        let mut rows: Vec<BTreeMap<Vec<usize>, f64>> = vec![BTreeMap::new(); self.dim];
        let mut index = vec![0usize; self.order];
        for (flat, &value) in self.data.iter().enumerate() {
            if value == 0.0 {
                continue;
            }
            self.unflatten(flat, &mut index);
            let mut tail = index[1..].to_vec();
            tail.sort_unstable();
            // accumulated sums become averages in from_rows
            *rows[index[0]].entry(tail).or_insert(0.0) += value;
        }
        SemiSymmetricTensor::from_rows(self.order, self.dim, rows)
    }

    /// Full symmetrization: each canonical entry is the mean over its
    /// permutation class.
    pub fn symmetrize(&self) -> SymmetricTensor {
        let mut sums: BTreeMap<Vec<usize>, f64> = BTreeMap::new();
        let mut index = vec![0usize; self.order];
        for (flat, &value) in self.data.iter().enumerate() {
            self.unflatten(flat, &mut index);
            let mut key = index.clone();
            key.sort_unstable();
            *sums.entry(key).or_insert(0.0) += value;
        }
        let entries = sums
            .into_iter()
            .map(|(key, sum)| {
                let mean = sum / multinomial(&key);
                (key, mean)
            })
            .filter(|(_, v)| *v != 0.0)
            .collect();
        SymmetricTensor {
            order: self.order,
            dim: self.dim,
            entries,
        }
    }
}

/// Tensor symmetric in its trailing `m − 1` indices, compiled for fast
/// contraction.
///
/// Row `i` holds one term per sorted tail `(i₂ ≤ … ≤ i_m)`; each term's
/// weight is the entry times the number of orderings of the tail, so that
/// `(Ax^{m−1})_i = Σ weight · Π x_tail`.
#[derive(Debug, Clone, PartialEq)]
pub struct SemiSymmetricTensor {
    order: usize,
    dim: usize,
    row_start: Vec<usize>,
    tails: Vec<usize>,
    weights: Vec<f64>,
}

impl SemiSymmetricTensor {
    /// `rows[i]` maps sorted tails to the summed weight of all orderings.
    fn from_rows(order: usize, dim: usize, rows: Vec<BTreeMap<Vec<usize>, f64>>) -> Self {
        let mut row_start = Vec::with_capacity(dim + 1);
        let mut tails = Vec::new();
        let mut weights = Vec::new();
        row_start.push(0);
        for row in rows {
            for (tail, weight) in row {
                if weight == 0.0 {
                    continue;
                }
                tails.extend_from_slice(&tail);
                weights.push(weight);
            }
            row_start.push(weights.len());
        }
        Self {
            order,
            dim,
            row_start,
            tails,
            weights,
        }
    }

    /// Entry `ã_{i i₂ … i_m}`; the tail may be given in any order.
    pub fn get(&self, index: &[usize]) -> Result<f64, Error> {
        if index.len() != self.order || index.iter().any(|&i| i >= self.dim) {
            return Err(Error::InvalidIndex {
                order: self.order,
                dim: self.dim,
            });
        }
        let mut tail = index[1..].to_vec();
        tail.sort_unstable();
        let width = self.order - 1;
        let row = index[0];
        for term in self.row_start[row]..self.row_start[row + 1] {
            if self.tails[term * width..(term + 1) * width] == tail[..] {
                return Ok(self.weights[term] / multinomial(&tail));
            }
        }
        Ok(0.0)
    }

    /// Number of stored (row, sorted tail) terms.
    pub fn nnz(&self) -> usize {
        self.weights.len()
    }

    fn terms(&self, row: usize) -> impl Iterator<Item = (&[usize], f64)> {
        let width = self.order - 1;
        (self.row_start[row]..self.row_start[row + 1])
            .map(move |t| (&self.tails[t * width..(t + 1) * width], self.weights[t]))
    }
}

impl TensorOperator for SemiSymmetricTensor {
    fn order(&self) -> usize {
        self.order
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn apply(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.dim, "vector length must match tensor dimension");
        (0..self.dim)
            .map(|row| {
                self.terms(row)
                    .map(|(tail, w)| w * tail.iter().map(|&j| x[j]).product::<f64>())
                    .sum()
            })
            .collect()
    }

    fn jacobian(&self, x: &[f64]) -> Matrix {
        assert_eq!(x.len(), self.dim, "vector length must match tensor dimension");
        let width = self.order - 1;
        let mut jac = Matrix::zeros(self.dim, self.dim);
        let mut suffix = vec![1.0; width + 1];
        for row in 0..self.dim {
            for (tail, w) in self.terms(row) {
                for p in (0..width).rev() {
                    suffix[p] = suffix[p + 1] * x[tail[p]];
                }
                let mut prefix = 1.0;
                for p in 0..width {
                    jac[(row, tail[p])] += w * prefix * suffix[p + 1];
                    prefix *= x[tail[p]];
                }
            }
        }
        jac
    }
}

/// `Bx^{m−1} = ‖x‖^{m−2} x`: equals `x` on the unit sphere. Even order only.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitSphereIdentityOperator {
    order: usize,
    dim: usize,
}

impl UnitSphereIdentityOperator {
    pub fn new(order: usize, dim: usize) -> Result<Self, Error> {
        check_shape(order, dim)?;
        if order % 2 != 0 {
            return Err(Error::InvalidOrder(order));
        }
        Ok(Self { order, dim })
    }
}

impl TensorOperator for UnitSphereIdentityOperator {
    fn order(&self) -> usize {
        self.order
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn apply(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.dim, "vector length must match operator dimension");
        let scale = powi(dot(x, x), (self.order - 2) / 2);
        x.iter().map(|v| scale * v).collect()
    }

    // ‖x‖^{m−2} I + (m−2)‖x‖^{m−4} x xᵀ
    fn jacobian(&self, x: &[f64]) -> Matrix {
        assert_eq!(x.len(), self.dim, "vector length must match operator dimension");
        let sq = dot(x, x);
        let half = (self.order - 2) / 2;
        let mut jac = Matrix::identity(self.dim, self.dim) * powi(sq, half);
        if half > 0 {
            let coef = (self.order - 2) as f64 * powi(sq, half - 1);
            for i in 0..self.dim {
                for j in 0..self.dim {
                    jac[(i, j)] += coef * x[i] * x[j];
                }
            }
        }
        jac
    }

    fn scalar(&self, x: &[f64]) -> f64 {
        powi(norm2(x), self.order)
    }
}

/// Diagonal tensor with unit diagonal: `(Ix^{m−1})_i = x_i^{m−1}`.
///
/// Odd orders are accepted; `Ix^m > 0` then only holds on the nonnegative
/// orthant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagonalIdentityOperator {
    order: usize,
    dim: usize,
}

impl DiagonalIdentityOperator {
    pub fn new(order: usize, dim: usize) -> Result<Self, Error> {
        check_shape(order, dim)?;
        Ok(Self { order, dim })
    }
}

impl TensorOperator for DiagonalIdentityOperator {
    fn order(&self) -> usize {
        self.order
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn apply(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.dim, "vector length must match operator dimension");
        x.iter().map(|&v| powi(v, self.order - 1)).collect()
    }

    fn jacobian(&self, x: &[f64]) -> Matrix {
        assert_eq!(x.len(), self.dim, "vector length must match operator dimension");
        let factor = (self.order - 1) as f64;
        let diag: Vec<f64> = x.iter().map(|&v| factor * powi(v, self.order - 2)).collect();
        Matrix::from_diagonal(&nalgebra::DVector::from_vec(diag))
    }

    fn scalar(&self, x: &[f64]) -> f64 {
        x.iter().map(|&v| powi(v, self.order)).sum()
    }
}

/// The choices available for `B`.
#[derive(Debug, Clone, PartialEq)]
pub enum BOperator {
    SphereIdentity(UnitSphereIdentityOperator),
    DiagIdentity(DiagonalIdentityOperator),
    Tensor(SemiSymmetricTensor),
}

impl BOperator {
    pub fn sphere_identity(order: usize, dim: usize) -> Result<Self, Error> {
        UnitSphereIdentityOperator::new(order, dim).map(Self::SphereIdentity)
    }

    pub fn diag_identity(order: usize, dim: usize) -> Result<Self, Error> {
        DiagonalIdentityOperator::new(order, dim).map(Self::DiagIdentity)
    }

    fn inner(&self) -> &dyn TensorOperator {
        match self {
            BOperator::SphereIdentity(op) => op,
            BOperator::DiagIdentity(op) => op,
            BOperator::Tensor(op) => op,
        }
    }
}

impl TensorOperator for BOperator {
    fn order(&self) -> usize {
        self.inner().order()
    }

    fn dim(&self) -> usize {
        self.inner().dim()
    }

    fn apply(&self, x: &[f64]) -> Vec<f64> {
        self.inner().apply(x)
    }

    fn jacobian(&self, x: &[f64]) -> Matrix {
        self.inner().jacobian(x)
    }

    fn scalar(&self, x: &[f64]) -> f64 {
        self.inner().scalar(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag_matrix_tensor() -> SymmetricTensor {
        let mut a = SymmetricTensor::zeros(2, 2).unwrap();
        a.set(&[0, 0], 1.0).unwrap();
        a.set(&[1, 1], 2.0).unwrap();
        a
    }

    #[test]
    fn multinomial_counts_orderings() {
        assert_eq!(multinomial(&[]), 1.0);
        assert_eq!(multinomial(&[0, 1]), 2.0);
        assert_eq!(multinomial(&[0, 0, 1]), 3.0);
        assert_eq!(multinomial(&[0, 1, 2]), 6.0);
        assert_eq!(multinomial(&[1, 1, 1, 1]), 1.0);
        assert_eq!(multinomial(&[0, 0, 1, 1, 1, 2]), 60.0);
    }

    #[test]
    fn sorted_tuples_are_enumerated_once() {
        let mut count = 0;
        let mut last: Option<Vec<usize>> = None;
        for_each_sorted_tuple(3, 4, |t| {
            assert!(t.windows(2).all(|w| w[0] <= w[1]));
            if let Some(prev) = &last {
                assert!(prev.as_slice() < t);
            }
            last = Some(t.to_vec());
            count += 1;
        });
        // C(4 + 3 - 1, 3)
        assert_eq!(count, 20);
    }

    #[test]
    fn matrix_case_is_matrix_vector_product() {
        let a = diag_matrix_tensor();
        assert_eq!(a.apply(&[3.0, 4.0]).unwrap(), vec![3.0, 8.0]);
        let semi = a.to_semi_symmetric();
        assert_eq!(semi.apply(&[3.0, 4.0]), vec![3.0, 8.0]);
    }

    #[test]
    fn lookups_resolve_through_sorting() {
        let mut a = SymmetricTensor::zeros(3, 3).unwrap();
        a.set(&[2, 0, 1], 0.7).unwrap();
        assert_eq!(a.get(&[1, 2, 0]).unwrap(), 0.7);
        assert_eq!(a.entries().next().unwrap().0, &[0, 1, 2]);
        assert!(a.set(&[0, 3, 1], 1.0).is_err());
        assert!(a.get(&[0, 1]).is_err());
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let a = diag_matrix_tensor();
        assert_eq!(
            a.apply(&[1.0]),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 1
            })
        );
        let semi = a.to_semi_symmetric();
        assert!(checked_apply(&semi, &[1.0, 2.0, 3.0]).is_err());
        assert!(checked_jacobian(&semi, &[1.0]).is_err());
    }

    #[test]
    fn semi_symmetrize_averages_trailing_indices() {
        let mut a = GeneralTensor::zeros(3, 2).unwrap();
        a.set(&[0, 0, 1], 1.0).unwrap();
        let semi = a.semi_symmetrize();
        assert_eq!(semi.get(&[0, 0, 1]).unwrap(), 0.5);
        assert_eq!(semi.get(&[0, 1, 0]).unwrap(), 0.5);
        assert_eq!(semi.get(&[1, 0, 0]).unwrap(), 0.0);
        let y = semi.apply(&[1.0, 1.0]);
        assert_eq!(y[0], 1.0);
        assert_eq!(y, a.apply(&[1.0, 1.0]).unwrap());
    }

    #[test]
    fn semi_symmetrize_keeps_matrices() {
        let a = GeneralTensor::from_data(2, 2, vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        let semi = a.semi_symmetrize();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(semi.get(&[i, j]).unwrap(), a.get(&[i, j]).unwrap());
            }
        }
    }

    #[test]
    fn symmetrize_keeps_symmetric_entries() {
        let mut s = SymmetricTensor::zeros(3, 2).unwrap();
        s.set(&[0, 0, 1], 0.25).unwrap();
        s.set(&[1, 1, 1], -1.5).unwrap();
        assert_eq!(s.to_general().symmetrize(), s);
    }

    #[test]
    fn matrix_jacobian_is_the_matrix() {
        let a = GeneralTensor::from_data(2, 2, vec![1.0, 2.0, 3.0, 4.0])
            .unwrap()
            .semi_symmetrize();
        let j = a.jacobian(&[0.3, -7.0]);
        assert_eq!(j, Matrix::from_row_slice(2, 2, &[1.0, 2.0, 3.0, 4.0]));
    }

    #[test]
    fn sphere_identity_jacobian_by_hand() {
        let b = UnitSphereIdentityOperator::new(4, 2).unwrap();
        let j = b.jacobian(&[1.0, 1.0]);
        assert_eq!(j, Matrix::from_row_slice(2, 2, &[4.0, 2.0, 2.0, 4.0]));
        let on_sphere = b.apply(&[0.6, 0.8]);
        assert!((on_sphere[0] - 0.6).abs() < 1e-15 && (on_sphere[1] - 0.8).abs() < 1e-15);
        assert!(UnitSphereIdentityOperator::new(3, 2).is_err());
    }

    #[test]
    fn diagonal_identity_values() {
        let b = DiagonalIdentityOperator::new(3, 2).unwrap();
        assert_eq!(b.apply(&[2.0, -3.0]), vec![4.0, 9.0]);
        let j = b.jacobian(&[2.0, -3.0]);
        assert_eq!(j, Matrix::from_row_slice(2, 2, &[4.0, 0.0, 0.0, -6.0]));
        assert_eq!(b.scalar(&[2.0, 1.0]), 9.0);
    }

    #[test]
    fn zero_shapes_are_rejected() {
        assert_eq!(SymmetricTensor::zeros(1, 3), Err(Error::InvalidOrder(1)));
        assert_eq!(GeneralTensor::zeros(2, 0), Err(Error::InvalidDimension(0)));
        assert!(GeneralTensor::from_data(2, 2, vec![1.0]).is_err());
    }
}
