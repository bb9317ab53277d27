//! Brute-force references, independent of the solver's code paths: direct
//! `n^m` contraction, support enumeration of matrix Pareto eigenpairs, and a
//! power iteration for the largest H-eigenvalue of a nonnegative tensor.

use alloc::vec;
use alloc::vec::Vec;

use nalgebra::SymmetricEigen;

use crate::tensor::GeneralTensor;
use crate::{Error, Matrix};

/// Largest `n^m` accepted by [`naive_apply`].
pub const NAIVE_LIMIT: u128 = 10_000_000;

/// Largest dimension accepted by [`matrix_pareto_enumerate`].
pub const ENUMERATION_MAX_DIM: usize = 12;

const POSITIVE: f64 = 1e-9;

/// `(Ax^{m−1})_i = Σ a_{i i₂…i_m} x_{i₂}⋯x_{i_m}` by visiting every entry.
pub fn naive_apply(a: &GeneralTensor, x: &[f64]) -> Result<Vec<f64>, Error> {
    let (m, n) = (a.order(), a.dim());
    let entries = (n as u128).pow(m as u32);
    if entries > NAIVE_LIMIT {
        return Err(Error::TooLarge {
            entries,
            limit: NAIVE_LIMIT,
        });
    }
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: x.len(),
        });
    }
    let mut out = vec![0.0; n];
    let mut index = vec![0usize; m];
    for &value in a.data() {
        let mut term = value;
        for &j in &index[1..] {
            term *= x[j];
        }
        out[index[0]] += term;
        // odometer increment, last index fastest
        for slot in index.iter_mut().rev() {
            *slot += 1;
            if *slot < n {
                break;
            }
            *slot = 0;
        }
    }
    Ok(out)
}

/// A Pareto eigenpair of a matrix pencil.
#[derive(Debug, Clone, PartialEq)]
pub struct ParetoSolution {
    pub lambda: f64,
    /// Unit 2-norm, nonnegative, strictly positive on `support`.
    pub x: Vec<f64>,
    pub support: Vec<usize>,
}

/// All Pareto eigenpairs `0 ≤ x ⊥ (λB − A)x ≥ 0`, `λ > 0`, `‖x‖ = 1`, found by
/// solving the generalized eigenproblem of every principal subpencil.
///
/// Requires `A` symmetric and `B` symmetric positive definite. A vector with
/// a zero on its support belongs to the smaller support and is skipped.
pub fn matrix_pareto_enumerate(a: &Matrix, b: &Matrix) -> Result<Vec<ParetoSolution>, Error> {
    let n = a.nrows();
    if !a.is_square() || b.shape() != a.shape() {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: b.nrows(),
        });
    }
    if n == 0 || n > ENUMERATION_MAX_DIM {
        return Err(Error::Precondition("support enumeration needs 1 ≤ n ≤ 12"));
    }
    if !is_symmetric(a) || !is_symmetric(b) {
        return Err(Error::Precondition("support enumeration needs symmetric A and B"));
    }

    let mut found: Vec<ParetoSolution> = Vec::new();
    for mask in 1u32..(1 << n) {
        let support: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let k = support.len();
        let sub_a = Matrix::from_fn(k, k, |r, c| a[(support[r], support[c])]);
        let sub_b = Matrix::from_fn(k, k, |r, c| b[(support[r], support[c])]);
        let chol = sub_b
            .cholesky()
            .ok_or(Error::Precondition("B must be positive definite"))?;
        let l = chol.l();
        let l_inv = l
            .clone()
            .try_inverse()
            .ok_or(Error::Precondition("B must be positive definite"))?;
        let reduced = &l_inv * &sub_a * l_inv.transpose();
        let reduced = (&reduced + reduced.transpose()) * 0.5;
        let eig = SymmetricEigen::new(reduced);

        for (col, &lambda) in eig.eigenvalues.iter().enumerate() {
            if lambda <= 0.0 {
                continue;
            }
            let y = eig.eigenvectors.column(col).into_owned();
            let xj = l_inv.transpose() * y;
            let mut x = vec![0.0; n];
            for (r, &i) in support.iter().enumerate() {
                x[i] = xj[r];
            }
            let norm = libm::sqrt(x.iter().map(|v| v * v).sum());
            let sign = if x[support[0]] < 0.0 { -1.0 } else { 1.0 };
            for v in &mut x {
                *v *= sign / norm;
            }
            if support.iter().any(|&i| x[i] <= POSITIVE) {
                continue;
            }
            let w: Vec<f64> = (0..n)
                .map(|i| (0..n).map(|j| (lambda * b[(i, j)] - a[(i, j)]) * x[j]).sum())
                .collect();
            if (0..n).any(|i| mask & (1 << i) == 0 && w[i] < -POSITIVE) {
                continue;
            }
            let duplicate = found.iter().any(|s| {
                (s.lambda - lambda).abs() <= POSITIVE
                    && s.x.iter().zip(&x).all(|(p, q)| (p - q).abs() <= POSITIVE)
            });
            if !duplicate {
                found.push(ParetoSolution {
                    lambda,
                    x,
                    support: support.clone(),
                });
            }
        }
    }
    found.sort_by(|p, q| p.lambda.total_cmp(&q.lambda));
    Ok(found)
}

fn is_symmetric(m: &Matrix) -> bool {
    let scale = m.iter().fold(1.0f64, |acc, v| acc.max(v.abs()));
    (0..m.nrows()).all(|i| (0..i).all(|j| (m[(i, j)] - m[(j, i)]).abs() <= 1e-12 * scale))
}

/// Result of [`nonneg_power_method`].
#[derive(Debug, Clone, PartialEq)]
pub struct PowerResult {
    /// Midpoint of the final bracket.
    pub lambda: f64,
    pub lower: f64,
    pub upper: f64,
    /// Positive, unit 2-norm.
    pub x: Vec<f64>,
    pub iterations: usize,
}

/// Largest H-eigenvalue of an irreducible nonnegative tensor.
///
/// Iterates `y = Ax^{m−1}`, `x ← y^{1/(m−1)}/‖·‖`. The eigenvalue is
/// bracketed by `min_i y_i/x_i^{m−1} ≤ λ ≤ max_i y_i/x_i^{m−1}`; iteration
/// stops once the bracket is no wider than `tol`.
pub fn nonneg_power_method(a: &GeneralTensor, tol: f64, max_iter: usize) -> Result<PowerResult, Error> {
    if a.data().iter().any(|&v| v < 0.0) {
        return Err(Error::Precondition("power method needs a nonnegative tensor"));
    }
    let n = a.dim();
    let root = 1.0 / (a.order() - 1) as f64;
    let mut x = vec![1.0 / libm::sqrt(n as f64); n];
    for iter in 1..=max_iter {
        let y = naive_apply(a, &x)?;
        let mut lower = f64::INFINITY;
        let mut upper = 0.0f64;
        for (yi, xi) in y.iter().zip(&x) {
            let ratio = yi / crate::powi(*xi, a.order() - 1);
            lower = lower.min(ratio);
            upper = upper.max(ratio);
        }
        if !(lower > 0.0) {
            return Err(Error::Precondition("power iterate lost positivity; tensor is reducible"));
        }
        if upper - lower <= tol {
            return Ok(PowerResult {
                lambda: 0.5 * (lower + upper),
                lower,
                upper,
                x,
                iterations: iter,
            });
        }
        let next: Vec<f64> = y.iter().map(|v| libm::pow(*v, root)).collect();
        let norm = libm::sqrt(next.iter().map(|v| v * v).sum());
        x = next.into_iter().map(|v| v / norm).collect();
    }
    Err(Error::NotConverged {
        iterations: max_iter,
    })
}
