//! Dense solves and condition numbers for the small bordered Newton systems.

use alloc::vec::Vec;

use nalgebra::DVector;

use crate::Matrix;

/// Solves `m · y = rhs` by LU with partial pivoting. `None` when the
/// factorization breaks down or produces non-finite values.
pub fn lu_solve(m: &Matrix, rhs: &[f64]) -> Option<Vec<f64>> {
    if !m.is_square() || m.nrows() != rhs.len() {
        return None;
    }
    let b = DVector::from_column_slice(rhs);
    let y = m.clone().lu().solve(&b)?;
    if y.iter().all(|v| v.is_finite()) {
        Some(y.iter().copied().collect())
    } else {
        None
    }
}

/// `σ_max / σ_min` from a full singular value decomposition; `+∞` when the
/// matrix is singular or contains non-finite entries.
pub fn condition_estimate(m: &Matrix) -> f64 {
    if m.is_empty() || m.iter().any(|v| !v.is_finite()) {
        return f64::INFINITY;
    }
    let sv = m.clone().svd(false, false).singular_values;
    let max = sv.iter().copied().fold(0.0, f64::max);
    let min = sv.iter().copied().fold(f64::INFINITY, f64::min);
    if min <= 0.0 || !min.is_finite() {
        f64::INFINITY
    } else {
        max / min
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_perfectly_conditioned() {
        assert_eq!(condition_estimate(&Matrix::identity(4, 4)), 1.0);
    }

    #[test]
    fn diagonal_ratio() {
        let m = Matrix::from_row_slice(2, 2, &[1e5, 0.0, 0.0, 1e-6]);
        let k = condition_estimate(&m);
        assert!((k / 1e11 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn singular_is_infinite() {
        let m = Matrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 4.0]);
        assert!(condition_estimate(&m) > 1e15);
        assert_eq!(condition_estimate(&Matrix::zeros(3, 3)), f64::INFINITY);
        assert!(lu_solve(&Matrix::zeros(2, 2), &[1.0, 1.0]).is_none());
    }

    #[test]
    fn pivoted_solve() {
        let m = Matrix::from_row_slice(2, 2, &[0.0, 1.0, 2.0, 0.0]);
        assert_eq!(lu_solve(&m, &[3.0, 4.0]).unwrap(), alloc::vec![2.0, 3.0]);
    }
}
