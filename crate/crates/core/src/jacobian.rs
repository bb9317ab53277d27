//! Construction of an element `V ∈ ∂Φ_τ(z)` row by row, and of the bordered
//! Newton matrix `G = (V; 2xᵀ 0)`.
//!
//! Rows are routed by the sign pattern of `(x_i, F_i(z))`:
//!
//! | set | condition              | rule                                        |
//! |-----|------------------------|---------------------------------------------|
//! | S1  | `x_i = 0, F_i = 0`     | limit along `z − (1/k)(c, 0)`               |
//! | S3  | `x_i > 0, F_i = 0`     | sign of `∇ₓF_iᵀc` picks the one-sided limit |
//! | S4  | `x_i > 0, F_i > 0`     | exact gradient of `φ_τ`                     |
//! | —   | everything else        | `τ`-scaled Fischer–Burmeister gradient      |
//!
//! With `τ = 1` this yields an element of the B-subdifferential of the plain
//! Fischer–Burmeister system.

use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::condition_estimate;
use crate::residual::{Iterate, Problem};
use crate::{Error, Matrix};

/// Zero tolerance for the set classification.
pub const TOL_ZERO: f64 = 1e-12;

/// The sets S1..S4 (zero-based indices) and the direction vector `c`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct IndexPartition {
    pub s1: Vec<usize>,
    pub s2: Vec<usize>,
    pub s3: Vec<usize>,
    pub s4: Vec<usize>,
    /// `c_i = 1` on S1 ∪ S2 ∪ S3, else 0.
    pub c: Vec<f64>,
}

/// Which row formula produced a row of `V`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowRule {
    /// `i ∈ S1`.
    BothZero,
    /// `i ∈ S3` with `∇ₓF_iᵀc < 0`.
    ActiveDescending,
    /// `i ∈ S3` otherwise.
    ActiveOther,
    /// `i ∈ S4`.
    Interior,
    /// S2, and any component with `x_i < 0` or `F_i < 0`.
    Generic,
}

/// `V`, `G` and the data that determined them.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobianAssembly {
    pub v: Matrix,
    pub g: Matrix,
    pub partition: IndexPartition,
    pub rules: Vec<RowRule>,
    /// Number of `i ∈ S3` with `∇ₓF_iᵀc = 0` (within the zero tolerance).
    /// For those rows `G` is only known to lie in the Clarke overestimate,
    /// not in the B-subdifferential.
    pub s3_degenerate: usize,
    pub condition_estimate: f64,
}

/// Assigns each index to S1..S4 by comparing `x_i` and `F_i` with zero
/// within `tol_zero`. Indices with a negative component land in no set.
pub fn classify(x: &[f64], f: &[f64], tol_zero: f64) -> IndexPartition {
    let mut part = IndexPartition {
        c: vec![0.0; x.len()],
        ..IndexPartition::default()
    };
    for (i, (&xi, &fi)) in x.iter().zip(f).enumerate() {
        let x_zero = xi.abs() <= tol_zero;
        let f_zero = fi.abs() <= tol_zero;
        let x_pos = xi > tol_zero;
        let f_pos = fi > tol_zero;
        let set = if x_zero && f_zero {
            &mut part.s1
        } else if x_zero && f_pos {
            &mut part.s2
        } else if x_pos && f_zero {
            &mut part.s3
        } else if x_pos && f_pos {
            &mut part.s4
        } else {
            continue;
        };
        set.push(i);
    }
    for &i in part.s1.iter().chain(&part.s2).chain(&part.s3) {
        part.c[i] = 1.0;
    }
    part
}

/// Builds `V ∈ ∂Φ_τ(z)` for `τ ∈ (0, 1]`.
pub fn assemble_v(p: &Problem, z: &Iterate, tau: f64) -> Result<JacobianAssembly, Error> {
    p.check(z)?;
    if !(tau > 0.0 && tau <= 1.0) {
        return Err(Error::InvalidParameter("tau must lie in (0, 1]"));
    }
    let f = p.f_unchecked(z);
    let jf = p.jf_unchecked(z);
    Ok(assemble_with(z, &f, &jf, tau, TOL_ZERO))
}

/// [`assemble_v`] with the problem's own `τ`.
pub fn assemble(p: &Problem, z: &Iterate) -> Result<JacobianAssembly, Error> {
    assemble_v(p, z, p.tau())
}

pub(crate) fn assemble_with(
    z: &Iterate,
    f: &[f64],
    jf: &Matrix,
    tau: f64,
    tol_zero: f64,
) -> JacobianAssembly {
    let n = z.x.len();
    let partition = classify(&z.x, f, tol_zero);
    let mut rules = vec![RowRule::Generic; n];
    for &i in &partition.s1 {
        rules[i] = RowRule::BothZero;
    }
    for &i in &partition.s4 {
        rules[i] = RowRule::Interior;
    }
    let grad_dot_c = |i: usize| -> f64 { (0..n).map(|j| jf[(i, j)] * partition.c[j]).sum() };

    let mut s3_degenerate = 0;
    for &i in &partition.s3 {
        let g = grad_dot_c(i);
        rules[i] = if g < -tol_zero {
            RowRule::ActiveDescending
        } else {
            if g.abs() <= tol_zero {
                s3_degenerate += 1;
            }
            RowRule::ActiveOther
        };
    }

    let mut v = Matrix::zeros(n, n + 1);
    for i in 0..n {
        let (xi, fi) = (z.x[i], f[i]);
        // V_i = da · (e_iᵀ, 0) + db · ∇F_i(z)ᵀ
        let (da, db) = match rules[i] {
            RowRule::BothZero => {
                let g = grad_dot_c(i);
                let r = libm::hypot(partition.c[i], g);
                (tau * (1.0 + partition.c[i] / r), tau * (1.0 + g / r))
            }
            RowRule::ActiveDescending => (0.0, tau + (1.0 - tau) * xi),
            RowRule::ActiveOther => (0.0, tau),
            RowRule::Interior => {
                let r = libm::hypot(xi, fi);
                (
                    tau * (1.0 - xi / r) + (1.0 - tau) * fi,
                    tau * (1.0 - fi / r) + (1.0 - tau) * xi,
                )
            }
            RowRule::Generic => {
                let r = libm::hypot(xi, fi);
                (tau * (1.0 - xi / r), tau * (1.0 - fi / r))
            }
        };
        for j in 0..=n {
            v[(i, j)] = db * jf[(i, j)];
        }
        v[(i, i)] += da;
    }

    let g = assemble_g(&v, &z.x);
    let condition_estimate = condition_estimate(&g);
    JacobianAssembly {
        v,
        g,
        partition,
        rules,
        s3_degenerate,
        condition_estimate,
    }
}

/// Stacks `V` over the row `(2xᵀ, 0)`.
pub fn assemble_g(v: &Matrix, x: &[f64]) -> Matrix {
    let n = x.len();
    assert_eq!(v.nrows(), n, "V must have one row per component of x");
    assert_eq!(v.ncols(), n + 1, "V must have n + 1 columns");
    let mut g = Matrix::zeros(n + 1, n + 1);
    g.view_mut((0, 0), (n, n + 1)).copy_from(v);
    for (j, &xj) in x.iter().enumerate() {
        g[(n, j)] = 2.0 * xj;
    }
    g
}
