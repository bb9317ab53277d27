//! The reformulated square system `H(x, t) = 0` and its merit function.

use alloc::vec::Vec;

use crate::ncp::NcpKind;
use crate::tensor::{BOperator, GeneralTensor, SemiSymmetricTensor, SymmetricTensor, TensorOperator};
use crate::{dot, Error, Matrix};

/// A TEiCP instance `(A, B)` plus the NCP function used to reformulate it.
#[derive(Debug, Clone, PartialEq)]
pub struct Problem {
    a: SemiSymmetricTensor,
    b: BOperator,
    ncp: NcpKind,
}

impl Problem {
    pub fn new(a: SemiSymmetricTensor, b: BOperator, ncp: NcpKind) -> Result<Self, Error> {
        if a.order() != b.order() {
            return Err(Error::OrderMismatch {
                expected: a.order(),
                found: b.order(),
            });
        }
        if a.dim() != b.dim() {
            return Err(Error::DimensionMismatch {
                expected: a.dim(),
                found: b.dim(),
            });
        }
        match ncp {
            NcpKind::Min => return Err(Error::UnsupportedNcp),
            NcpKind::PenalizedFb { tau } if !(tau > 0.0 && tau < 1.0) => {
                return Err(Error::InvalidParameter("penalized FB tau must lie in (0, 1)"))
            }
            _ => {}
        }
        Ok(Self { a, b, ncp })
    }

    pub fn from_symmetric(a: &SymmetricTensor, b: BOperator, ncp: NcpKind) -> Result<Self, Error> {
        Self::new(a.to_semi_symmetric(), b, ncp)
    }

    /// Semi-symmetrizes `a` first; the solution set is unchanged.
    pub fn from_general(a: &GeneralTensor, b: BOperator, ncp: NcpKind) -> Result<Self, Error> {
        Self::new(a.semi_symmetrize(), b, ncp)
    }

    pub fn a(&self) -> &SemiSymmetricTensor {
        &self.a
    }

    pub fn b(&self) -> &BOperator {
        &self.b
    }

    pub fn ncp(&self) -> NcpKind {
        self.ncp
    }

    pub fn order(&self) -> usize {
        self.a.order()
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    /// Fischer–Burmeister weight `τ` (1 for plain FB).
    pub fn tau(&self) -> f64 {
        self.ncp.tau().expect("min NCP rejected at construction")
    }

    pub(crate) fn check(&self, z: &Iterate) -> Result<(), Error> {
        if z.x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: z.x.len(),
            });
        }
        Ok(())
    }

    pub(crate) fn f_unchecked(&self, z: &Iterate) -> Vec<f64> {
        let t2 = z.t * z.t;
        let bx = self.b.apply(&z.x);
        let ax = self.a.apply(&z.x);
        bx.iter().zip(&ax).map(|(b, a)| t2 * b - a).collect()
    }

    pub(crate) fn h_from_f(&self, z: &Iterate, f: &[f64]) -> Vec<f64> {
        let mut h: Vec<f64> = z
            .x
            .iter()
            .zip(f)
            .map(|(&xi, &fi)| self.ncp.eval(xi, fi))
            .collect();
        h.push(dot(&z.x, &z.x) - 1.0);
        h
    }

    pub(crate) fn h_unchecked(&self, z: &Iterate) -> Vec<f64> {
        let f = self.f_unchecked(z);
        self.h_from_f(z, &f)
    }

    /// `JF(z) = [(m−1)(t²B − A)x^{m−2}  2tBx^{m−1}]`, an `n × (n+1)` matrix.
    pub fn jf(&self, z: &Iterate) -> Result<Matrix, Error> {
        self.check(z)?;
        Ok(self.jf_unchecked(z))
    }

    pub(crate) fn jf_unchecked(&self, z: &Iterate) -> Matrix {
        let n = self.dim();
        let t2 = z.t * z.t;
        let jb = self.b.jacobian(&z.x);
        let ja = self.a.jacobian(&z.x);
        let bx = self.b.apply(&z.x);
        let mut jf = Matrix::zeros(n, n + 1);
        for i in 0..n {
            for j in 0..n {
                jf[(i, j)] = t2 * jb[(i, j)] - ja[(i, j)];
            }
            jf[(i, n)] = 2.0 * z.t * bx[i];
        }
        jf
    }
}

/// Solver state `z = (x, t)`; the eigenvalue is `λ = t²`.
#[derive(Debug, Clone, PartialEq)]
pub struct Iterate {
    pub x: Vec<f64>,
    pub t: f64,
}

impl Iterate {
    pub fn new(x: Vec<f64>, t: f64) -> Self {
        Self { x, t }
    }

    pub fn lambda(&self) -> f64 {
        self.t * self.t
    }

    /// `(x₁, …, x_n, t)`.
    pub fn to_vec(&self) -> Vec<f64> {
        let mut v = self.x.clone();
        v.push(self.t);
        v
    }

    /// Inverse of [`Iterate::to_vec`]. Panics on an empty slice.
    pub fn from_slice(v: &[f64]) -> Self {
        let (t, x) = v.split_last().expect("iterate needs at least the t component");
        Self { x: x.to_vec(), t: *t }
    }

    /// `z + α d` with `d` laid out as in [`Iterate::to_vec`].
    pub fn step(&self, alpha: f64, d: &[f64]) -> Self {
        let n = self.x.len();
        Self {
            x: self.x.iter().zip(d).map(|(x, dx)| x + alpha * dx).collect(),
            t: self.t + alpha * d[n],
        }
    }
}

/// `F(x, t) = (t²B − A)x^{m−1}`.
pub fn eval_f(p: &Problem, z: &Iterate) -> Result<Vec<f64>, Error> {
    p.check(z)?;
    Ok(p.f_unchecked(z))
}

/// `H(z) = (φ(x_i, F_i(z))_{i=1..n}, xᵀx − 1)`.
pub fn eval_h(p: &Problem, z: &Iterate) -> Result<Vec<f64>, Error> {
    p.check(z)?;
    Ok(p.h_unchecked(z))
}

/// `Ψ(z) = ½‖H(z)‖²`.
pub fn eval_psi(p: &Problem, z: &Iterate) -> Result<f64, Error> {
    let h = eval_h(p, z)?;
    Ok(half_norm_sq(&h))
}

pub(crate) fn half_norm_sq(h: &[f64]) -> f64 {
    0.5 * dot(h, h)
}

/// `∇Ψ(z) = Gᵀ H(z)` for any `G ∈ ∂H(z)`.
pub fn grad_psi(p: &Problem, z: &Iterate, g: &Matrix) -> Result<Vec<f64>, Error> {
    let h = eval_h(p, z)?;
    let n1 = h.len();
    if g.nrows() != n1 || g.ncols() != n1 {
        return Err(Error::DimensionMismatch {
            expected: n1,
            found: g.nrows(),
        });
    }
    Ok(gradient_from(g, &h))
}

pub(crate) fn gradient_from(g: &Matrix, h: &[f64]) -> Vec<f64> {
    (0..g.ncols())
        .map(|j| (0..g.nrows()).map(|i| g[(i, j)] * h[i]).sum())
        .collect()
}
