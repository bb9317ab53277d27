//! Damped semismooth Newton solver for the tensor eigenvalue complementarity
//! problem (TEiCP): find `λ > 0` and `x ≠ 0` with
//!
//! ```text
//! 0 ≤ x ⊥ (λB − A)x^{m−1} ≥ 0
//! ```
//!
//! The problem is rewritten as the square system `H(x, t) = 0` with
//! `λ = t²`, where the first `n` rows apply an NCP function to the pairs
//! `(x_i, F_i(x, t))`, `F(x, t) = (t²B − A)x^{m−1}`, and the last row pins
//! `xᵀx = 1`. The solver uses an explicitly constructed element of the
//! B-subdifferential of `H` as its Newton matrix and globalizes with an
//! Armijo line search on `Ψ = ½‖H‖²`.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;
pub mod jacobian;
pub mod linalg;
pub mod ncp;
pub mod oracles;
pub mod residual;
pub mod solver;
pub mod tensor;

pub use error::Error;
pub use jacobian::{IndexPartition, JacobianAssembly, RowRule};
pub use ncp::{NcpKind, TieSelector};
pub use residual::{Iterate, Problem};
pub use solver::{Certificate, SolveReport, SolveStatus, SolverConfig};
pub use tensor::{
    BOperator, DiagonalIdentityOperator, GeneralTensor, SemiSymmetricTensor, SymmetricTensor,
    TensorOperator, UnitSphereIdentityOperator,
};

/// Dense matrix type used throughout the crate.
pub type Matrix = nalgebra::DMatrix<f64>;

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm2(a: &[f64]) -> f64 {
    libm::sqrt(dot(a, a))
}

/// `x^k` for a nonnegative integer exponent, exact for negative bases.
pub(crate) fn powi(x: f64, k: usize) -> f64 {
    let mut acc = 1.0;
    for _ in 0..k {
        acc *= x;
    }
    acc
}
