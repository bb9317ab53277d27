//! Damped semismooth Newton method with Armijo backtracking on `Ψ = ½‖H‖²`.
//!
//! Each iteration solves `G d = −H(z)` with `G` from [`crate::jacobian`]. The
//! Newton direction is replaced by `−∇Ψ(z)` when the factorization fails,
//! `G` is ill-conditioned, or `d` is not a sufficient descent direction,
//! i.e. when `∇Ψ(z)ᵀd > −ρ‖d‖^p`. The step `α = 2^{−i}` is the largest
//! satisfying `Ψ(z + αd) ≤ Ψ(z) + βα∇Ψ(z)ᵀd`.

use alloc::vec::Vec;

use crate::jacobian::{assemble_with, JacobianAssembly};
use crate::linalg::lu_solve;
use crate::residual::{gradient_from, half_norm_sq, Iterate, Problem};
use crate::tensor::TensorOperator;
use crate::{dot, norm2, Error};

/// Smallest `|t|` for which a root of `H` counts as a solution (`λ = t² > 0`).
pub const T_MIN: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Stop once `‖H(z)‖ ≤ eps`.
    pub eps: f64,
    /// Sufficient-descent constant.
    pub rho: f64,
    /// Sufficient-descent exponent, `p > 2`.
    pub p: f64,
    /// Armijo constant in `(0, ½)`.
    pub beta: f64,
    /// Penalized Fischer–Burmeister weight used when building problems.
    pub tau: f64,
    pub max_iter: usize,
    /// `G` counts as ill-conditioned when `κ(G) ≥ kappa_max`.
    pub kappa_max: f64,
    /// Backtracking gives up below this step length.
    pub min_step: f64,
    /// Zero tolerance of the index classification.
    pub tol_zero: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            eps: 1e-6,
            rho: 1e-10,
            p: 2.1,
            beta: 1e-4,
            tau: 0.95,
            max_iter: 1000,
            kappa_max: 1e10,
            min_step: libm::ldexp(1.0, -50),
            tol_zero: crate::jacobian::TOL_ZERO,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<(), Error> {
        if !(self.eps > 0.0) {
            return Err(Error::InvalidParameter("eps must be positive"));
        }
        if !(self.rho > 0.0) {
            return Err(Error::InvalidParameter("rho must be positive"));
        }
        if !(self.p > 2.0) {
            return Err(Error::InvalidParameter("p must exceed 2"));
        }
        if !(self.beta > 0.0 && self.beta < 0.5) {
            return Err(Error::InvalidParameter("beta must lie in (0, 1/2)"));
        }
        if !(self.tau > 0.0 && self.tau <= 1.0) {
            return Err(Error::InvalidParameter("tau must lie in (0, 1]"));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidParameter("max_iter must be positive"));
        }
        if !(self.kappa_max >= 1.0) {
            return Err(Error::InvalidParameter("kappa_max must be at least 1"));
        }
        if !(self.min_step > 0.0 && self.min_step <= 1.0) {
            return Err(Error::InvalidParameter("min_step must lie in (0, 1]"));
        }
        if !(self.tol_zero >= 0.0) {
            return Err(Error::InvalidParameter("tol_zero must be nonnegative"));
        }
        Ok(())
    }

    /// The NCP function selected by `tau`: plain Fischer–Burmeister at
    /// `τ = 1`, penalized otherwise.
    pub fn ncp(&self) -> crate::NcpKind {
        if self.tau >= 1.0 {
            crate::NcpKind::FischerBurmeister
        } else {
            crate::NcpKind::PenalizedFb { tau: self.tau }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolveStatus {
    /// `‖H‖ ≤ eps` with `|t| > T_MIN`.
    Solution,
    /// The line search stalled away from a root.
    StationaryNotSolution,
    MaxIterations,
    /// `‖H‖ ≤ eps` but `t ≈ 0`, i.e. `λ = 0`.
    DegenerateT,
}

impl SolveStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolveStatus::Solution => "solution",
            SolveStatus::StationaryNotSolution => "stationary_not_solution",
            SolveStatus::MaxIterations => "max_iterations",
            SolveStatus::DegenerateT => "degenerate_t",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub status: SolveStatus,
    /// `t²` at the final iterate.
    pub lambda: f64,
    pub t: f64,
    pub x: Vec<f64>,
    /// `(λB − A)x^{m−1}` at the final iterate.
    pub w: Vec<f64>,
    /// Newton steps taken.
    pub iterations: usize,
    /// `‖H(z_k)‖` for `k = 0..=iterations`.
    pub residual_history: Vec<f64>,
    /// Accepted `α_k` for `k = 0..iterations`.
    pub step_history: Vec<f64>,
    /// Iterates `z_0, …, z_iterations`.
    pub trace: Vec<Iterate>,
    pub fallback_count: usize,
    pub s3_degeneracy_events: usize,
}

impl SolveReport {
    pub fn final_residual(&self) -> f64 {
        *self.residual_history.last().expect("history holds the start")
    }

    pub fn is_solution(&self) -> bool {
        self.status == SolveStatus::Solution
    }
}

/// Search direction at a non-root iterate.
#[derive(Debug, Clone, PartialEq)]
pub struct NewtonDirection {
    pub d: Vec<f64>,
    pub used_fallback: bool,
    /// `∇Ψ(z) = GᵀH(z)`.
    pub gradient: Vec<f64>,
    pub condition: f64,
    pub s3_degenerate: usize,
}

/// Newton direction at `z`, or `−∇Ψ(z)` when it is unusable.
pub fn newton_direction(p: &Problem, z: &Iterate, cfg: &SolverConfig) -> Result<NewtonDirection, Error> {
    p.check(z)?;
    let f = p.f_unchecked(z);
    let h = p.h_from_f(z, &f);
    let jf = p.jf_unchecked(z);
    let asm = assemble_with(z, &f, &jf, p.tau(), cfg.tol_zero);
    Ok(direction_from(&asm, &h, cfg))
}

fn direction_from(asm: &JacobianAssembly, h: &[f64], cfg: &SolverConfig) -> NewtonDirection {
    let gradient = gradient_from(&asm.g, h);
    let newton = if asm.condition_estimate < cfg.kappa_max {
        let rhs: Vec<f64> = h.iter().map(|v| -v).collect();
        lu_solve(&asm.g, &rhs)
    } else {
        None
    };
    let accepted = newton.filter(|d| {
        let slope = dot(&gradient, d);
        slope <= -cfg.rho * libm::pow(norm2(d), cfg.p)
    });
    let (d, used_fallback) = match accepted {
        Some(d) => (d, false),
        None => (gradient.iter().map(|g| -g).collect(), true),
    };
    NewtonDirection {
        d,
        used_fallback,
        gradient,
        condition: asm.condition_estimate,
        s3_degenerate: asm.s3_degenerate,
    }
}

/// Armijo step `2^{−i}` along `d`, or `None` when `d` is not a descent
/// direction or the step falls below `cfg.min_step`.
pub fn line_search(p: &Problem, z: &Iterate, d: &[f64], cfg: &SolverConfig) -> Result<Option<f64>, Error> {
    p.check(z)?;
    if d.len() != z.x.len() + 1 {
        return Err(Error::DimensionMismatch {
            expected: z.x.len() + 1,
            found: d.len(),
        });
    }
    let f = p.f_unchecked(z);
    let h = p.h_from_f(z, &f);
    let jf = p.jf_unchecked(z);
    let asm = assemble_with(z, &f, &jf, p.tau(), cfg.tol_zero);
    let slope = dot(&gradient_from(&asm.g, &h), d);
    Ok(armijo(p, z, d, half_norm_sq(&h), slope, cfg).map(|(alpha, _, _)| alpha))
}

/// Returns the accepted step, the new iterate and its `H`.
fn armijo(
    p: &Problem,
    z: &Iterate,
    d: &[f64],
    psi0: f64,
    slope: f64,
    cfg: &SolverConfig,
) -> Option<(f64, Iterate, Vec<f64>)> {
    if !(slope < 0.0) {
        return None;
    }
    let mut alpha = 1.0;
    while alpha >= cfg.min_step {
        let trial = z.step(alpha, d);
        let h = p.h_unchecked(&trial);
        let psi = half_norm_sq(&h);
        // NaN fails the comparison and keeps backtracking
        if psi <= psi0 + cfg.beta * alpha * slope {
            return Some((alpha, trial, h));
        }
        alpha *= 0.5;
    }
    None
}

/// Runs the damped Newton iteration from `z0`.
///
/// Errors only on malformed input; solver failures are reported through
/// [`SolveReport::status`].
pub fn solve(p: &Problem, z0: &Iterate, cfg: &SolverConfig) -> Result<SolveReport, Error> {
    p.check(z0)?;
    cfg.validate()?;
    let tau = p.tau();

    let mut z = z0.clone();
    let mut f = p.f_unchecked(&z);
    let mut h = p.h_from_f(&z, &f);
    let mut residual_history = alloc::vec![norm2(&h)];
    let mut step_history = Vec::new();
    let mut trace = alloc::vec![z.clone()];
    let mut fallback_count = 0;
    let mut s3_degeneracy_events = 0;

    let status = loop {
        let residual = *residual_history.last().unwrap();
        if residual <= cfg.eps {
            break if z.t.abs() > T_MIN {
                SolveStatus::Solution
            } else {
                SolveStatus::DegenerateT
            };
        }
        if step_history.len() >= cfg.max_iter {
            break SolveStatus::MaxIterations;
        }

        let jf = p.jf_unchecked(&z);
        let asm = assemble_with(&z, &f, &jf, tau, cfg.tol_zero);
        let dir = direction_from(&asm, &h, cfg);
        s3_degeneracy_events += dir.s3_degenerate;
        if dir.used_fallback {
            fallback_count += 1;
        }
        let slope = dot(&dir.gradient, &dir.d);
        let Some((alpha, next, next_h)) = armijo(p, &z, &dir.d, half_norm_sq(&h), slope, cfg) else {
            break SolveStatus::StationaryNotSolution;
        };

        let next_residual = norm2(&next_h);
        debug_assert!(next_residual <= residual, "Armijo step increased the residual");
        z = next;
        f = p.f_unchecked(&z);
        h = next_h;
        residual_history.push(next_residual);
        step_history.push(alpha);
        trace.push(z.clone());
    };

    let lambda = z.lambda();
    Ok(SolveReport {
        status,
        lambda,
        t: z.t,
        w: f,
        iterations: step_history.len(),
        x: z.x,
        residual_history,
        step_history,
        trace,
        fallback_count,
        s3_degeneracy_events,
    })
}

/// Checks of a candidate `(λ, x)` against `0 ≤ x ⊥ (λB − A)x^{m−1} ≥ 0`,
/// `‖x‖ = 1`, `λ > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub lambda: f64,
    pub w: Vec<f64>,
    pub min_x: f64,
    pub min_w: f64,
    /// `|xᵀw|`.
    pub complementarity: f64,
    /// `|‖x‖₂ − 1|`.
    pub norm_deviation: f64,
    pub passed: bool,
}

/// Certifies `(λ, x)` with every check at tolerance `tol`.
pub fn certify(p: &Problem, lambda: f64, x: &[f64], tol: f64) -> Result<Certificate, Error> {
    if x.len() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: x.len(),
        });
    }
    let bx = p.b().apply(x);
    let ax = p.a().apply(x);
    let w: Vec<f64> = bx.iter().zip(&ax).map(|(b, a)| lambda * b - a).collect();
    let min_x = x.iter().copied().fold(f64::INFINITY, f64::min);
    let min_w = w.iter().copied().fold(f64::INFINITY, f64::min);
    let complementarity = dot(x, &w).abs();
    let norm_deviation = (norm2(x) - 1.0).abs();
    let passed = lambda > 0.0
        && min_x >= -tol
        && min_w >= -tol
        && complementarity <= tol
        && norm_deviation <= tol;
    Ok(Certificate {
        lambda,
        w,
        min_x,
        min_w,
        complementarity,
        norm_deviation,
        passed,
    })
}
