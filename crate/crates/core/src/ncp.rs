//! NCP functions `φ(a, b)` with `φ(a, b) = 0 ⇔ a ≥ 0, b ≥ 0, ab = 0`, and
//! selection of elements of their generalized gradients.

use crate::Error;

/// Which NCP function to use.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NcpKind {
    /// `a − (a − b)₊`. Not accepted by the Newton solver: its merit function
    /// is not continuously differentiable.
    Min,
    /// `(a + b) − √(a² + b²)`.
    FischerBurmeister,
    /// `τ φ_FB(a, b) + (1 − τ) a₊ b₊` with `τ ∈ (0, 1)`.
    PenalizedFb { tau: f64 },
}

/// Resolves the choices left open at nonsmooth points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TieSelector {
    /// `(σ, η)` with `‖(σ, η)‖ ≤ 1`, used at `(a, b) = (0, 0)`.
    pub sigma: f64,
    pub eta: f64,
    /// Element of `∂x₊` at `x = 0`, in `[0, 1]`. Also used as the weight `v`
    /// of the min function's tie `(1 − v, v)` at `a = b`.
    pub plus_at_zero: f64,
}

impl Default for TieSelector {
    fn default() -> Self {
        Self {
            sigma: 0.0,
            eta: 0.0,
            plus_at_zero: 0.0,
        }
    }
}

impl TieSelector {
    pub fn validate(&self) -> Result<(), Error> {
        if libm::hypot(self.sigma, self.eta) > 1.0 {
            return Err(Error::InvalidParameter("tie selector (sigma, eta) outside unit ball"));
        }
        if !(0.0..=1.0).contains(&self.plus_at_zero) {
            return Err(Error::InvalidParameter("tie selector plus_at_zero outside [0, 1]"));
        }
        Ok(())
    }
}

impl NcpKind {
    /// Penalized Fischer–Burmeister with `τ` checked to lie in `(0, 1)`.
    pub fn penalized(tau: f64) -> Result<Self, Error> {
        if tau > 0.0 && tau < 1.0 {
            Ok(NcpKind::PenalizedFb { tau })
        } else {
            Err(Error::InvalidParameter("penalized FB tau must lie in (0, 1)"))
        }
    }

    /// The Fischer–Burmeister weight: `1` for plain FB, `τ` for the penalized
    /// form, `None` for min.
    pub fn tau(&self) -> Option<f64> {
        match self {
            NcpKind::Min => None,
            NcpKind::FischerBurmeister => Some(1.0),
            NcpKind::PenalizedFb { tau } => Some(*tau),
        }
    }

    pub fn eval(&self, a: f64, b: f64) -> f64 {
        match self {
            NcpKind::Min => a - plus(a - b),
            NcpKind::FischerBurmeister => fischer_burmeister(a, b),
            NcpKind::PenalizedFb { tau } => {
                tau * fischer_burmeister(a, b) + (1.0 - tau) * plus(a) * plus(b)
            }
        }
    }

    /// An element `(v_a, v_b)` of `∂φ(a, b)`.
    pub fn subgradient(&self, a: f64, b: f64, sel: &TieSelector) -> (f64, f64) {
        match self {
            NcpKind::Min => {
                if a < b {
                    (1.0, 0.0)
                } else if a > b {
                    (0.0, 1.0)
                } else {
                    (1.0 - sel.plus_at_zero, sel.plus_at_zero)
                }
            }
            NcpKind::FischerBurmeister => fb_gradient(a, b, sel),
            NcpKind::PenalizedFb { tau } => {
                let (ga, gb) = fb_gradient(a, b, sel);
                if a == 0.0 && b == 0.0 {
                    return (tau * ga, tau * gb);
                }
                let pa = plus_gradient(a, sel) * plus(b);
                let pb = plus(a) * plus_gradient(b, sel);
                (tau * ga + (1.0 - tau) * pa, tau * gb + (1.0 - tau) * pb)
            }
        }
    }
}

/// `φ(a, b)` for the given kind.
pub fn ncp_eval(kind: NcpKind, a: f64, b: f64) -> f64 {
    kind.eval(a, b)
}

/// An element of `∂φ(a, b)` chosen by `sel` at nonsmooth points.
pub fn ncp_subgradient(kind: NcpKind, a: f64, b: f64, sel: &TieSelector) -> (f64, f64) {
    kind.subgradient(a, b, sel)
}

fn plus(x: f64) -> f64 {
    if x > 0.0 {
        x
    } else {
        0.0
    }
}

fn plus_gradient(x: f64, sel: &TieSelector) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        0.0
    } else {
        sel.plus_at_zero
    }
}

fn fischer_burmeister(a: f64, b: f64) -> f64 {
    (a + b) - libm::hypot(a, b)
}

fn fb_gradient(a: f64, b: f64, sel: &TieSelector) -> (f64, f64) {
    if a == 0.0 && b == 0.0 {
        return (1.0 - sel.sigma, 1.0 - sel.eta);
    }
    let r = libm::hypot(a, b);
    (1.0 - a / r, 1.0 - b / r)
}
