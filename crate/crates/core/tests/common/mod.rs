#![allow(dead_code)]

use teicp_core::SymmetricTensor;

/// The order-6, dimension-4 nonnegative tensor shipped as a CLI fixture.
pub fn nonneg_6x4() -> SymmetricTensor {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../teicp/fixtures/nonneg_6x4.txt");
    let text = std::fs::read_to_string(path).expect("fixture readable");
    let mut a = SymmetricTensor::zeros(6, 4).unwrap();
    for line in text.lines() {
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 7 {
            continue;
        }
        let idx: Vec<usize> = fields[..6].iter().map(|s| s.parse::<usize>().unwrap() - 1).collect();
        a.set(&idx, fields[6].parse().unwrap()).unwrap();
    }
    assert_eq!(a.nnz(), 84);
    a
}

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use teicp_core::{
    BOperator, GeneralTensor, Iterate, Matrix, NcpKind, Problem, SemiSymmetricTensor, TensorOperator,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform_vec(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(lo..hi)).collect()
}

pub fn random_general(rng: &mut ChaCha8Rng, m: usize, n: usize) -> GeneralTensor {
    let len = n.pow(m as u32);
    GeneralTensor::from_data(m, n, uniform_vec(rng, len, -1.0, 1.0)).unwrap()
}

/// Central-difference Jacobian of `f` at `z`.
pub fn fd_jacobian(f: impl Fn(&[f64]) -> Vec<f64>, z: &[f64], h: f64) -> Matrix {
    let rows = f(z).len();
    let mut jac = Matrix::zeros(rows, z.len());
    let mut zp = z.to_vec();
    for j in 0..z.len() {
        zp[j] = z[j] + h;
        let fp = f(&zp);
        zp[j] = z[j] - h;
        let fm = f(&zp);
        zp[j] = z[j];
        for i in 0..rows {
            jac[(i, j)] = (fp[i] - fm[i]) / (2.0 * h);
        }
    }
    jac
}

pub fn h_of(p: &Problem) -> impl Fn(&[f64]) -> Vec<f64> + '_ {
    move |v| teicp_core::residual::eval_h(p, &Iterate::from_slice(v)).unwrap()
}

pub fn max_abs_diff(a: &Matrix, b: &Matrix) -> f64 {
    (a - b).iter().fold(0.0f64, |acc, v| acc.max(v.abs()))
}

/// A random problem of order `m` (even, sphere-identity B) or any order
/// (diagonal-identity B when `diag_b`).
pub fn random_problem(rng: &mut ChaCha8Rng, m: usize, n: usize, diag_b: bool, ncp: NcpKind) -> Problem {
    let a = random_general(rng, m, n);
    let b = if diag_b {
        BOperator::diag_identity(m, n).unwrap()
    } else {
        BOperator::sphere_identity(m, n).unwrap()
    };
    Problem::from_general(&a, b, ncp).unwrap()
}

/// Random point where every pair `(x_i, F_i)` is at least `margin` away from
/// the kinks of the penalized Fischer–Burmeister function.
pub fn differentiable_point(rng: &mut ChaCha8Rng, p: &Problem, margin: f64) -> Iterate {
    loop {
        let x = uniform_vec(rng, p.dim(), -1.0, 1.0);
        let z = Iterate::new(x, rng.random_range(0.3..2.0));
        let f = teicp_core::residual::eval_f(p, &z).unwrap();
        if z.x.iter().chain(&f).all(|v| v.abs() > margin) {
            return z;
        }
    }
}

/// Which set an index is forced into by [`nonsmooth_instance`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Forced {
    /// `x_i = 0, F_i = 0`.
    BothZero,
    /// `x_i = 0`, `F_i` left as is.
    XZero,
    /// `x_i > 0, F_i = 0`.
    FZero,
    Free,
}

/// Builds `(A, z)` with the requested zero pattern by shifting entries
/// `a_{i k … k}` of a random tensor, which only moves `F_i`.
pub fn nonsmooth_instance(
    rng: &mut ChaCha8Rng,
    m: usize,
    pattern: &[Forced],
    ncp: NcpKind,
) -> (Problem, Iterate) {
    let n = pattern.len();
    let mut a = random_general(rng, m, n);
    let mut x = uniform_vec(rng, n, 0.2, 1.0);
    for (i, kind) in pattern.iter().enumerate() {
        if matches!(kind, Forced::BothZero | Forced::XZero) {
            x[i] = 0.0;
        }
    }
    let z = Iterate::new(x, rng.random_range(0.5..1.5));
    let b = if m % 2 == 0 {
        BOperator::sphere_identity(m, n).unwrap()
    } else {
        BOperator::diag_identity(m, n).unwrap()
    };
    let anchor = (0..n).find(|&k| z.x[k] > 0.0).expect("one positive component");
    let f = teicp_core::residual::eval_f(&Problem::from_general(&a, b.clone(), ncp).unwrap(), &z).unwrap();
    for (i, kind) in pattern.iter().enumerate() {
        if matches!(kind, Forced::BothZero | Forced::FZero) {
            let mut idx = vec![anchor; m];
            idx[0] = i;
            let shift = f[i] / z.x[anchor].powi(m as i32 - 1);
            let old = a.get(&idx).unwrap();
            a.set(&idx, old + shift).unwrap();
        }
    }
    (Problem::from_general(&a, b, ncp).unwrap(), z)
}

pub fn semi(t: &GeneralTensor) -> SemiSymmetricTensor {
    t.semi_symmetrize()
}

pub fn apply_op(op: &dyn TensorOperator, x: &[f64]) -> Vec<f64> {
    op.apply(x)
}
