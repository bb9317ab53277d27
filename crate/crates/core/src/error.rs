use core::fmt;

/// Errors raised while building problems or evaluating operators.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A vector or tensor did not have the expected dimension.
    DimensionMismatch { expected: usize, found: usize },
    /// Two tensors or operators disagree on their order.
    OrderMismatch { expected: usize, found: usize },
    /// Tensor order below 2 (or odd where an even order is required).
    InvalidOrder(usize),
    /// Tensor dimension of zero.
    InvalidDimension(usize),
    /// A tensor index tuple had the wrong length or an out-of-range entry.
    InvalidIndex { order: usize, dim: usize },
    /// A configuration parameter fell outside its admissible range.
    InvalidParameter(&'static str),
    /// The min NCP function cannot drive the Newton solver.
    UnsupportedNcp,
    /// Dense evaluation would exceed the oracle size guard.
    TooLarge { entries: u128, limit: u128 },
    /// An oracle input violated its structural precondition.
    Precondition(&'static str),
    /// An iterative oracle ran out of iterations.
    NotConverged { iterations: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::OrderMismatch { expected, found } => {
                write!(f, "order mismatch: expected {expected}, found {found}")
            }
            Error::InvalidOrder(m) => write!(f, "invalid tensor order {m}"),
            Error::InvalidDimension(n) => write!(f, "invalid tensor dimension {n}"),
            Error::InvalidIndex { order, dim } => {
                write!(f, "index tuple must have {order} entries in 0..{dim}")
            }
            Error::InvalidParameter(name) => write!(f, "invalid parameter: {name}"),
            Error::UnsupportedNcp => {
                write!(f, "the min NCP function is not supported by the Newton solver")
            }
            Error::TooLarge { entries, limit } => {
                write!(f, "dense evaluation needs {entries} entries (limit {limit})")
            }
            Error::Precondition(what) => write!(f, "precondition violated: {what}"),
            Error::NotConverged { iterations } => {
                write!(f, "no convergence after {iterations} iterations")
            }
        }
    }
}

impl core::error::Error for Error {}
