//! Exact scalars, dense matrices and the sparse elimination kernels used for
//! large tensor powers.

mod matrix;
mod scalar;
pub mod sparse;

pub use matrix::{kernel_basis, quotient_basis, rank, solve, Matrix, Subspace};
pub use scalar::{Field, Rational, Scalar};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("linear system has no solution")]
    NoSolution,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("scalar does not belong to the field {0}")]
    FieldMismatch(String),
    #[error("cannot parse scalar {0:?}")]
    ParseScalar(String),
    #[error("zero denominator")]
    ZeroDenominator,
}
