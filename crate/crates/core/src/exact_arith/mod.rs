//! Exact rational scalars and symmetric matrices.

mod cf;
mod matrix;
mod rat;

use thiserror::Error;

pub use cf::{cf_evaluate, negative_cf_expand};
pub use matrix::{dot, inertia, solve_linear, Inertia, QSymMatrix};
pub use rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
    #[error("matrix is not symmetric at ({i}, {j})")]
    NotSymmetric { i: usize, j: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}
