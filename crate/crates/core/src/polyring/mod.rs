//! Exact sparse multivariate polynomials over the rationals.

mod format;
pub(crate) mod intpoly;
mod monomial;
mod polynomial;
mod substitute;

pub use format::PolynomialDisplay;
pub use monomial::Monomial;
pub use polynomial::{Degrees, Polynomial};
pub(crate) use substitute::Composer;

use thiserror::Error;

/// Coefficient field: arbitrary-precision rationals, always in lowest terms.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("expected {expected} values, got {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("intermediate result has {terms} terms (limit {limit})")]
    TooLarge { terms: usize, limit: usize },
}
