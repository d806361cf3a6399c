//! Polynomials over the two-element field.
//!
//! A [`Polynomial`] is the set of its monomials: coefficients are 0 or 1, so
//! addition is symmetric difference and no coefficient is ever stored.

pub(crate) mod basis;
mod monomial;
mod polynomial;

pub use basis::{binomial, monomials_of_degree, GradedBasis};
pub use monomial::Monomial;
pub use polynomial::Polynomial;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum F2Error {
    #[error("variable count mismatch: {left} vs {right}")]
    NvarsMismatch { left: usize, right: usize },
    #[error("a polynomial ring needs at least one variable")]
    NoVariables,
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("degree mismatch: basis has degree {expected}, polynomial has degree {found}")]
    DegreeMismatch { expected: u64, found: u64 },
    #[error("vector length {found} does not match basis size {expected}")]
    LengthMismatch { expected: usize, found: usize },
}
