//! Exact polynomial arithmetic and real root isolation.
//!
//! Everything here works over arbitrary-precision integers and rationals;
//! floating point only appears in the `value` convenience field of
//! [`RootBracket`].

pub mod json;
mod laurent;
pub mod linalg;
mod matrix;
mod poly;
pub mod rational;
mod roots;

pub use laurent::{LaurentPoly, Specialization};
pub use matrix::IntMatrix;
pub use poly::{lt_polynomial, IntPoly};
pub use roots::{
    bracket_decimal, cauchy_bound, compare_roots, largest_real_root, poly_div_exact, poly_gcd,
    smallest_positive_root, squarefree, RootBracket, Sturm,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("not found: {0}")]
    NotFound(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Characteristic polynomial `det(tI - M)`.
pub fn char_poly(m: &IntMatrix) -> Result<IntPoly, PolyError> {
    m.char_poly()
}

pub fn is_reciprocal(p: &IntPoly) -> Result<bool, PolyError> {
    p.is_reciprocal()
}

/// Default root tolerance `1e-9`.
pub fn default_tol() -> num_rational::BigRational {
    rational::ten_to_minus(9)
}
