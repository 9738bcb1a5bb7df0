//! Exact multivariate polynomials over ℚ: monomial orders, arithmetic,
//! parsing and printing, and determinants of polynomial matrices.

mod matrix;
mod monomial;
mod multipoly;
mod parse;

pub use matrix::{determinant, from_columns, jacobian, poly_matrix_minors, subsets, PolyMatrix};
pub use monomial::{Monomial, MonomialOrder};
pub use multipoly::{evaluate, gradient, MultiPoly, Ring};
pub use parse::{parse_poly, parse_rational};
