//! Exact sparse multivariate polynomials.

mod monomial;
mod multipoly;
mod parse;

pub use monomial::{Monomial, MonomialOrder};
pub use multipoly::{MultiPoly, NumericPoly};
pub use parse::{parse_poly, parse_poly_list, parse_poly_with, render, VarNames};
