//! Exact arithmetic over prime fields: scalars, monomials, monomial orders,
//! sparse polynomials and polynomial matrices.

mod matrix;
mod monomial;
mod order;
mod parse;
mod poly;
mod scalar;

pub use matrix::PolyMatrix;
pub use monomial::{monomials_of_degree, monomials_up_to_degree, Monomial, MAX_VARS};
pub use order::{MonomialOrder, OrderKind};
pub use parse::{parse_poly, parse_poly_list};
pub use poly::{PolyRing, Polynomial};
pub use scalar::{FpScalar, PrimeField};

pub(crate) use poly::{merge_scaled, same_ring};
pub(crate) use scalar::is_prime;
