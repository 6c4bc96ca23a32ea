//! Exact sparse multivariate polynomials over Q and F_p.

mod hom;
mod monomial;
mod order;
mod parse;
mod polynomial;
mod ring;

pub use hom::RingHom;
pub use monomial::{Exponents, Monomial};
pub use order::MonomialOrder;
pub use parse::{parse_polynomial, variables_in};
pub use polynomial::{Polynomial, Term};
pub use ring::{Ring, Variable};
