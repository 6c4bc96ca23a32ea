//! Computational toolkit for Gelfand-Tsetlin polynomial systems: exact
//! polynomial arithmetic, a Buchberger engine, regular-sequence and
//! Koszul-homology certificates, Kostant-Wallach fiber probes, and
//! verifiers for the equidimensionality statements about these varieties.

pub mod error;
pub mod field;
pub mod groebner;
pub mod gt;
pub mod io;
pub mod koszul;
pub mod kw;
pub mod lab;
pub mod linalg;
pub mod regularity;
pub mod poly;

pub use error::{Error, Result};
pub use groebner::{Budget, GroebnerBasis, Ideal};
pub use field::{Field, FieldChoice, PrimeField, Rationals};
pub use poly::{Monomial, MonomialOrder, Polynomial, Ring, RingHom, Variable};
