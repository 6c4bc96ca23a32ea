//! Polynomial families and index sets attached to the generic matrix
//! `X = (x_ij)`: power traces, the weak-variety system, characteristic
//! coefficients, partial systems and the substitution homomorphisms
//! relating them.

mod homs;
pub(crate) mod matrix;
mod systems;

pub use homs::{branch_hom, branch_substitution, named_hom, NamedHom};
pub use systems::{
    chi, chi_level, d, e, gamma_bar, gamma_bar_level, index_set, partial_system, punctured_index_set, sigma,
    sigma_polys, Family, GtSystem, PartialFamily,
};
