//! Groebner bases and the ideal operations built on them.

mod basis;
mod budget;
mod dimension;
mod engine;
mod hilbert;
mod ideal;

pub use basis::GroebnerBasis;
pub use budget::Budget;
pub use dimension::{min_hitting_set, monomial_dimension, DimensionResult};
pub use engine::GbStats;
pub use hilbert::{hilbert_numerator, one_minus_t_pow, poly_mul, IntPoly};
pub use ideal::{Ideal, RadicalAnswer, RadicalRoute};
