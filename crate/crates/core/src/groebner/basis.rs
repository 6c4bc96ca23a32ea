use std::fmt;

use super::budget::Budget;
use super::dimension::{monomial_dimension, DimensionResult};
use super::engine::{buchberger, reduce, GbStats, Reducer, ReductionMode};
use super::hilbert::{hilbert_numerator, IntPoly};
use crate::error::Result;
use crate::field::Field;
use crate::poly::{Monomial, MonomialOrder, Polynomial, Ring};

/// A reduced Groebner basis, sorted by increasing leading monomial.
pub struct GroebnerBasis<F: Field> {
    ring: Ring<F>,
    polys: Vec<Polynomial<F>>,
    reducers: Vec<Reducer<F>>,
    stats: GbStats,
}

impl<F: Field> Clone for GroebnerBasis<F> {
    fn clone(&self) -> Self {
        GroebnerBasis::from_reduced(&self.ring, self.polys.clone(), self.stats.clone())
    }
}

impl<F: Field> fmt::Debug for GroebnerBasis<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroebnerBasis")
            .field("order", &self.ring.order())
            .field("polys", &self.polys)
            .finish()
    }
}

impl<F: Field> GroebnerBasis<F> {
    fn from_reduced(ring: &Ring<F>, polys: Vec<Polynomial<F>>, stats: GbStats) -> Self {
        let reducers = polys.iter().map(Reducer::new).collect();
        GroebnerBasis {
            ring: ring.clone(),
            polys,
            reducers,
            stats,
        }
    }

    /// Reduced basis of `gens` under `order`.
    pub fn compute(gens: &[Polynomial<F>], ring: &Ring<F>, order: MonomialOrder, budget: &Budget) -> Result<Self> {
        let ring = ring.with_order(order);
        let gens = gens.iter().map(|g| g.to_ring(&ring)).collect::<Result<Vec<_>>>()?;
        let (polys, stats) = buchberger(&ring, &[], &gens, budget)?;
        Ok(Self::from_reduced(&ring, polys, stats))
    }

    /// Basis of the ideal generated by `self` and `gens`, reusing the
    /// pairs already processed.
    pub fn extend(&self, gens: &[Polynomial<F>], budget: &Budget) -> Result<Self> {
        let gens = gens.iter().map(|g| g.to_ring(&self.ring)).collect::<Result<Vec<_>>>()?;
        if self.is_unit() {
            return Ok(self.clone());
        }
        let (polys, mut stats) = buchberger(&self.ring, &self.polys, &gens, budget)?;
        stats.pairs_reduced += self.stats.pairs_reduced;
        stats.zero_reductions += self.stats.zero_reductions;
        stats.max_pair_degree = stats.max_pair_degree.max(self.stats.max_pair_degree);
        Ok(Self::from_reduced(&self.ring, polys, stats))
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.ring.order()
    }

    pub fn polys(&self) -> &[Polynomial<F>] {
        &self.polys
    }

    pub fn stats(&self) -> &GbStats {
        &self.stats
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].is_constant()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.reducers.iter().map(|r| r.lm.clone()).collect()
    }

    /// The unique remainder of `p`, in `p`'s ring.
    pub fn normal_form(&self, p: &Polynomial<F>) -> Result<Polynomial<F>> {
        let q = p.to_ring(&self.ring)?;
        let terms = reduce(&self.ring, q.terms().to_vec(), self.reducers.iter(), ReductionMode::Exact, true);
        Polynomial::from_terms(&self.ring, terms).to_ring(p.ring())
    }

    pub fn contains(&self, p: &Polynomial<F>) -> Result<bool> {
        let q = p.to_ring(&self.ring)?;
        let rest = reduce(&self.ring, q.terms().to_vec(), self.reducers.iter(), ReductionMode::Scaled, true);
        Ok(rest.is_empty())
    }

    pub fn dimension(&self) -> DimensionResult {
        monomial_dimension(&self.leading_monomials(), self.ring.vars())
    }

    /// Numerator of the Hilbert series of `R / in(I)`.
    pub fn hilbert_numerator(&self) -> IntPoly {
        hilbert_numerator(&self.leading_monomials())
    }

    pub fn to_texts(&self) -> Vec<String> {
        self.polys.iter().map(|p| p.to_text()).collect()
    }
}
