use std::sync::OnceLock;

use serde::Serialize;

use super::basis::GroebnerBasis;
use super::budget::Budget;
use super::dimension::DimensionResult;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{MonomialOrder, Polynomial, Ring, Variable};

/// How radical membership is decided.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RadicalRoute {
    /// Plain membership first, then the Rabinowitsch test.
    #[default]
    Auto,
    Rabinowitsch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RadicalAnswer {
    pub member: bool,
    /// `"ideal_membership"` or `"rabinowitsch"`.
    pub decided_by: &'static str,
}

/// Generators plus a lazily computed reduced basis in the ring's order.
pub struct Ideal<F: Field> {
    ring: Ring<F>,
    gens: Vec<Polynomial<F>>,
    gb: OnceLock<GroebnerBasis<F>>,
}

impl<F: Field> Clone for Ideal<F> {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(b) = self.gb.get() {
            let _ = gb.set(b.clone());
        }
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            gb,
        }
    }
}

impl<F: Field> std::fmt::Debug for Ideal<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Ideal").field("gens", &self.gens).finish()
    }
}

impl<F: Field> Ideal<F> {
    pub fn new(ring: &Ring<F>, gens: impl IntoIterator<Item = Polynomial<F>>) -> Result<Self> {
        let gens = gens
            .into_iter()
            .map(|g| {
                if !g.ring().same_space(ring) {
                    return Err(Error::RingMismatch);
                }
                g.to_ring(ring)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal {
            ring: ring.clone(),
            gens,
            gb: OnceLock::new(),
        })
    }

    pub fn zero(ring: &Ring<F>) -> Self {
        Ideal::new(ring, []).expect("empty")
    }

    pub fn unit(ring: &Ring<F>) -> Self {
        Ideal::new(ring, [Polynomial::one(ring)]).expect("same ring")
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    /// Cached reduced basis in the ring's order. Budget failures are not
    /// cached.
    pub fn groebner(&self, budget: &Budget) -> Result<&GroebnerBasis<F>> {
        if let Some(b) = self.gb.get() {
            return Ok(b);
        }
        let b = GroebnerBasis::compute(&self.gens, &self.ring, self.ring.order(), budget)?;
        Ok(self.gb.get_or_init(|| b))
    }

    pub fn groebner_in(&self, order: MonomialOrder, budget: &Budget) -> Result<GroebnerBasis<F>> {
        if order == self.ring.order() {
            return self.groebner(budget).cloned();
        }
        GroebnerBasis::compute(&self.gens, &self.ring, order, budget)
    }

    /// Installs an externally computed basis of this ideal.
    pub(crate) fn with_basis(self, gb: GroebnerBasis<F>) -> Self {
        debug_assert_eq!(gb.order(), self.ring.order());
        let _ = self.gb.set(gb);
        self
    }

    pub fn cached_basis(&self) -> Option<&GroebnerBasis<F>> {
        self.gb.get()
    }

    pub fn normal_form(&self, p: &Polynomial<F>, budget: &Budget) -> Result<Polynomial<F>> {
        self.groebner(budget)?.normal_form(p)
    }

    pub fn contains(&self, p: &Polynomial<F>, budget: &Budget) -> Result<bool> {
        if p.is_zero() {
            return Ok(true);
        }
        self.groebner(budget)?.contains(p)
    }

    pub fn contains_ideal(&self, other: &Ideal<F>, budget: &Budget) -> Result<bool> {
        for g in other.gens() {
            if !self.contains(g, budget)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_unit(&self, budget: &Budget) -> Result<bool> {
        Ok(self.groebner(budget)?.is_unit())
    }

    /// `I + (extra)`, reusing the cached basis when there is one.
    pub fn plus(&self, extra: &[Polynomial<F>], budget: &Budget) -> Result<Ideal<F>> {
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        let out = Ideal::new(&self.ring, gens)?;
        match self.gb.get() {
            Some(b) => {
                let extra = extra.iter().map(|p| p.to_ring(&self.ring)).collect::<Result<Vec<_>>>()?;
                Ok(out.with_basis(b.extend(&extra, budget)?))
            }
            None => Ok(out),
        }
    }

    /// Generators of `(t I + (1 - t) J) ∩ k[x]`, i.e. of `I ∩ J`.
    fn intersection_gens(&self, a: &[Polynomial<F>], b: &[Polynomial<F>], budget: &Budget) -> Result<Vec<Polynomial<F>>> {
        let big = self.ring.with_aux_block(1);
        let t = Polynomial::var(&big, Variable::Aux(0))?;
        let one_minus_t = Polynomial::one(&big).sub(&t)?;
        let mut gens = Vec::with_capacity(a.len() + b.len());
        for g in a {
            gens.push(t.mul(&g.to_ring(&big)?)?);
        }
        for g in b {
            gens.push(one_minus_t.mul(&g.to_ring(&big)?)?);
        }
        let gb = GroebnerBasis::compute(&gens, &big, big.order(), budget)?;
        gb.polys()
            .iter()
            .filter(|p| p.leading_monomial().map(|m| m.exponent(0) == 0).unwrap_or(false))
            .map(|p| p.to_ring(&self.ring))
            .collect()
    }

    pub fn intersect(&self, other: &Ideal<F>, budget: &Budget) -> Result<Ideal<F>> {
        if !other.ring.same_space(&self.ring) {
            return Err(Error::RingMismatch);
        }
        let gens = self.intersection_gens(&self.gens, &other.gens, budget)?;
        Ideal::new(&self.ring, gens)
    }

    /// `(I : f) = {h : h f ∈ I}` via `I ∩ (f)` divided by `f`.
    pub fn quotient(&self, f: &Polynomial<F>, budget: &Budget) -> Result<Ideal<F>> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let f = f.to_ring(&self.ring)?;
        let meet = self.intersection_gens(&self.gens, std::slice::from_ref(&f), budget)?;
        let gens = meet.iter().map(|g| g.div_exact(&f)).collect::<Result<Vec<_>>>()?;
        Ideal::new(&self.ring, gens)
    }

    /// Whether `p` vanishes on `V(I)`.
    pub fn radical_contains(&self, p: &Polynomial<F>, route: RadicalRoute, budget: &Budget) -> Result<RadicalAnswer> {
        if route == RadicalRoute::Auto && self.contains(p, budget)? {
            return Ok(RadicalAnswer {
                member: true,
                decided_by: "ideal_membership",
            });
        }
        let big = self.ring.with_aux_block(1);
        let z = Polynomial::var(&big, Variable::Aux(0))?;
        let mut gens = self.gens.iter().map(|g| g.to_ring(&big)).collect::<Result<Vec<_>>>()?;
        gens.push(Polynomial::one(&big).sub(&z.mul(&p.to_ring(&big)?)?)?);
        let gb = GroebnerBasis::compute(&gens, &big, big.order(), budget)?;
        Ok(RadicalAnswer {
            member: gb.is_unit(),
            decided_by: "rabinowitsch",
        })
    }

    pub fn krull_dimension(&self, budget: &Budget) -> Result<DimensionResult> {
        Ok(self.groebner(budget)?.dimension())
    }
}
