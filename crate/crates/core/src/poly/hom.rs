use std::collections::HashMap;

use super::polynomial::Polynomial;
use super::ring::{Ring, Variable};
use crate::error::{Error, Result};
use crate::field::Field;

/// Substitution homomorphism `k[source vars] -> target ring`, given by the
/// images of the source variables.
#[derive(Clone, Debug)]
pub struct RingHom<F: Field> {
    name: String,
    target: Ring<F>,
    images: HashMap<Variable, Polynomial<F>>,
}

impl<F: Field> RingHom<F> {
    pub fn new(
        name: impl Into<String>,
        target: &Ring<F>,
        images: impl IntoIterator<Item = (Variable, Polynomial<F>)>,
    ) -> Result<Self> {
        let images: HashMap<_, _> = images.into_iter().collect();
        for p in images.values() {
            if !p.ring().same_space(target) {
                return Err(Error::RingMismatch);
            }
        }
        Ok(RingHom {
            name: name.into(),
            target: target.clone(),
            images,
        })
    }

    /// Sends each variable to another variable of `target`.
    pub fn renaming(
        name: impl Into<String>,
        target: &Ring<F>,
        map: impl IntoIterator<Item = (Variable, Variable)>,
    ) -> Result<Self> {
        let images = map
            .into_iter()
            .map(|(a, b)| Ok((a, Polynomial::var(target, b)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(name, target, images)
    }

    pub fn identity(ring: &Ring<F>) -> Self {
        let images = ring
            .vars()
            .iter()
            .enumerate()
            .map(|(i, v)| (*v, Polynomial::var_at(ring, i)));
        Self::new("identity", ring, images).expect("same ring")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn target(&self) -> &Ring<F> {
        &self.target
    }

    pub fn image_of(&self, v: Variable) -> Option<&Polynomial<F>> {
        self.images.get(&v)
    }

    pub fn domain(&self) -> impl Iterator<Item = &Variable> {
        self.images.keys()
    }

    /// Image of `p`; every variable occurring in `p` must be in the domain.
    pub fn apply(&self, p: &Polynomial<F>) -> Result<Polynomial<F>> {
        let src_vars = p.ring().vars();
        let mut images = Vec::with_capacity(src_vars.len());
        for v in src_vars {
            images.push(self.images.get(v));
        }
        let mut acc = Polynomial::zero(&self.target);
        let mut power_cache: HashMap<(usize, u16), Polynomial<F>> = HashMap::new();
        for (m, c) in p.terms() {
            let mut t = Polynomial::constant(&self.target, c.clone());
            for i in m.support() {
                let img = images[i].ok_or_else(|| Error::OutsideDomain(src_vars[i].to_string()))?;
                let e = m.exponent(i);
                let pw = power_cache
                    .entry((i, e))
                    .or_insert_with(|| img.to_ring(&self.target).expect("checked").pow(e as u32));
                t = t.mul(pw)?;
            }
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }

    /// `self` after `first`: `x -> self(first(x))`.
    pub fn compose_after(&self, first: &RingHom<F>) -> Result<RingHom<F>> {
        let images = first
            .images
            .iter()
            .map(|(v, p)| Ok((*v, self.apply(p)?)))
            .collect::<Result<Vec<_>>>()?;
        RingHom::new(format!("{}∘{}", self.name, first.name), &self.target, images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    #[test]
    fn transpose_on_commutative_product() {
        let r = Ring::matrix(Rationals, 2);
        let t = RingHom::renaming(
            "transpose",
            &r,
            r.vars().iter().map(|v| {
                let (i, j) = v.row_col().unwrap();
                (*v, Variable::entry(j, i))
            }),
        )
        .unwrap();
        let p = Polynomial::parse(&r, "x21*x12").unwrap();
        assert_eq!(t.apply(&p).unwrap(), p);
        let q = Polynomial::parse(&r, "x11^2 + x12").unwrap();
        assert_eq!(t.apply(&q).unwrap().to_text(), "x11^2 + x21");
    }

    #[test]
    fn outside_domain_is_an_error() {
        let r = Ring::matrix(Rationals, 2);
        let h = RingHom::renaming("partial", &r, [(Variable::entry(1, 1), Variable::entry(2, 2))]).unwrap();
        let p = Polynomial::parse(&r, "x11 + x12").unwrap();
        assert!(matches!(h.apply(&p), Err(Error::OutsideDomain(_))));
    }
}
