use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use super::monomial::Monomial;
use super::ring::{Ring, Variable};
use crate::error::{Error, Result};
use crate::field::Field;

pub type Term<F> = (Monomial, <F as Field>::Elem);

/// Sparse polynomial. Terms are kept sorted strictly descending in the
/// ring's monomial order with no zero coefficients.
pub struct Polynomial<F: Field> {
    ring: Ring<F>,
    terms: Vec<Term<F>>,
}

impl<F: Field> Clone for Polynomial<F> {
    fn clone(&self) -> Self {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.clone(),
        }
    }
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_space(&other.ring) && self.terms == other.terms
    }
}

impl<F: Field> Eq for Polynomial<F> {}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self)
    }
}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: &Ring<F>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Ring<F>, c: F::Elem) -> Self {
        let terms = if ring.field().is_zero(&c) {
            Vec::new()
        } else {
            vec![(Monomial::one(ring.nvars()), c)]
        };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn one(ring: &Ring<F>) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn from_i64(ring: &Ring<F>, c: i64) -> Self {
        Self::constant(ring, ring.field().from_i64(c))
    }

    pub fn var(ring: &Ring<F>, v: Variable) -> Result<Self> {
        let i = ring.require(v)?;
        Ok(Self::var_at(ring, i))
    }

    pub fn var_at(ring: &Ring<F>, i: usize) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: vec![(Monomial::var(ring.nvars(), i), ring.field().one())],
        }
    }

    pub fn monomial(ring: &Ring<F>, m: Monomial, c: F::Elem) -> Self {
        Self::from_terms(ring, std::iter::once((m, c)))
    }

    /// Combines like terms, drops zeros and sorts.
    pub fn from_terms(ring: &Ring<F>, terms: impl IntoIterator<Item = Term<F>>) -> Self {
        let field = ring.field();
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ring.nvars());
            match acc.get_mut(&m) {
                Some(e) => *e = field.add(e, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<Term<F>> = acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        let order = ring.order();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Trusts the caller: terms must already be sorted, merged and nonzero.
    pub(crate) fn from_sorted_terms(ring: &Ring<F>, terms: Vec<Term<F>>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order().cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        self.ring.field()
    }

    pub fn terms(&self) -> &[Term<F>] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.is_constant()
    }

    pub fn leading_term(&self) -> Option<&Term<F>> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&F::Elem> {
        self.terms.first().map(|t| &t.1)
    }

    /// Maximal total degree; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Variables that occur in some term.
    pub fn variables(&self) -> Vec<Variable> {
        let mut used = vec![false; self.ring.nvars()];
        for (m, _) in &self.terms {
            for i in m.support() {
                used[i] = true;
            }
        }
        used.iter()
            .enumerate()
            .filter(|(_, &u)| u)
            .map(|(i, _)| self.ring.vars()[i])
            .collect()
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms: merge_scaled(&self.ring, &self.terms, &other.terms, None),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let minus_one = self.field().neg(&self.field().one());
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms: merge_scaled(&self.ring, &self.terms, &other.terms, Some((&minus_one, None))),
        })
    }

    pub fn neg(&self) -> Self {
        let f = self.field();
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f.neg(c))).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.len() == 1 {
            let (m, c) = &small.terms[0];
            return Ok(big.mul_term(m, c));
        }
        let f = self.field();
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::with_capacity(small.len() * big.len());
        for (ma, ca) in &small.terms {
            for (mb, cb) in &big.terms {
                let m = ma.mul(mb);
                let c = f.mul(ca, cb);
                match acc.get_mut(&m) {
                    Some(e) => *e = f.add(e, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<Term<F>> = acc.into_iter().filter(|(_, c)| !f.is_zero(c)).collect();
        let order = self.ring.order();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = self.field();
        if f.is_zero(c) {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), f.mul(a, c))).collect(),
        }
    }

    /// `c * m * self`; monomial multiplication preserves the term order.
    pub fn mul_term(&self, m: &Monomial, c: &F::Elem) -> Self {
        let f = self.field();
        if f.is_zero(c) {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), f.mul(a, c))).collect(),
        }
    }

    /// Scales into the field's normal form (primitive integral with
    /// positive leading coefficient over Q, monic over F_p).
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let s = self.field().normalizer(self.terms.iter().map(|(_, c)| c));
        if self.field().is_one(&s) {
            self.clone()
        } else {
            self.scale(&s)
        }
    }

    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(lc) => self.scale(&self.field().inv(lc).expect("nonzero")),
            None => self.clone(),
        }
    }

    /// `P^X`: every term containing a variable of `vars` is dropped.
    /// Variables outside the ring do not occur and are ignored.
    pub fn substitute_zero(&self, vars: &[Variable]) -> Self {
        let idx: Vec<usize> = vars.iter().filter_map(|v| self.ring.index_of(*v)).collect();
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| idx.iter().all(|&i| m.exponent(i) == 0))
                .cloned()
                .collect(),
        }
    }

    /// Homogeneous component of maximal total degree.
    pub fn leading_form(&self) -> Result<Self> {
        let d = self.total_degree().ok_or(Error::ZeroPolynomial)?;
        Ok(self.homogeneous_component(d))
    }

    pub fn homogeneous_component(&self, d: u32) -> Self {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).cloned().collect(),
        }
    }

    /// `Some(degree)` when all terms share one total degree; the zero
    /// polynomial reports degree 0.
    pub fn is_homogeneous(&self) -> Option<u32> {
        let mut it = self.terms.iter().map(|(m, _)| m.degree());
        match it.next() {
            None => Some(0),
            Some(d) => it.all(|e| e == d).then_some(d),
        }
    }

    /// Evaluates at `point[i]` = value of the ring's i-th variable.
    pub fn eval(&self, point: &[F::Elem]) -> F::Elem {
        assert_eq!(point.len(), self.ring.nvars());
        let f = self.field();
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = f.mul(&t, &f.pow(&point[i], e as u32));
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    /// Partial derivative with respect to the ring's i-th variable.
    pub fn derivative(&self, i: usize) -> Self {
        let f = self.field();
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exponent(i) > 0)
            .map(|(m, c)| {
                let e = m.exponent(i);
                let mut ex: Vec<u16> = m.exponents().to_vec();
                ex[i] -= 1;
                (Monomial::from_exponents(ex), f.mul(c, &f.from_i64(e as i64)))
            });
        Polynomial::from_terms(&self.ring, terms)
    }

    /// Re-expresses the polynomial in `target`, matching variables by name.
    pub fn to_ring(&self, target: &Ring<F>) -> Result<Self> {
        if *target == self.ring {
            return Ok(self.clone());
        }
        if target.field() != self.field() {
            return Err(Error::RingMismatch);
        }
        let map = self
            .ring
            .vars()
            .iter()
            .map(|v| target.index_of(*v).unwrap_or(usize::MAX))
            .collect::<Vec<_>>();
        for (m, _) in &self.terms {
            for i in m.support() {
                if map[i] == usize::MAX {
                    return Err(Error::UnknownVariable(self.ring.vars()[i].to_string()));
                }
            }
        }
        let n = target.nvars();
        let terms = self.terms.iter().map(|(m, c)| {
            let safe: Vec<usize> = map.iter().map(|&j| if j == usize::MAX { 0 } else { j }).collect();
            (m.remap(&safe, n), c.clone())
        });
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Exact division `self / g`; fails when `g` does not divide `self`.
    pub fn div_exact(&self, g: &Self) -> Result<Self> {
        self.check_ring(g)?;
        let (lm, lc) = g.leading_term().ok_or(Error::InexactDivision)?;
        let f = self.field();
        let lc_inv = f.inv(lc).expect("nonzero");
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.leading_term().cloned() {
            let q = lm.quotient_of(&m).ok_or(Error::InexactDivision)?;
            let qc = f.mul(&c, &lc_inv);
            rem = rem.sub(&g.mul_term(&q, &qc))?;
            quot.push((q, qc));
        }
        Ok(Polynomial::from_terms(&self.ring, quot))
    }

    /// Text form: `2*x12*x21 + x11^2 - 3/4`.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let f = self.field();
        let vars = self.ring.vars();
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mut cs = f.format(c);
            let negative = cs.starts_with('-');
            if negative {
                cs.remove(0);
            }
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            if cs != "1" || m.is_one() {
                factors.push(cs);
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(vars[i].to_string()),
                    _ => factors.push(format!("{}^{}", vars[i], e)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl<F: Field> std::ops::Add for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: Self) -> Polynomial<F> {
        Polynomial::add(self, rhs).expect("ring mismatch in +")
    }
}

impl<F: Field> std::ops::Sub for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: Self) -> Polynomial<F> {
        Polynomial::sub(self, rhs).expect("ring mismatch in -")
    }
}

impl<F: Field> std::ops::Mul for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: Self) -> Polynomial<F> {
        Polynomial::mul(self, rhs).expect("ring mismatch in *")
    }
}

impl<F: Field> std::ops::Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        Polynomial::neg(self)
    }
}

/// Merges `a + s * t * b` where `s` is an optional scalar and `t` an
/// optional monomial shift applied to `b`; both inputs sorted descending.
fn merge_scaled<F: Field>(
    ring: &Ring<F>,
    a: &[Term<F>],
    b: &[Term<F>],
    scale: Option<(&F::Elem, Option<&Monomial>)>,
) -> Vec<Term<F>> {
    let f = ring.field();
    let order = ring.order();
    let map_b = |t: &Term<F>| -> Term<F> {
        match scale {
            None => t.clone(),
            Some((s, shift)) => (
                match shift {
                    Some(m) => t.0.mul(m),
                    None => t.0.clone(),
                },
                f.mul(&t.1, s),
            ),
        }
    };
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut j = 0;
    let mut bj = b.first().map(map_b);
    while i < a.len() || bj.is_some() {
        match (a.get(i), bj.as_ref()) {
            (Some(ta), Some(tb)) => match order.cmp(&ta.0, &tb.0) {
                Ordering::Greater => {
                    out.push(ta.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(bj.take().unwrap());
                    j += 1;
                    bj = b.get(j).map(map_b);
                }
                Ordering::Equal => {
                    let c = f.add(&ta.1, &tb.1);
                    if !f.is_zero(&c) {
                        out.push((ta.0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                    bj = b.get(j).map(map_b);
                }
            },
            (Some(ta), None) => {
                out.push(ta.clone());
                i += 1;
            }
            (None, Some(_)) => {
                out.push(bj.take().unwrap());
                j += 1;
                bj = b.get(j).map(map_b);
            }
            (None, None) => unreachable!(),
        }
    }
    out
}
