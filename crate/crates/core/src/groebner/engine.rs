//! Buchberger's algorithm with the normal selection strategy and the
//! Gebauer-Moeller installation of critical pairs.

use std::cmp::Ordering;
use std::time::Instant;

use serde::Serialize;

use super::budget::Budget;
use crate::error::{BudgetKind, Error, Result};
use crate::field::Field;
use crate::poly::{Monomial, Polynomial, Ring, Term};

#[derive(Clone, Debug, Default, Serialize, PartialEq)]
pub struct GbStats {
    pub pairs_reduced: usize,
    pub zero_reductions: usize,
    pub max_pair_degree: u32,
    pub basis_size: usize,
}

/// How a reduction step cancels the leading term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum ReductionMode {
    /// `p - (c / lc g) m g`: the true remainder.
    Exact,
    /// `a p - b m g` with field-specific multipliers; the result is a
    /// nonzero scalar multiple of the remainder.
    Scaled,
}

pub(crate) struct Reducer<F: Field> {
    pub lm: Monomial,
    pub mask: u64,
    pub terms: Vec<Term<F>>,
}

impl<F: Field> Reducer<F> {
    pub fn new(p: &Polynomial<F>) -> Self {
        let lm = p.leading_monomial().expect("nonzero reducer").clone();
        Reducer {
            mask: lm.support_mask(),
            lm,
            terms: p.terms().to_vec(),
        }
    }
}

/// `x_scale * x + y_scale * shift * y`; both sorted descending.
fn combine<F: Field>(
    ring: &Ring<F>,
    x: &[Term<F>],
    x_scale: Option<&F::Elem>,
    y: &[Term<F>],
    y_scale: &F::Elem,
    shift: &Monomial,
) -> Vec<Term<F>> {
    let f = ring.field();
    let order = ring.order();
    let mut out = Vec::with_capacity(x.len() + y.len());
    let xs = |t: &Term<F>| -> Term<F> {
        match x_scale {
            Some(s) => (t.0.clone(), f.mul(&t.1, s)),
            None => t.clone(),
        }
    };
    let mut i = 0;
    let mut j = 0;
    let mut ym: Option<Monomial> = y.first().map(|t| t.0.mul(shift));
    while i < x.len() || j < y.len() {
        let ord = match (x.get(i), ym.as_ref()) {
            (Some(a), Some(b)) => order.cmp(&a.0, b),
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (None, None) => unreachable!(),
        };
        match ord {
            Ordering::Greater => {
                out.push(xs(&x[i]));
                i += 1;
            }
            Ordering::Less => {
                out.push((ym.take().unwrap(), f.mul(&y[j].1, y_scale)));
                j += 1;
                ym = y.get(j).map(|t| t.0.mul(shift));
            }
            Ordering::Equal => {
                let a = match x_scale {
                    Some(s) => f.mul(&x[i].1, s),
                    None => x[i].1.clone(),
                };
                let c = f.add(&a, &f.mul(&y[j].1, y_scale));
                if !f.is_zero(&c) {
                    out.push((ym.take().unwrap(), c));
                }
                i += 1;
                j += 1;
                ym = y.get(j).map(|t| t.0.mul(shift));
            }
        }
    }
    out
}

fn find_divisor<'a, F: Field>(
    m: &Monomial,
    reducers: impl Iterator<Item = &'a Reducer<F>>,
) -> Option<&'a Reducer<F>> {
    let mask = m.support_mask();
    reducers
        .into_iter()
        .find(|r| r.mask & !mask == 0 && r.lm.divides(m))
}

/// Reduces `p` by the reducers. With `full`, every term is reduced;
/// otherwise only until the leading term is irreducible.
pub(crate) fn reduce<'a, F, I>(
    ring: &Ring<F>,
    mut p: Vec<Term<F>>,
    reducers: I,
    mode: ReductionMode,
    full: bool,
) -> Vec<Term<F>>
where
    I: Iterator<Item = &'a Reducer<F>> + Clone,
    F: Field + 'a,
{
    let f = ring.field();
    let mut pos = 0;
    while pos < p.len() {
        let Some(r) = find_divisor(&p[pos].0, reducers.clone()) else {
            if !full {
                break;
            }
            pos += 1;
            continue;
        };
        let shift = r.lm.quotient_of(&p[pos].0).expect("divides");
        let lc_r = &r.terms[0].1;
        let (x_scale, y_scale) = match mode {
            ReductionMode::Exact => (None, f.neg(&f.div(&p[pos].1, lc_r).expect("nonzero"))),
            ReductionMode::Scaled => {
                let (a, b) = f.cancel_pair(&p[pos].1, lc_r);
                let xa = if f.is_one(&a) { None } else { Some(a) };
                (xa, f.neg(&b))
            }
        };
        let tail = combine(ring, &p[pos + 1..], x_scale.as_ref(), &r.terms[1..], &y_scale, &shift);
        let mut next: Vec<Term<F>> = Vec::with_capacity(pos + tail.len());
        match &x_scale {
            Some(s) => next.extend(p[..pos].iter().map(|(m, c)| (m.clone(), f.mul(c, s)))),
            None => next.extend_from_slice(&p[..pos]),
        }
        next.extend(tail);
        p = next;
    }
    if mode == ReductionMode::Scaled && !p.is_empty() {
        normalize_terms(f, &mut p);
    }
    p
}

fn normalize_terms<F: Field>(f: &F, p: &mut [Term<F>]) {
    let s = f.normalizer(p.iter().map(|(_, c)| c));
    if !f.is_one(&s) {
        for t in p.iter_mut() {
            t.1 = f.mul(&t.1, &s);
        }
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Buchberger<'b, F: Field> {
    ring: Ring<F>,
    budget: &'b Budget,
    start: Instant,
    polys: Vec<Reducer<F>>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
    stats: GbStats,
}

impl<'b, F: Field> Buchberger<'b, F> {
    fn new(ring: &Ring<F>, budget: &'b Budget) -> Self {
        Buchberger {
            ring: ring.clone(),
            budget,
            start: Instant::now(),
            polys: Vec::new(),
            active: Vec::new(),
            pairs: Vec::new(),
            stats: GbStats::default(),
        }
    }

    fn check_time(&self) -> Result<()> {
        if let Some(s) = self.budget.max_seconds {
            if self.start.elapsed().as_secs_f64() > s {
                return Err(Error::Budget(BudgetKind::Seconds(s)));
            }
        }
        Ok(())
    }

    fn reduce_full(&self, p: Vec<Term<F>>) -> Vec<Term<F>> {
        let polys = &self.polys;
        reduce(
            &self.ring,
            p,
            self.active.iter().map(move |&k| &polys[k]),
            ReductionMode::Scaled,
            true,
        )
    }

    /// Gebauer-Moeller update with the new element `h`.
    fn install(&mut self, terms: Vec<Term<F>>) {
        let h = self.polys.len();
        let lm_h = terms[0].0.clone();
        self.polys.push(Reducer {
            mask: lm_h.support_mask(),
            lm: lm_h.clone(),
            terms,
        });

        let mut c: Vec<(usize, Monomial, bool)> = self
            .active
            .iter()
            .map(|&g| {
                let lm_g = &self.polys[g].lm;
                (g, lm_h.lcm(lm_g), lm_h.is_coprime(lm_g))
            })
            .collect();
        let mut d: Vec<(usize, Monomial, bool)> = Vec::new();
        while !c.is_empty() {
            let (g1, l1, coprime) = c.remove(0);
            let dominated = |list: &[(usize, Monomial, bool)]| list.iter().any(|(_, l2, _)| l2.divides(&l1));
            if coprime || (!dominated(&c) && !dominated(&d)) {
                d.push((g1, l1, coprime));
            }
        }
        let polys = &self.polys;
        self.pairs.retain(|p| {
            !(lm_h.divides(&p.lcm)
                && polys[p.i].lm.lcm(&lm_h) != p.lcm
                && polys[p.j].lm.lcm(&lm_h) != p.lcm)
        });
        for (g, l, coprime) in d {
            if !coprime {
                self.pairs.push(Pair { i: g, j: h, lcm: l });
            }
        }
        self.active.retain(|&g| !lm_h.divides(&polys[g].lm));
        self.active.push(h);
    }

    fn add_generator(&mut self, p: Vec<Term<F>>) {
        let r = self.reduce_full(p);
        if !r.is_empty() {
            self.install(r);
        }
    }

    fn select_pair(&mut self) -> Option<Pair> {
        let order = self.ring.order();
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.lcm
                    .degree()
                    .cmp(&b.lcm.degree())
                    .then_with(|| order.cmp(&a.lcm, &b.lcm))
                    .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
            })
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }

    fn spoly(&self, pair: &Pair) -> Vec<Term<F>> {
        let f = self.ring.field();
        let a = &self.polys[pair.i];
        let b = &self.polys[pair.j];
        let sa = a.lm.quotient_of(&pair.lcm).expect("lcm");
        let sb = b.lm.quotient_of(&pair.lcm).expect("lcm");
        let (ca, cb) = f.cancel_pair(&b.terms[0].1, &a.terms[0].1);
        // ca * lc_b == cb * lc_a; S = cb * sa * a - ca * sb * b
        let left: Vec<Term<F>> = a.terms[1..]
            .iter()
            .map(|(m, c)| (m.mul(&sa), f.mul(c, &cb)))
            .collect();
        combine(&self.ring, &left, None, &b.terms[1..], &f.neg(&ca), &sb)
    }

    fn run(&mut self) -> Result<()> {
        while let Some(pair) = self.select_pair() {
            self.check_time()?;
            let deg = pair.lcm.degree();
            if let Some(max) = self.budget.max_degree {
                if deg > max {
                    return Err(Error::Budget(BudgetKind::Degree(max)));
                }
            }
            self.stats.pairs_reduced += 1;
            if let Some(max) = self.budget.max_pairs {
                if self.stats.pairs_reduced > max {
                    return Err(Error::Budget(BudgetKind::Pairs(max)));
                }
            }
            self.stats.max_pair_degree = self.stats.max_pair_degree.max(deg);
            let s = self.spoly(&pair);
            let r = self.reduce_full(s);
            if r.is_empty() {
                self.stats.zero_reductions += 1;
            } else if r[0].0.is_one() {
                // unit ideal: short-circuit
                self.pairs.clear();
                self.active.clear();
                self.install(r);
                return Ok(());
            } else {
                self.install(r);
            }
        }
        Ok(())
    }

    /// Inter-reduces the active set into the reduced basis.
    fn finish(mut self) -> Result<(Vec<Polynomial<F>>, GbStats)> {
        self.check_time()?;
        let f = self.ring.field().clone();
        let order = self.ring.order();
        let mut idx = self.active.clone();
        idx.sort_by(|&a, &b| order.cmp(&self.polys[a].lm, &self.polys[b].lm));
        let mut out = Vec::with_capacity(idx.len());
        for (k, &i) in idx.iter().enumerate() {
            let polys = &self.polys;
            let others = idx
                .iter()
                .enumerate()
                .filter(move |(kk, _)| *kk != k)
                .map(move |(_, &j)| &polys[j]);
            let head = polys[i].terms[0].clone();
            let tail = reduce(&self.ring, polys[i].terms[1..].to_vec(), others, ReductionMode::Exact, true);
            let mut terms = Vec::with_capacity(tail.len() + 1);
            terms.push(head);
            terms.extend(tail);
            normalize_terms(&f, &mut terms);
            out.push(Polynomial::from_sorted_terms(&self.ring, terms));
        }
        self.stats.basis_size = out.len();
        Ok((out, self.stats))
    }
}

/// Reduced Groebner basis of `gens` in their ring's order, optionally
/// extending a basis `known` that is already a Groebner basis.
pub(crate) fn buchberger<F: Field>(
    ring: &Ring<F>,
    known: &[Polynomial<F>],
    gens: &[Polynomial<F>],
    budget: &Budget,
) -> Result<(Vec<Polynomial<F>>, GbStats)> {
    let mut bb = Buchberger::new(ring, budget);
    for g in known {
        if g.is_zero() {
            continue;
        }
        let lm = g.leading_monomial().unwrap().clone();
        bb.active.push(bb.polys.len());
        bb.polys.push(Reducer {
            mask: lm.support_mask(),
            lm,
            terms: g.terms().to_vec(),
        });
    }
    for g in gens {
        if g.is_zero() {
            continue;
        }
        if g.is_constant() {
            return Ok((vec![Polynomial::one(ring)], bb.stats));
        }
        bb.add_generator(g.terms().to_vec());
        if bb.active.len() == 1 && bb.polys[bb.active[0]].lm.is_one() {
            return Ok((vec![Polynomial::one(ring)], bb.stats));
        }
    }
    bb.run()?;
    bb.finish()
}
