//! Regular-sequence certificates and the statements derived from them:
//! complete-intersection dimension, permutation and subsequence
//! invariance, projection by variables and leading-form inference.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{one_minus_t_pow, poly_mul, Budget, GroebnerBasis, Ideal};
use crate::poly::{Polynomial, Ring, Variable};

/// How `(I : g) = I` is decided.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// Hilbert series for homogeneous input, colon ideals otherwise.
    #[default]
    Auto,
    /// Compare `HS(R/(I+g))` with `(1 - t^d) HS(R/I)`; homogeneous only.
    Hilbert,
    /// Compute `I : g` by elimination and test containment in `I`.
    Colon,
}

#[derive(Clone, Debug, Default)]
pub struct RegularityOptions {
    pub strategy: Strategy,
    pub budget: Budget,
}

impl RegularityOptions {
    pub fn with_budget(budget: Budget) -> Self {
        RegularityOptions {
            strategy: Strategy::Auto,
            budget,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityStep {
    /// 1-based position in the sequence.
    pub index: usize,
    pub generator: String,
    pub quotient_equal: bool,
    pub non_unit: bool,
    pub method: &'static str,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RegularityVerdict {
    Regular,
    FailedAt { index: usize },
    Budget { index: usize, detail: String },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegularityCertificate {
    pub ring: String,
    pub sequence: Vec<String>,
    pub steps: Vec<RegularityStep>,
    pub verdict: RegularityVerdict,
    /// `"exact"` over Q, `"modular"` over a prime field.
    pub evidence: &'static str,
}

impl RegularityCertificate {
    pub fn is_regular(&self) -> bool {
        self.verdict == RegularityVerdict::Regular
    }

    pub fn failed_at(&self) -> Option<usize> {
        match self.verdict {
            RegularityVerdict::FailedAt { index } => Some(index),
            _ => None,
        }
    }

    pub fn is_budget(&self) -> bool {
        matches!(self.verdict, RegularityVerdict::Budget { .. })
    }
}

fn evidence<F: Field>(ring: &Ring<F>) -> &'static str {
    if ring.field().is_exact() {
        "exact"
    } else {
        "modular"
    }
}

fn lift<F: Field>(ring: &Ring<F>, gs: &[Polynomial<F>]) -> Result<Vec<Polynomial<F>>> {
    gs.iter()
        .map(|g| {
            if !g.ring().same_space(ring) {
                return Err(Error::RingMismatch);
            }
            g.to_ring(ring)
        })
        .collect()
}

fn colon_equal<F: Field>(current: &GroebnerBasis<F>, g: &Polynomial<F>, budget: &Budget) -> Result<bool> {
    if g.is_zero() {
        return Ok(current.is_unit());
    }
    let ideal = Ideal::new(current.ring(), current.polys().iter().cloned())?.with_basis(current.clone());
    let q = ideal.quotient(g, budget)?;
    ideal.contains_ideal(&q, budget)
}

fn hilbert_equal<F: Field>(current: &GroebnerBasis<F>, next: &GroebnerBasis<F>, deg: u32) -> bool {
    let before = current.hilbert_numerator();
    let after = next.hilbert_numerator();
    let mut expect = poly_mul(&before, &one_minus_t_pow(deg));
    while expect.len() > 1 && *expect.last().unwrap() == 0 {
        expect.pop();
    }
    after == expect
}

/// Certifies `gs` regular step by step: `g_i` must be a nonzerodivisor
/// and a non-unit modulo `(g_1, ..., g_{i-1})`.
pub fn is_regular_sequence<F: Field>(
    ring: &Ring<F>,
    gs: &[Polynomial<F>],
    opts: &RegularityOptions,
) -> Result<RegularityCertificate> {
    let gs = lift(ring, gs)?;
    let homogeneous = gs.iter().all(|g| g.is_homogeneous().is_some());
    let strategy = match opts.strategy {
        Strategy::Auto if homogeneous => Strategy::Hilbert,
        Strategy::Auto => Strategy::Colon,
        Strategy::Hilbert if !homogeneous => {
            return Err(Error::NotHomogeneous("the Hilbert-series route needs homogeneous input".into()))
        }
        s => s,
    };
    let mut cert = RegularityCertificate {
        ring: ring.describe(),
        sequence: gs.iter().map(|g| g.to_text()).collect(),
        steps: Vec::with_capacity(gs.len()),
        verdict: RegularityVerdict::Regular,
        evidence: evidence(ring),
    };
    let mut current = GroebnerBasis::compute(&[], ring, ring.order(), &opts.budget)?;
    for (k, g) in gs.iter().enumerate() {
        let index = k + 1;
        let step = (|| -> Result<(RegularityStep, GroebnerBasis<F>)> {
            let next = current.extend(std::slice::from_ref(g), &opts.budget)?;
            let non_unit = !next.is_unit();
            let (quotient_equal, method) = match strategy {
                Strategy::Hilbert => {
                    let eq = if g.is_zero() {
                        current.is_unit()
                    } else {
                        hilbert_equal(&current, &next, g.is_homogeneous().unwrap())
                    };
                    (eq, "hilbert_series")
                }
                _ => (colon_equal(&current, g, &opts.budget)?, "colon_ideal"),
            };
            let step = RegularityStep {
                index,
                generator: g.to_text(),
                quotient_equal,
                non_unit,
                method,
            };
            Ok((step, next))
        })();
        match step {
            Ok((step, next)) => {
                let ok = step.quotient_equal && step.non_unit;
                cert.steps.push(step);
                if !ok {
                    cert.verdict = RegularityVerdict::FailedAt { index };
                    return Ok(cert);
                }
                current = next;
            }
            Err(Error::Budget(kind)) => {
                cert.verdict = RegularityVerdict::Budget {
                    index,
                    detail: kind.to_string(),
                };
                return Ok(cert);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(cert)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquidimCertificate {
    pub ambient_dim: usize,
    pub sequence_length: usize,
    pub homogeneous: bool,
    pub regularity: RegularityCertificate,
    /// `ambient_dim - sequence_length` when the sequence is regular.
    pub concluded_dim: Option<i64>,
    /// Why no dimension was concluded.
    pub refusal: Option<String>,
}

/// A homogeneous regular sequence of length `t` in `n` variables cuts out
/// an equidimensional variety of dimension `n - t`.
pub fn equidimensional_by_ci<F: Field>(
    ring: &Ring<F>,
    gs: &[Polynomial<F>],
    opts: &RegularityOptions,
) -> Result<EquidimCertificate> {
    for g in gs {
        match g.is_homogeneous() {
            Some(d) if d > 0 && !g.is_zero() => {}
            _ => return Err(Error::NotHomogeneous(g.to_text())),
        }
    }
    let regularity = is_regular_sequence(ring, gs, opts)?;
    let (concluded_dim, refusal) = match &regularity.verdict {
        RegularityVerdict::Regular => (Some(ring.nvars() as i64 - gs.len() as i64), None),
        RegularityVerdict::FailedAt { index } => (None, Some(format!("not regular at generator {index}"))),
        RegularityVerdict::Budget { index, detail } => (None, Some(format!("budget exhausted at generator {index}: {detail}"))),
    };
    Ok(EquidimCertificate {
        ambient_dim: ring.nvars(),
        sequence_length: gs.len(),
        homogeneous: true,
        regularity,
        concluded_dim,
        refusal,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PermutationTrial {
    /// 0-based positions of the original sequence, in the tested order.
    pub order: Vec<usize>,
    pub verdict: RegularityVerdict,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PermutationReport {
    pub seed: u64,
    pub exhaustive: bool,
    pub trials: Vec<PermutationTrial>,
    /// False if any permutation failed; for a regular homogeneous input
    /// that would indicate an implementation bug.
    pub invariant_holds: bool,
    pub budget_hit: bool,
}

fn all_permutations(t: usize) -> Vec<Vec<usize>> {
    let mut perm: Vec<usize> = (0..t).collect();
    let mut out = vec![perm.clone()];
    loop {
        let Some(i) = (0..t.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
            return out;
        };
        let j = (i + 1..t).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
        out.push(perm.clone());
    }
}

/// Runs the certificate on permuted copies of `gs`: every permutation when
/// there are at most `trials` of them, otherwise `trials` seeded shuffles.
pub fn check_permutation_invariance<F: Field>(
    ring: &Ring<F>,
    gs: &[Polynomial<F>],
    trials: usize,
    seed: u64,
    opts: &RegularityOptions,
) -> Result<PermutationReport> {
    let t = gs.len();
    let total: Option<usize> = (1..=t).try_fold(1usize, |acc, k| acc.checked_mul(k));
    let exhaustive = matches!(total, Some(c) if c <= trials);
    let orders = if exhaustive {
        all_permutations(t)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..trials)
            .map(|_| {
                let mut p: Vec<usize> = (0..t).collect();
                p.shuffle(&mut rng);
                p
            })
            .collect()
    };
    let results = orders
        .into_par_iter()
        .map(|order| {
            let seq: Vec<Polynomial<F>> = order.iter().map(|&i| gs[i].clone()).collect();
            let cert = is_regular_sequence(ring, &seq, opts)?;
            Ok(PermutationTrial {
                order,
                verdict: cert.verdict,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let invariant_holds = results.iter().all(|r| !matches!(r.verdict, RegularityVerdict::FailedAt { .. }));
    let budget_hit = results.iter().any(|r| matches!(r.verdict, RegularityVerdict::Budget { .. }));
    Ok(PermutationReport {
        seed,
        exhaustive,
        trials: results,
        invariant_holds,
        budget_hit,
    })
}

/// Certificate for the order-preserving subsequence at `positions`
/// (0-based, strictly increasing).
pub fn check_subsequence<F: Field>(
    ring: &Ring<F>,
    gs: &[Polynomial<F>],
    positions: &[usize],
    opts: &RegularityOptions,
) -> Result<RegularityCertificate> {
    if positions.windows(2).any(|w| w[0] >= w[1]) || positions.last().is_some_and(|&p| p >= gs.len()) {
        return Err(Error::out_of_range("subsequence", format!("{positions:?} for length {}", gs.len())));
    }
    let sub: Vec<Polynomial<F>> = positions.iter().map(|&i| gs[i].clone()).collect();
    is_regular_sequence(ring, &sub, opts)
}

/// Sets `vars` to zero and re-expresses the result in the ring without
/// them.
pub fn project_out_variables<F: Field>(
    ring: &Ring<F>,
    gs: &[Polynomial<F>],
    vars: &[Variable],
) -> Result<(Ring<F>, Vec<Polynomial<F>>)> {
    for v in vars {
        ring.require(*v)?;
    }
    let small = ring.without(vars);
    let out = lift(ring, gs)?
        .iter()
        .map(|g| g.substitute_zero(vars).to_ring(&small))
        .collect::<Result<Vec<_>>>()?;
    Ok((small, out))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LeadingFormConclusion {
    /// The leading forms are regular, hence so is the sequence.
    Regular,
    /// The leading forms are not regular; nothing follows.
    Inconclusive,
    /// Inconclusive, and the direct check found the unit ideal.
    UnitIdeal,
    Budget,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LeadingFormCertificate {
    pub leading_forms: Vec<String>,
    pub leading_certificate: Option<RegularityCertificate>,
    pub conclusion: LeadingFormConclusion,
    /// Direct certificate of the original sequence, when requested.
    pub direct: Option<RegularityCertificate>,
}

/// If the top-degree forms of `gs` form a regular sequence then `gs`
/// is regular. Never concludes irregularity.
pub fn leading_form_inference<F: Field>(
    ring: &Ring<F>,
    gs: &[Polynomial<F>],
    opts: &RegularityOptions,
    cross_check: bool,
) -> Result<LeadingFormCertificate> {
    let gs = lift(ring, gs)?;
    let forms: Option<Vec<Polynomial<F>>> = gs.iter().map(|g| g.leading_form().ok()).collect();
    let (leading_certificate, mut conclusion) = match &forms {
        None => (None, LeadingFormConclusion::Inconclusive),
        Some(forms) => {
            let c = is_regular_sequence(ring, forms, opts)?;
            let conclusion = match c.verdict {
                RegularityVerdict::Regular => LeadingFormConclusion::Regular,
                RegularityVerdict::FailedAt { .. } => LeadingFormConclusion::Inconclusive,
                RegularityVerdict::Budget { .. } => LeadingFormConclusion::Budget,
            };
            (Some(c), conclusion)
        }
    };
    let direct = if cross_check {
        let d = is_regular_sequence(ring, &gs, opts)?;
        let unit = d.steps.last().is_some_and(|s| !s.non_unit);
        if conclusion != LeadingFormConclusion::Regular && unit {
            conclusion = LeadingFormConclusion::UnitIdeal;
        }
        Some(d)
    } else {
        None
    };
    Ok(LeadingFormCertificate {
        leading_forms: forms
            .map(|f| f.iter().map(|p| p.to_text()).collect())
            .unwrap_or_default(),
        leading_certificate,
        conclusion,
        direct,
    })
}
