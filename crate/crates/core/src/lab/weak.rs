use std::collections::BTreeSet;

use serde::Serialize;

use super::{var_names, with_field, FieldChoice, LabConfig, ReportBuilder, ReportInputs, VerificationReport};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::gt::{branch_hom, branch_substitution, d, e, index_set, sigma, sigma_polys};
use crate::poly::{Polynomial, Ring, Variable};
use crate::regularity::{equidimensional_by_ci, RegularityOptions, RegularityVerdict};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchReplay {
    pub t: usize,
    /// The factor of `σ_nn` this branch sets to zero.
    pub factor: String,
    pub substitution: Vec<String>,
    pub hom: String,
    /// `e(n) - n`, which must equal `e(n-1)`.
    pub remaining_vars: usize,
    /// The hom maps `I_{n-1}` bijectively onto the surviving variables.
    pub image_is_complement: bool,
    pub substituted_nonzero: bool,
    /// `j` values where `hom(σ_{n-1,j}) != σ_nj` with the branch set to zero.
    pub mismatches: Vec<usize>,
    /// `e(n) - (2n - 2)`.
    pub section_dim: usize,
}

impl BranchReplay {
    pub fn holds(&self) -> bool {
        self.image_is_complement && self.substituted_nonzero && self.mismatches.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecursionReplay {
    pub n: usize,
    pub top_generator: String,
    /// `σ_nn` is the product of the branch factors.
    pub factorization_holds: bool,
    pub branches: Vec<BranchReplay>,
}

impl RecursionReplay {
    pub fn holds(&self) -> bool {
        self.factorization_holds && self.branches.iter().all(BranchReplay::holds)
    }
}

/// Replays the induction step from size `n-1` to `n` with exact polynomial
/// comparisons in every branch.
pub fn replay_weak_recursion<F: Field>(field: F, n: usize) -> Result<RecursionReplay> {
    if !(2..=8).contains(&n) {
        return Err(Error::out_of_range("n", format!("{n} not in 2..=8")));
    }
    let ring = Ring::over(field.clone(), index_set(n));
    let big = sigma_polys(&ring, n)?;
    let small = if n > 2 { sigma(field.clone(), n - 1)?.generators } else { Vec::new() };
    let top = big.last().unwrap();
    let mut product = Polynomial::one(&ring);
    let mut branches = Vec::with_capacity(n);
    for t in 1..=n {
        let xs = branch_substitution(n, t)?;
        let factor = xs[0];
        product = product.mul(&Polynomial::var(&ring, factor)?)?;
        let hom = branch_hom(n, t, field.clone())?;
        let survivors: BTreeSet<Variable> = index_set(n).into_iter().filter(|v| !xs.contains(v)).collect();
        let images: BTreeSet<Variable> = index_set(n - 1)
            .into_iter()
            .filter_map(|v| hom.image_of(v).and_then(|p| p.variables().first().copied()))
            .collect();
        let mut mismatches = Vec::new();
        let mut substituted_nonzero = true;
        for j in 2..n {
            let cut = big[j - 2].substitute_zero(&xs);
            substituted_nonzero &= !cut.is_zero();
            if hom.apply(&small[j - 2])? != cut {
                mismatches.push(j);
            }
        }
        branches.push(BranchReplay {
            t,
            factor: factor.to_string(),
            substitution: var_names(&xs),
            hom: hom.name().to_string(),
            remaining_vars: e(n) - xs.len(),
            image_is_complement: images == survivors && survivors.len() == e(n - 1),
            substituted_nonzero,
            mismatches,
            section_dim: e(n) - (2 * n - 2),
        });
    }
    Ok(RecursionReplay {
        n,
        top_generator: top.to_text(),
        factorization_holds: product == *top,
        branches,
    })
}

/// The weak system of size `n` is regular in `e(n)` variables, so its
/// variety has pure dimension `d(n-1)`; the recursion is replayed too.
pub fn verify_weak(n: usize, field: FieldChoice, cfg: &LabConfig) -> Result<VerificationReport> {
    if !(2..=5).contains(&n) {
        return Err(Error::out_of_range("n", format!("{n} not in 2..=5")));
    }
    let inputs = ReportInputs {
        n: Some(n),
        field: field.name(),
        budget: cfg.budget.clone(),
        long: cfg.long,
        ..Default::default()
    };
    let mut b = ReportBuilder::new(
        "weak",
        format!("the weak variety V_{n} in k^{} is equidimensional of dimension {}", e(n), d(n - 1)),
        inputs,
        field.is_exact(),
    );
    with_field!(field, f => run(f, n, cfg, &mut b))?;
    Ok(b.finish())
}

fn run<F: Field>(field: F, n: usize, cfg: &LabConfig, b: &mut ReportBuilder) -> Result<()> {
    let sys = sigma(field.clone(), n)?;
    let expected = d(n - 1) as i64;
    b.put("generators", sys.texts());
    b.put("ambient_vars", var_names(sys.ring.vars()));
    b.put("expected_dim", expected);
    let cert = equidimensional_by_ci(&sys.ring, &sys.generators, &RegularityOptions::with_budget(cfg.budget.clone()))?;
    match &cert.regularity.verdict {
        RegularityVerdict::Regular => {
            b.expect(cert.concluded_dim == Some(expected), "dimension", cert.concluded_dim);
        }
        RegularityVerdict::FailedAt { index } => b.fail("regularity", (index, &sys.labels[index - 1])),
        RegularityVerdict::Budget { detail, .. } => b.budget_hit("regularity", detail.clone()),
    }
    b.put("concluded_dim", cert.concluded_dim);
    b.put("certificate", &cert);
    if let Some(dim) = b.attempt("krull_dimension", sys.ideal().krull_dimension(&cfg.budget))? {
        b.expect(dim.krull_dim == expected, "krull_dimension", &dim);
        b.put("krull_dim", dim.krull_dim);
    }
    let replay = replay_weak_recursion(field, n)?;
    if !replay.holds() {
        let bad: Vec<&BranchReplay> = replay.branches.iter().filter(|r| !r.holds()).collect();
        b.fail("recursion_replay", (replay.factorization_holds, bad));
    }
    b.put("recursion_replay", &replay);
    Ok(())
}
