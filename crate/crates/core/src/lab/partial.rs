use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{with_field, FieldChoice, LabConfig, ReportBuilder, ReportInputs, VerificationReport};
use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::gt::{d, partial_system, PartialFamily};
use crate::kw::jacobian_rank_probe;
use crate::regularity::{leading_form_inference, LeadingFormConclusion, RegularityOptions};

/// Seeded rational target values, numerators in `[-10, 10]` and
/// denominators in `[1, 4]`, one per equation of the partial system.
pub fn random_beta(n: usize, k: usize, seed: u64) -> Vec<BigRational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n * k - d(k - 1))
        .map(|_| {
            let num: i64 = rng.gen_range(-10..=10);
            let den: i64 = rng.gen_range(1..=4);
            BigRational::new(BigInt::from(num), BigInt::from(den))
        })
        .collect()
}

fn by_levels(n: usize, k: usize, beta: &[BigRational]) -> Vec<Vec<String>> {
    let mut it = beta.iter();
    (n - k + 1..=n).map(|i| it.by_ref().take(i).map(|q| q.to_string()).collect()).collect()
}

/// `V(γ̄_ij - β_ij : n-k+1 <= i <= n)` is equidimensional of dimension
/// `n² - nk + k(k-1)/2`: the leading forms are the power traces, which
/// form a regular sequence. `beta = None` draws it from `seed`;
/// `trials > 0` adds a Jacobian-rank probe at seeded points.
pub fn verify_partial(
    n: usize,
    k: usize,
    beta: Option<Vec<BigRational>>,
    trials: usize,
    seed: u64,
    field: FieldChoice,
    cfg: &LabConfig,
) -> Result<VerificationReport> {
    if !(1..=5).contains(&n) || k < 1 || k > n {
        return Err(Error::out_of_range("(n, k)", format!("({n}, {k})")));
    }
    let beta = beta.unwrap_or_else(|| random_beta(n, k, seed));
    let len = n * k - d(k - 1);
    if beta.len() != len {
        return Err(Error::LengthMismatch {
            expected: len,
            got: beta.len(),
        });
    }
    let mut field = field;
    let mut note = None;
    if n >= 4 && field.is_exact() && !cfg.long {
        field = FieldChoice::default_prime();
        note = Some(format!("exact run at n = {n} needs the long flag; ran modulo the default prime"));
    }
    let inputs = ReportInputs {
        n: Some(n),
        k: Some(k),
        field: field.name(),
        seeds: vec![seed],
        budget: cfg.budget.clone(),
        long: cfg.long,
        beta: Some(by_levels(n, k, &beta)),
        trials: Some(trials),
    };
    let expected = n * n - n * k + d(k - 1);
    let mut b = ReportBuilder::new(
        "partial",
        format!("the partial variety for n = {n}, k = {k} is equidimensional of dimension {expected}"),
        inputs,
        field.is_exact(),
    );
    if let Some(note) = note {
        b.note(note);
    }
    if beta.iter().all(|q| *q == BigRational::from_integer(0.into())) {
        b.note("beta = 0: the variety is the set of matrices whose last k principal blocks are nilpotent");
    }
    with_field!(field, f => run(f, n, k, &beta, cfg, &mut b))?;
    if trials > 0 {
        let probe = jacobian_rank_probe(Rationals, n, k, trials, seed)?;
        b.expect(probe.difference_check, "jacobian_difference_check", "symbolic and difference derivatives disagree");
        b.put("jacobian_probe", probe);
    }
    Ok(b.finish())
}

fn run<F: Field>(field: F, n: usize, k: usize, beta: &[BigRational], cfg: &LabConfig, b: &mut ReportBuilder) -> Result<()> {
    let sys = partial_system(field, n, k, beta, PartialFamily::GammaBar)?;
    let expected = (n * n - n * k + d(k - 1)) as i64;
    b.put("generators", sys.texts());
    b.put("expected_dim", expected);
    let opts = RegularityOptions::with_budget(cfg.budget.clone());
    let cert = leading_form_inference(&sys.ring, &sys.generators, &opts, false)?;
    let concluded = match cert.conclusion {
        LeadingFormConclusion::Regular => Some(sys.ring.nvars() as i64 - sys.len() as i64),
        LeadingFormConclusion::Budget => {
            b.budget_hit("leading_forms", "budget exhausted");
            None
        }
        _ => {
            b.fail("leading_forms", &cert.leading_certificate);
            None
        }
    };
    if let Some(dim) = concluded {
        b.expect(dim == expected, "dimension", dim);
    }
    b.put("concluded_dim", concluded);
    b.put("leading_form_certificate", &cert);
    if n <= 3 || cfg.long {
        if let Some(dim) = b.attempt("krull_dimension", sys.ideal().krull_dimension(&cfg.budget))? {
            b.expect(dim.krull_dim == expected, "krull_dimension", &dim);
            b.put("krull_dim", dim.krull_dim);
        }
    }
    Ok(())
}
