use serde::Serialize;

use super::{build_gens, check_union, radical_equality, with_field, FieldChoice, Gen, LabConfig, RadicalEquality, ReportBuilder, ReportInputs, UnionCheck, VerificationReport};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::Ideal;
use crate::gt::{d, gamma_bar, named_hom};
use crate::poly::Ring;
use crate::regularity::{equidimensional_by_ci, RegularityOptions, RegularityVerdict};

#[derive(Serialize)]
struct SmallDecomposition {
    pieces: Vec<(String, Vec<String>)>,
    union: UnionCheck,
    #[serde(skip_serializing_if = "Option::is_none")]
    transpose_iso: Option<RadicalEquality>,
}

fn small_pieces(n: usize) -> Vec<(String, Vec<Gen>)> {
    use Gen::*;
    match n {
        2 => vec![
            ("V(x11,x22,x21)".into(), vec![Text("x11"), Text("x22"), Text("x21")]),
            ("V(x11,x22,x12)".into(), vec![Text("x11"), Text("x22"), Text("x12")]),
        ],
        3 => {
            let tail = [Gamma(3, 1), Gamma(3, 2), Gamma(3, 3)];
            let v3 = [&[Gamma(1, 1), Gamma(2, 1), Text("x12")][..], &tail].concat();
            let w = [&[Gamma(1, 1), Gamma(2, 1), Text("x21")][..], &tail].concat();
            vec![("V_3".into(), v3), ("W".into(), w)]
        }
        _ => Vec::new(),
    }
}

fn decomposition<F: Field>(ring: &Ring<F>, whole: &Ideal<F>, n: usize, b: &mut ReportBuilder, cfg: &LabConfig) -> Result<()> {
    let specs = small_pieces(n);
    let mut pieces = Vec::new();
    let mut listed = Vec::new();
    for (name, spec) in &specs {
        let gens = build_gens(ring, spec)?;
        listed.push((name.clone(), gens.iter().map(|g| g.to_text()).collect()));
        pieces.push((name.clone(), Ideal::new(ring, gens)?));
    }
    let Some(union) = b.attempt("decomposition", check_union(whole, &pieces, &cfg.budget))? else {
        return Ok(());
    };
    b.expect(union.holds(), "decomposition", "pieces do not cut out the variety");
    let mut transpose_iso = None;
    if n == 3 {
        let t = named_hom("transpose", 3, ring.field().clone())?;
        let image = pieces[1].1.gens().iter().map(|g| t.apply(g)).collect::<Result<Vec<_>>>()?;
        if let Some(eq) = b.attempt("transpose_iso", radical_equality(&Ideal::new(ring, image)?, &pieces[0].1, &cfg.budget))? {
            b.expect(eq.equal, "transpose_iso", "transpose does not carry W onto V_3");
            transpose_iso = Some(eq);
        }
    }
    b.put(
        "decomposition",
        SmallDecomposition {
            pieces: listed,
            union,
            transpose_iso,
        },
    );
    Ok(())
}

/// The power-trace system of size `n` is a regular sequence, so its
/// variety is equidimensional of dimension `n(n-1)/2`. At `n = 4` the
/// exact run needs `cfg.long`; otherwise it is done modulo the default
/// prime.
pub fn verify_ovsienko(n: usize, field: FieldChoice, cfg: &LabConfig) -> Result<VerificationReport> {
    if !(2..=4).contains(&n) {
        return Err(Error::out_of_range("n", format!("{n} not in 2..=4")));
    }
    let mut field = field;
    let mut notes = Vec::new();
    if n == 4 && field.is_exact() && !cfg.long {
        field = FieldChoice::default_prime();
        notes.push("exact run at n = 4 needs the long flag; ran modulo the default prime".to_string());
    }
    let inputs = ReportInputs {
        n: Some(n),
        field: field.name(),
        budget: cfg.budget.clone(),
        long: cfg.long,
        ..Default::default()
    };
    let mut b = ReportBuilder::new(
        "ovsienko",
        format!("the Gelfand-Tsetlin variety of gl_{n} is equidimensional of dimension {}", d(n - 1)),
        inputs,
        field.is_exact(),
    );
    for note in notes {
        b.note(note);
    }
    with_field!(field, f => run(f, n, cfg, &mut b))?;
    Ok(b.finish())
}

fn run<F: Field>(field: F, n: usize, cfg: &LabConfig, b: &mut ReportBuilder) -> Result<()> {
    let sys = gamma_bar(field, n)?;
    let expected = d(n - 1) as i64;
    b.put("generators", sys.texts());
    b.put("labels", &sys.labels);
    b.put("expected_dim", expected);
    let opts = RegularityOptions::with_budget(cfg.budget.clone());
    let cert = equidimensional_by_ci(&sys.ring, &sys.generators, &opts)?;
    match &cert.regularity.verdict {
        RegularityVerdict::Regular => {
            b.expect(cert.concluded_dim == Some(expected), "dimension", cert.concluded_dim);
        }
        RegularityVerdict::FailedAt { index } => {
            b.fail("regularity", (index, &sys.labels[index - 1]));
        }
        RegularityVerdict::Budget { detail, .. } => b.budget_hit("regularity", detail.clone()),
    }
    b.put("concluded_dim", cert.concluded_dim);
    b.put("certificate", &cert);
    let ideal = sys.ideal();
    if let Some(dim) = b.attempt("krull_dimension", ideal.krull_dimension(&cfg.budget))? {
        b.expect(dim.krull_dim == expected, "krull_dimension", &dim);
        b.put("krull_dim", dim.krull_dim);
        b.put("independent_set", &dim.witness);
    }
    if n <= 3 {
        decomposition(&sys.ring, &ideal, n, b, cfg)?;
    }
    Ok(())
}
