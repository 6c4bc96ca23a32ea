use serde::Serialize;

use super::{radical_equality, with_field, FieldChoice, LabConfig, ReportBuilder, ReportInputs, VerificationReport};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::Ideal;
use crate::gt::{chi_level, gamma_bar_level};
use crate::poly::{Polynomial, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonLine {
    pub j: usize,
    pub holds: bool,
}

/// `p_j + c_1 p_{j-1} + ... + c_{j-1} p_1 + j c_j = 0` for `j = 1..=i`,
/// with `p` the power traces and `c` the characteristic coefficients of
/// the upper-left `i x i` block.
pub fn newton_identities_hold<F: Field>(field: F, i: usize) -> Result<Vec<NewtonLine>> {
    if !(1..=6).contains(&i) {
        return Err(Error::out_of_range("i", format!("{i} not in 1..=6")));
    }
    let ring = Ring::matrix(field.clone(), i);
    let p = gamma_bar_level(&ring, i)?;
    let c = chi_level(&ring, i)?;
    (1..=i)
        .map(|j| {
            let mut acc = p[j - 1].clone();
            for m in 1..j {
                acc = acc.add(&c[m - 1].mul(&p[j - m - 1])?)?;
            }
            acc = acc.add(&c[j - 1].scale(&field.from_i64(j as i64)))?;
            Ok(NewtonLine { j, holds: acc.is_zero() })
        })
        .collect()
}

/// The characteristic coefficients and the power traces of the `i x i`
/// block cut out the same variety.
pub fn verify_zelobenko(i: usize, field: FieldChoice, cfg: &LabConfig) -> Result<VerificationReport> {
    if !(1..=4).contains(&i) {
        return Err(Error::out_of_range("i", format!("{i} not in 1..=4")));
    }
    let mut field = field;
    let mut note = None;
    if i == 4 && field.is_exact() && !cfg.long {
        field = FieldChoice::default_prime();
        note = Some("exact run at i = 4 needs the long flag; ran modulo the default prime");
    }
    let inputs = ReportInputs {
        n: Some(i),
        field: field.name(),
        budget: cfg.budget.clone(),
        long: cfg.long,
        ..Default::default()
    };
    let mut b = ReportBuilder::new(
        "zelobenko",
        format!("V(chi_{i}1..chi_{i}{i}) = V(gamma_bar_{i}1..gamma_bar_{i}{i})"),
        inputs,
        field.is_exact(),
    );
    if let Some(n) = note {
        b.note(n);
    }
    with_field!(field, f => run(f, i, cfg, &mut b))?;
    Ok(b.finish())
}

fn run<F: Field>(field: F, i: usize, cfg: &LabConfig, b: &mut ReportBuilder) -> Result<()> {
    let ring = Ring::matrix(field.clone(), i);
    let chis = chi_level(&ring, i)?;
    let gammas = gamma_bar_level(&ring, i)?;
    let text = |v: &[Polynomial<F>]| v.iter().map(|p| p.to_text()).collect::<Vec<_>>();
    b.put("chi", text(&chis));
    b.put("gamma_bar", text(&gammas));
    let newton = newton_identities_hold(field, i)?;
    let broken: Vec<&NewtonLine> = newton.iter().filter(|l| !l.holds).collect();
    b.expect(broken.is_empty(), "newton_identities", &broken);
    b.put("newton_identities", &newton);
    let chi_ideal = Ideal::new(&ring, chis)?;
    let gamma_ideal = Ideal::new(&ring, gammas)?;
    if let Some(eq) = b.attempt("radical_containments", radical_equality(&chi_ideal, &gamma_ideal, &cfg.budget))? {
        if !eq.equal {
            let missing: Vec<_> = eq.left_in_right.iter().chain(&eq.right_in_left).filter(|l| !l.member).collect();
            b.fail("radical_containments", &missing);
        }
        b.put("chi_in_rad_gamma", &eq.left_in_right);
        b.put("gamma_in_rad_chi", &eq.right_in_left);
    }
    Ok(())
}
