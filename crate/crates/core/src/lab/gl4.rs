use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::{
    build_gens, check_union, radical_equality, with_field, FieldChoice, Gen, LabConfig, RadicalEquality, ReportBuilder,
    ReportInputs, UnionCheck, VerificationReport,
};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::Ideal;
use crate::gt::{gamma_bar, named_hom};
use crate::poly::{Polynomial, Ring};
use crate::regularity::{is_regular_sequence, RegularityOptions, RegularityVerdict};

use Gen::{Gamma as G, Text as T};

const LEVEL4: [Gen; 4] = [G(4, 1), G(4, 2), G(4, 3), G(4, 4)];
const OMEGA: [Gen; 6] = [T("x11"), T("x22"), T("x12"), T("x33"), T("x21"), T("x44")];

fn with_level4(head: &[Gen]) -> Vec<Gen> {
    [head, &LEVEL4].concat()
}

fn omega_piece(before: &[Gen], after: &[Gen]) -> Vec<Gen> {
    [before, &OMEGA, after].concat()
}

/// The named pieces, all as ideals of `k[x11..x44]`.
fn piece_spec(name: &str) -> Vec<Gen> {
    let (g11, g21, g31, g32, g33) = (G(1, 1), G(2, 1), G(3, 1), G(3, 2), G(3, 3));
    let (g42, g43) = (G(4, 2), G(4, 3));
    let cross = T("x32*x24 + x42*x23");
    match name {
        "V_4" => with_level4(&[g11, g21, T("x12"), g31, T("x23"), T("x13")]),
        "A" => with_level4(&[g11, g21, T("x12"), g31, T("x32"), T("x13")]),
        "B" => with_level4(&[g11, g21, T("x12"), g31, g32, T("x21")]),
        "C" => with_level4(&[g11, g21, T("x12"), g31, g32, T("x32")]),
        "D" => with_level4(&[g11, g21, T("x21"), g31, g32, g33]),
        "V_4+A+B+C" => with_level4(&[g11, g21, T("x12"), g31, g32, g33]),
        "V_4+A" => with_level4(&[g11, g21, T("x12"), g31, g32, T("x13")]),
        "B_1" => [piece_spec("B"), vec![T("x13 - x14"), T("x31 - x41")]].concat(),
        "B_1bar" => omega_piece(&[T("x13 - x14"), T("x31 - x41")], &[g32, g42, g43, T("x31*x13")]),
        "B_1hat" => omega_piece(&[T("x13 - x14"), T("x31 - x41")], &[g32, g42, g43, cross]),
        "B_2" => [piece_spec("B_1hat"), vec![T("x43 - x34")]].concat(),
        "B_2bar" => omega_piece(
            &[T("x43 - x34"), T("x13 - x14"), T("x31 - x41"), g32, g42, T("x31*x13"), cross],
            &[],
        ),
        "B_2hat" => omega_piece(&[T("x43 - x34"), T("x13 - x14"), T("x31 - x41")], &[g32, g42, T("x34"), cross]),
        "B_2hat'" => omega_piece(&[T("x43"), T("x13 - x14"), T("x31 - x41")], &[g32, g42, T("x34"), cross]),
        "B_3" => [piece_spec("B_2hat'"), vec![T("x23 - x32")]].concat(),
        "B_3bar" => omega_piece(
            &[T("x23 - x32"), T("x43"), T("x13 - x14"), T("x31 - x41")],
            &[g32, g42, T("x34"), T("x23")],
        ),
        "B_3hat" => omega_piece(
            &[T("x23 - x32"), T("x43"), T("x13 - x14"), T("x31 - x41")],
            &[g32, g42, T("x34"), T("x24 + x42")],
        ),
        "B_4" => [piece_spec("B_3hat"), vec![T("x23")]].concat(),
        "B_4bar" => omega_piece(
            &[T("x23"), T("x32"), T("x43"), T("x13 - x14"), T("x41")],
            &[T("x31"), T("x24"), T("x34"), T("x42")],
        ),
        "B_4hat" => omega_piece(
            &[T("x23"), T("x32"), T("x43"), T("x14"), T("x31 - x41")],
            &[T("x13"), T("x24"), T("x34"), T("x42")],
        ),
        other => unreachable!("unknown piece {other}"),
    }
}

const MAIN: [&str; 5] = ["V_4", "A", "B", "C", "D"];

/// Displayed dimension of each piece of the chain, with whether it is a
/// terminal piece.
const CHAIN_DIMS: [(&str, i64, bool); 10] = [
    ("B", 6, false),
    ("B_1", 4, false),
    ("B_1bar", 4, false),
    ("B_2", 3, false),
    ("B_2bar", 3, false),
    ("B_3", 2, false),
    ("B_3bar", 2, false),
    ("B_4", 1, false),
    ("B_4bar", 1, true),
    ("B_4hat", 1, true),
];

/// `(whole, parts)` for each displayed split of the chain.
const CHAIN_SPLITS: [(&str, [&str; 2]); 4] = [
    ("B_1", ["B_1bar", "B_1hat"]),
    ("B_2", ["B_2bar", "B_2hat"]),
    ("B_3", ["B_3bar", "B_3hat"]),
    ("B_4", ["B_4bar", "B_4hat"]),
];

/// `(piece, hyperplane sections)` whose sum defines the next link.
const CHAIN_SECTIONS: [(&str, &[&str]); 4] = [
    ("B", &["x13 - x14", "x31 - x41"]),
    ("B_1hat", &["x43 - x34"]),
    ("B_2hat'", &["x23 - x32"]),
    ("B_3hat", &["x23"]),
];

/// `(hom, source piece, target piece)`; each hom is an involution.
const HOMS: [(&str, &str, &str); 3] = [
    ("transpose", "D", "V_4+A+B+C"),
    ("conj_transpose:2134", "C", "V_4+A"),
    ("conj:1324", "V_4", "A"),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Gl4Piece {
    pub name: String,
    pub generators: Vec<String>,
}

/// Every named piece with its generators.
pub fn gl4_pieces<F: Field>(field: F) -> Result<Vec<Gl4Piece>> {
    let ring = Ring::matrix(field, 4);
    let mut names: Vec<&str> = MAIN.to_vec();
    names.extend(["V_4+A+B+C", "V_4+A"]);
    names.extend(CHAIN_DIMS.iter().map(|c| c.0).filter(|n| *n != "B"));
    names.extend(["B_1hat", "B_2hat", "B_2hat'", "B_3hat"]);
    names
        .into_iter()
        .map(|name| {
            Ok(Gl4Piece {
                name: name.to_string(),
                generators: build_gens(&ring, &piece_spec(name))?.iter().map(|g| g.to_text()).collect(),
            })
        })
        .collect()
}

/// Independently rerunnable parts of the decomposition check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Gl4Check {
    /// Each of V_4, A, B, C, D lies in the variety and together they cover it.
    Union,
    /// The displayed unions `V_4 ∪ A ∪ B ∪ C` and `V_4 ∪ A`.
    PartialUnions,
    Homs,
    Chain,
    /// Regularity of each piece's own generator list.
    Pieces,
}

impl Gl4Check {
    pub const ALL: [Gl4Check; 5] = [Gl4Check::Union, Gl4Check::PartialUnions, Gl4Check::Homs, Gl4Check::Chain, Gl4Check::Pieces];

    pub fn name(self) -> &'static str {
        match self {
            Gl4Check::Union => "union",
            Gl4Check::PartialUnions => "partial_unions",
            Gl4Check::Homs => "homs",
            Gl4Check::Chain => "chain",
            Gl4Check::Pieces => "pieces",
        }
    }
}

impl FromStr for Gl4Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Gl4Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::out_of_range("gl4 check", s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomCheck {
    pub hom: String,
    pub source: String,
    pub target: String,
    pub involution: bool,
    pub image_equals_target: RadicalEquality,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChainDim {
    pub piece: String,
    pub displayed_dim: i64,
    pub krull_dim: i64,
    pub terminal: bool,
    /// Terminal pieces: every generator is linear, so the piece is a
    /// linear subspace and hence irreducible.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub linear: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SectionCheck {
    pub piece: String,
    pub sections: Vec<String>,
    /// The piece's generators followed by the sections form a regular
    /// sequence.
    pub regular: Option<bool>,
}

/// Replays the decomposition of the gl_4 Gelfand-Tsetlin variety into
/// five pieces of dimension 6. An empty `checks` runs everything.
pub fn verify_gl4_decomposition(field: FieldChoice, checks: &[Gl4Check], cfg: &LabConfig) -> Result<VerificationReport> {
    let checks: Vec<Gl4Check> = if checks.is_empty() { Gl4Check::ALL.to_vec() } else { checks.to_vec() };
    let inputs = ReportInputs {
        n: Some(4),
        field: field.name(),
        budget: cfg.budget.clone(),
        long: cfg.long,
        ..Default::default()
    };
    let mut b = ReportBuilder::new(
        "gl4",
        "the gl_4 Gelfand-Tsetlin variety is V_4 ∪ A ∪ B ∪ C ∪ D, each piece equidimensional of dimension 6",
        inputs,
        field.is_exact(),
    );
    b.put("checks", &checks);
    with_field!(field, f => run(f, &checks, cfg, &mut b))?;
    Ok(b.finish())
}

fn ideal_of<F: Field>(ring: &Ring<F>, name: &str) -> Result<Ideal<F>> {
    Ideal::new(ring, build_gens(ring, &piece_spec(name))?)
}

fn named_pieces<F: Field>(ring: &Ring<F>, names: &[&str]) -> Result<Vec<(String, Ideal<F>)>> {
    names.iter().map(|n| Ok((n.to_string(), ideal_of(ring, n)?))).collect()
}

fn run<F: Field>(field: F, checks: &[Gl4Check], cfg: &LabConfig, b: &mut ReportBuilder) -> Result<()> {
    let gts = gamma_bar(field.clone(), 4)?;
    let ring = gts.ring.clone();
    b.put("pieces", gl4_pieces(field.clone())?);
    b.put("ambient", "k^16 = k[x11..x44]");
    let budget = &cfg.budget;
    for check in checks {
        match check {
            Gl4Check::Union => {
                let pieces = named_pieces(&ring, &MAIN)?;
                if let Some(u) = b.attempt("union", check_union(&gts.ideal(), &pieces, budget))? {
                    b.expect(u.holds(), "union", union_failure(&u));
                    b.put("union", &u);
                }
            }
            Gl4Check::PartialUnions => {
                let mut out = Vec::new();
                for (whole, parts) in [("V_4+A+B+C", &MAIN[..4]), ("V_4+A", &MAIN[..2])] {
                    let pieces = named_pieces(&ring, parts)?;
                    if let Some(u) = b.attempt(whole, check_union(&ideal_of(&ring, whole)?, &pieces, budget))? {
                        b.expect(u.holds(), whole, union_failure(&u));
                        out.push((whole, u));
                    }
                }
                b.put("partial_unions", out);
            }
            Gl4Check::Homs => {
                let mut out = Vec::new();
                for (hom, source, target) in HOMS {
                    if let Some(h) = b.attempt(hom, hom_check(&ring, hom, source, target, cfg))? {
                        b.expect(h.involution && h.image_equals_target.equal, hom, &h);
                        out.push(h);
                    }
                }
                b.put("homs", out);
            }
            Gl4Check::Chain => chain(&ring, cfg, b)?,
            Gl4Check::Pieces => {
                let opts = RegularityOptions::with_budget(budget.clone());
                let certs = MAIN
                    .par_iter()
                    .map(|name| {
                        let gens = build_gens(&ring, &piece_spec(name))?;
                        Ok((name.to_string(), is_regular_sequence(&ring, &gens, &opts)?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                for (name, c) in &certs {
                    match c.verdict {
                        RegularityVerdict::Regular => {}
                        RegularityVerdict::FailedAt { index } => b.fail("piece_regularity", (name, index)),
                        RegularityVerdict::Budget { .. } => b.budget_hit("piece_regularity", name.clone()),
                    }
                }
                let dims: Vec<(String, Option<usize>)> = certs
                    .iter()
                    .map(|(n, c)| (n.clone(), c.is_regular().then(|| 16 - c.sequence.len())))
                    .collect();
                b.put("piece_dims", dims);
                b.put("piece_certificates", certs);
            }
        }
    }
    Ok(())
}

fn union_failure(u: &UnionCheck) -> serde_json::Value {
    serde_json::json!({
        "pieces_not_contained": u.pieces.iter().filter(|p| !p.contained).map(|p| &p.piece).collect::<Vec<_>>(),
        "uncovered": u.cover_lines.iter().filter(|l| !l.member).map(|l| &l.generator).collect::<Vec<_>>(),
    })
}

fn hom_check<F: Field>(ring: &Ring<F>, hom: &str, source: &str, target: &str, cfg: &LabConfig) -> Result<HomCheck> {
    let h = named_hom(hom, 4, ring.field().clone())?;
    let involution = ring.vars().iter().all(|v| {
        let x = Polynomial::var(ring, *v).expect("ring variable");
        h.apply(&h.apply(&x).expect("in domain")).expect("in domain") == x
    });
    let image: Vec<Polynomial<F>> = build_gens(ring, &piece_spec(source))?
        .iter()
        .map(|g| h.apply(g))
        .collect::<Result<_>>()?;
    let eq = radical_equality(&Ideal::new(ring, image)?, &ideal_of(ring, target)?, &cfg.budget)?;
    Ok(HomCheck {
        hom: hom.to_string(),
        source: source.to_string(),
        target: target.to_string(),
        involution,
        image_equals_target: eq,
    })
}

fn chain<F: Field>(ring: &Ring<F>, cfg: &LabConfig, b: &mut ReportBuilder) -> Result<()> {
    let budget = &cfg.budget;
    let mut splits = Vec::new();
    for (whole, parts) in CHAIN_SPLITS {
        let pieces = named_pieces(ring, &parts)?;
        if let Some(u) = b.attempt(whole, check_union(&ideal_of(ring, whole)?, &pieces, budget))? {
            b.expect(u.holds(), &format!("split {whole}"), union_failure(&u));
            splits.push((whole, u));
        }
    }
    b.put("chain_splits", splits);
    if let Some(eq) = b.attempt(
        "B_2hat forms",
        radical_equality(&ideal_of(ring, "B_2hat")?, &ideal_of(ring, "B_2hat'")?, budget),
    )? {
        b.expect(eq.equal, "B_2hat forms", &eq);
        b.put("b2hat_forms_agree", eq.equal);
    }
    let mut dims = Vec::new();
    for (name, displayed, terminal) in CHAIN_DIMS {
        let ideal = ideal_of(ring, name)?;
        let Some(dim) = b.attempt(name, ideal.krull_dimension(budget))? else {
            continue;
        };
        let linear = terminal.then(|| ideal.gens().iter().all(|g| g.is_homogeneous() == Some(1)));
        let entry = ChainDim {
            piece: name.to_string(),
            displayed_dim: displayed,
            krull_dim: dim.krull_dim,
            terminal,
            linear,
        };
        b.expect(entry.krull_dim == displayed && linear != Some(false), &format!("dimension {name}"), &entry);
        dims.push(entry);
    }
    b.put("chain_dims", dims);
    let opts = RegularityOptions::with_budget(budget.clone());
    let mut sections = Vec::new();
    for (piece, cuts) in CHAIN_SECTIONS {
        let mut gens = build_gens(ring, &piece_spec(piece))?;
        gens.extend(cuts.iter().map(|c| Polynomial::parse(ring, c)).collect::<Result<Vec<_>>>()?);
        let cert = is_regular_sequence(ring, &gens, &opts)?;
        let regular = match cert.verdict {
            RegularityVerdict::Regular => Some(true),
            RegularityVerdict::FailedAt { .. } => Some(false),
            RegularityVerdict::Budget { .. } => None,
        };
        sections.push(SectionCheck {
            piece: piece.to_string(),
            sections: cuts.iter().map(|c| c.to_string()).collect(),
            regular,
        });
    }
    b.put("chain_sections", sections);
    Ok(())
}
