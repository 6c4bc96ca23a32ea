//! Verifiers for the named statements about Gelfand-Tsetlin varieties.
//! Each returns a [`VerificationReport`]; failures carry a counterexample
//! and budget exhaustion yields an inconclusive verdict, never a pass.

mod components;
mod gl4;
mod ovsienko;
mod partial;
mod report;
mod weak;
mod zelobenko;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::field::Field;
use crate::groebner::{Budget, Ideal, RadicalRoute};
use crate::gt::gamma_bar_level;
use crate::poly::{Polynomial, Ring, Variable};

pub use components::{enumerate_regular_components, ComponentCandidate};
pub use gl4::{gl4_pieces, verify_gl4_decomposition, ChainDim, Gl4Check, Gl4Piece, HomCheck, SectionCheck};
pub use ovsienko::verify_ovsienko;
pub use partial::{random_beta, verify_partial};
pub use report::{FieldChoice, LabConfig, ReportInputs, Timing, Verdict, VerificationReport, REPORT_SCHEMA, TOOL_VERSION};
pub use weak::{replay_weak_recursion, verify_weak, BranchReplay, RecursionReplay};
pub use zelobenko::{newton_identities_hold, verify_zelobenko};

pub(crate) use report::{with_field, ReportBuilder};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipLine {
    pub generator: String,
    pub member: bool,
    pub decided_by: &'static str,
}

/// Radical membership of every polynomial in `ps`.
pub(crate) fn radical_lines<F: Field>(ideal: &Ideal<F>, ps: &[Polynomial<F>], budget: &Budget) -> Result<Vec<MembershipLine>> {
    ideal.groebner(budget)?;
    ps.par_iter()
        .map(|p| {
            let a = ideal.radical_contains(p, RadicalRoute::Auto, budget)?;
            Ok(MembershipLine {
                generator: p.to_text(),
                member: a.member,
                decided_by: a.decided_by,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PieceContainment {
    pub piece: String,
    pub contained: bool,
    pub lines: Vec<MembershipLine>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnionCheck {
    pub pieces: Vec<PieceContainment>,
    pub intersection_generators: usize,
    /// Every generator of the intersection lies in the radical of the whole.
    pub covered: bool,
    pub cover_lines: Vec<MembershipLine>,
}

impl UnionCheck {
    pub fn holds(&self) -> bool {
        self.covered && self.pieces.iter().all(|p| p.contained)
    }
}

/// `V(whole) = ∪ V(piece)` as `rad(whole) = rad(∩ piece)`.
pub(crate) fn check_union<F: Field>(
    whole: &Ideal<F>,
    pieces: &[(String, Ideal<F>)],
    budget: &Budget,
) -> Result<UnionCheck> {
    let contained = pieces
        .par_iter()
        .map(|(name, piece)| {
            let lines = radical_lines(piece, whole.gens(), budget)?;
            Ok(PieceContainment {
                piece: name.clone(),
                contained: lines.iter().all(|l| l.member),
                lines,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut meet = pieces[0].1.clone();
    for (_, p) in &pieces[1..] {
        meet = meet.intersect(p, budget)?;
    }
    let cover_lines = radical_lines(whole, meet.gens(), budget)?;
    Ok(UnionCheck {
        pieces: contained,
        intersection_generators: meet.gens().len(),
        covered: cover_lines.iter().all(|l| l.member),
        cover_lines,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RadicalEquality {
    pub left_in_right: Vec<MembershipLine>,
    pub right_in_left: Vec<MembershipLine>,
    pub equal: bool,
}

pub(crate) fn radical_equality<F: Field>(a: &Ideal<F>, b: &Ideal<F>, budget: &Budget) -> Result<RadicalEquality> {
    let left_in_right = radical_lines(b, a.gens(), budget)?;
    let right_in_left = radical_lines(a, b.gens(), budget)?;
    let equal = left_in_right.iter().chain(&right_in_left).all(|l| l.member);
    Ok(RadicalEquality {
        left_in_right,
        right_in_left,
        equal,
    })
}

/// Generator spec of a piece: either `γ̄_ij` or a polynomial in the text
/// format.
#[derive(Clone, Copy, Debug)]
pub(crate) enum Gen {
    Gamma(usize, usize),
    Text(&'static str),
}

pub(crate) fn build_gens<F: Field>(ring: &Ring<F>, spec: &[Gen]) -> Result<Vec<Polynomial<F>>> {
    spec.iter()
        .map(|g| match *g {
            Gen::Gamma(i, j) => Ok(gamma_bar_level(ring, i)?.swap_remove(j - 1)),
            Gen::Text(s) => Polynomial::parse(ring, s),
        })
        .collect()
}

pub(crate) fn var_names(vs: &[Variable]) -> Vec<String> {
    vs.iter().map(|v| v.to_string()).collect()
}
