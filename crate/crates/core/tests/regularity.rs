use gtkit_core::groebner::Budget;
use gtkit_core::gt::{gamma_bar, index_set, named_hom, sigma};
use gtkit_core::regularity::{
    check_permutation_invariance, check_subsequence, equidimensional_by_ci, is_regular_sequence,
    leading_form_inference, project_out_variables, LeadingFormConclusion, RegularityOptions, RegularityVerdict,
    Strategy,
};
use gtkit_core::{Polynomial, PrimeField, Rationals, Ring, Variable};

fn polys(r: &Ring<Rationals>, s: &[&str]) -> Vec<Polynomial<Rationals>> {
    s.iter().map(|t| Polynomial::parse(r, t).unwrap()).collect()
}

fn both_strategies() -> [RegularityOptions; 2] {
    [
        RegularityOptions {
            strategy: Strategy::Hilbert,
            budget: Budget::default(),
        },
        RegularityOptions {
            strategy: Strategy::Colon,
            budget: Budget::default(),
        },
    ]
}

#[test]
fn small_sequences_agree_under_both_routes() {
    let r = Ring::matrix(Rationals, 2);
    for opts in both_strategies() {
        let c = is_regular_sequence(&r, &polys(&r, &["x11", "x22", "x12*x21"]), &opts).unwrap();
        assert!(c.is_regular(), "{:?}", opts.strategy);
        assert_eq!(c.steps.len(), 3);
        let c = is_regular_sequence(&r, &polys(&r, &["x11", "x11"]), &opts).unwrap();
        assert_eq!(c.failed_at(), Some(2));
        assert!(!c.steps[1].quotient_equal);
        assert!(c.steps[1].non_unit);
        let c = is_regular_sequence(&r, &polys(&r, &["x11*x12", "x11*x21"]), &opts).unwrap();
        assert_eq!(c.failed_at(), Some(2));
        let c = is_regular_sequence(&r, &[], &opts).unwrap();
        assert!(c.is_regular());
    }
}

#[test]
fn units_and_zero_fail() {
    let r = Ring::matrix(Rationals, 2);
    let c = is_regular_sequence(&r, &polys(&r, &["x11 + 1", "x11"]), &RegularityOptions::default()).unwrap();
    assert_eq!(c.failed_at(), Some(2));
    assert!(!c.steps[1].non_unit);
    let c = is_regular_sequence(&r, &polys(&r, &["x11", "0"]), &RegularityOptions::default()).unwrap();
    assert_eq!(c.failed_at(), Some(2));
    let c = is_regular_sequence(&r, &polys(&r, &["3"]), &RegularityOptions::default()).unwrap();
    assert_eq!(c.failed_at(), Some(1));
    assert!(c.steps[0].quotient_equal);
    assert!(!c.steps[0].non_unit);
}

#[test]
fn hilbert_route_refuses_inhomogeneous_input() {
    let r = Ring::matrix(Rationals, 2);
    let opts = RegularityOptions {
        strategy: Strategy::Hilbert,
        budget: Budget::default(),
    };
    assert!(is_regular_sequence(&r, &polys(&r, &["x11 + 1"]), &opts).is_err());
}

#[test]
fn inhomogeneous_sequence_uses_colon_route() {
    let r = Ring::matrix(Rationals, 2);
    let c = is_regular_sequence(&r, &polys(&r, &["x11 + x22 - 1", "x11^2 + 2*x12*x21 + x22^2 - 5"]), &RegularityOptions::default()).unwrap();
    assert!(c.is_regular());
    assert_eq!(c.steps[0].method, "colon_ideal");
}

#[test]
fn equidimensional_certificates() {
    let g = gamma_bar(Rationals, 2).unwrap();
    let c = equidimensional_by_ci(&g.ring, &g.generators, &RegularityOptions::default()).unwrap();
    assert_eq!(c.concluded_dim, Some(1));
    let s = sigma(Rationals, 3).unwrap();
    let c = equidimensional_by_ci(&s.ring, &s.generators, &RegularityOptions::default()).unwrap();
    assert_eq!(c.ambient_dim, 5);
    assert_eq!(c.concluded_dim, Some(3));
    let r = Ring::matrix(Rationals, 2);
    let c = equidimensional_by_ci(&r, &polys(&r, &["x11", "x11^2"]), &RegularityOptions::default()).unwrap();
    assert_eq!(c.concluded_dim, None);
    assert_eq!(c.regularity.failed_at(), Some(2));
    assert!(equidimensional_by_ci(&r, &polys(&r, &["x11 + 1"]), &RegularityOptions::default()).is_err());
    assert!(equidimensional_by_ci(&r, &polys(&r, &["1"]), &RegularityOptions::default()).is_err());
}

#[test]
fn concluded_dimension_matches_krull_dimension() {
    let b = Budget::default();
    for n in 2..=3 {
        let g = gamma_bar(Rationals, n).unwrap();
        let c = equidimensional_by_ci(&g.ring, &g.generators, &RegularityOptions::default()).unwrap();
        assert_eq!(c.concluded_dim, Some(g.ideal().krull_dimension(&b).unwrap().krull_dim));
    }
    for n in 2..=4 {
        let s = sigma(Rationals, n).unwrap();
        let c = equidimensional_by_ci(&s.ring, &s.generators, &RegularityOptions::default()).unwrap();
        assert_eq!(c.concluded_dim, Some(s.ideal().krull_dimension(&b).unwrap().krull_dim));
    }
}

#[test]
fn permutations() {
    let r = Ring::matrix(Rationals, 2);
    let gs = polys(&r, &["x11", "x22", "x12*x21"]);
    let rep = check_permutation_invariance(&r, &gs, 6, 1, &RegularityOptions::default()).unwrap();
    assert!(rep.exhaustive);
    assert_eq!(rep.trials.len(), 6);
    assert!(rep.invariant_holds);
    let rep = check_permutation_invariance(&r, &gs[..1], 5, 1, &RegularityOptions::default()).unwrap();
    assert_eq!(rep.trials.len(), 1);
    assert!(rep.invariant_holds);
    let g = gamma_bar(PrimeField::default(), 3).unwrap();
    let rep = check_permutation_invariance(&g.ring, &g.generators, 20, 7, &RegularityOptions::default()).unwrap();
    assert!(!rep.exhaustive);
    assert_eq!(rep.trials.len(), 20);
    assert!(rep.invariant_holds && !rep.budget_hit);
    let again = check_permutation_invariance(&g.ring, &g.generators, 20, 7, &RegularityOptions::default()).unwrap();
    assert_eq!(rep, again);
}

#[test]
fn subsequences() {
    let g = gamma_bar(Rationals, 2).unwrap();
    let opts = RegularityOptions::default();
    assert!(check_subsequence(&g.ring, &g.generators, &[1, 2], &opts).unwrap().is_regular());
    assert!(check_subsequence(&g.ring, &g.generators, &[], &opts).unwrap().is_regular());
    assert!(check_subsequence(&g.ring, &g.generators, &[0, 1, 2], &opts).unwrap().is_regular());
    assert!(check_subsequence(&g.ring, &g.generators, &[2, 1], &opts).is_err());
    assert!(check_subsequence(&g.ring, &g.generators, &[3], &opts).is_err());
}

#[test]
fn projection_reproduces_the_shift_reduction() {
    let s4 = sigma(Rationals, 4).unwrap();
    let x = [(1, 4), (2, 1), (3, 1), (4, 1)].map(|(i, j)| Variable::entry(i, j));
    let (small, proj) = project_out_variables(&s4.ring, &s4.generators[..2], &x).unwrap();
    assert_eq!(small.nvars(), 5);
    let s3 = sigma(Rationals, 3).unwrap();
    let h = named_hom("shift", 4, Rationals).unwrap();
    for (p, q) in proj.iter().zip(&s3.generators) {
        assert_eq!(*p, h.apply(q).unwrap().to_ring(&small).unwrap());
    }
    let r = Ring::matrix(Rationals, 2);
    let (_, same) = project_out_variables(&r, &polys(&r, &["x11 + x12*x21"]), &[]).unwrap();
    assert_eq!(same[0].to_text(), "x12*x21 + x11");
    let (_, p) = project_out_variables(&r, &polys(&r, &["x11 + x12*x21"]), &[Variable::entry(1, 2)]).unwrap();
    assert_eq!(p[0].to_text(), "x11");
    // complete intersection on both sides
    let opts = RegularityOptions::default();
    let mut big = polys(&Ring::over(Rationals, index_set(4)), &[]);
    for v in x {
        big.push(Polynomial::var(&s4.ring, v).unwrap());
    }
    big.extend(s4.generators[..2].iter().cloned());
    assert!(is_regular_sequence(&s4.ring, &big, &opts).unwrap().is_regular());
    assert!(is_regular_sequence(&small, &proj, &opts).unwrap().is_regular());
}

#[test]
fn leading_forms() {
    let r = Ring::matrix(Rationals, 2);
    let opts = RegularityOptions::default();
    let c = leading_form_inference(&r, &polys(&r, &["x11 + x22 - 1", "x11^2 + 2*x12*x21 + x22^2 - 5"]), &opts, true).unwrap();
    assert_eq!(c.conclusion, LeadingFormConclusion::Regular);
    assert_eq!(c.leading_forms, ["x11 + x22", "x11^2 + 2*x12*x21 + x22^2"]);
    assert!(c.direct.unwrap().is_regular());
    let c = leading_form_inference(&r, &polys(&r, &["x11 - 1"]), &opts, false).unwrap();
    assert_eq!(c.conclusion, LeadingFormConclusion::Regular);
    let c = leading_form_inference(&r, &polys(&r, &["x11 + 1", "x11"]), &opts, false).unwrap();
    assert_eq!(c.conclusion, LeadingFormConclusion::Inconclusive);
    let c = leading_form_inference(&r, &polys(&r, &["x11 + 1", "x11"]), &opts, true).unwrap();
    assert_eq!(c.conclusion, LeadingFormConclusion::UnitIdeal);
    assert_eq!(c.direct.unwrap().verdict, RegularityVerdict::FailedAt { index: 2 });
}

#[test]
fn budget_becomes_a_verdict() {
    let g = gamma_bar(Rationals, 3).unwrap();
    let opts = RegularityOptions::with_budget(Budget::default().pairs(1));
    let c = is_regular_sequence(&g.ring, &g.generators, &opts).unwrap();
    assert!(c.is_budget());
}
