use gtkit_core::groebner::{Budget, GroebnerBasis, Ideal, RadicalRoute};
use gtkit_core::{Field, MonomialOrder, Polynomial, PrimeField, Rationals, Ring};

fn ring2() -> Ring<Rationals> {
    Ring::matrix(Rationals, 2)
}

fn p<F: Field>(r: &Ring<F>, s: &str) -> Polynomial<F> {
    Polynomial::parse(r, s).unwrap()
}

fn ideal<F: Field>(r: &Ring<F>, gens: &[&str]) -> Ideal<F> {
    Ideal::new(r, gens.iter().map(|g| p(r, g))).unwrap()
}

fn texts<F: Field>(i: &Ideal<F>) -> Vec<String> {
    i.groebner(&Budget::default()).unwrap().to_texts()
}

const GL2: [&str; 3] = ["x11", "x11 + x22", "x11^2 + 2*x12*x21 + x22^2"];

#[test]
fn small_bases() {
    let r = ring2();
    assert_eq!(texts(&ideal(&r, &["x11", "x11 + x22"])), ["x22", "x11"]);
    assert_eq!(texts(&ideal(&r, &["1"])), ["1"]);
    assert_eq!(texts(&ideal(&r, &["3*x11 - 2", "x11"])), ["1"]);
    let gb = texts(&ideal(&r, &GL2));
    assert_eq!(gb, ["x22", "x11", "x12*x21"]);
}

#[test]
fn normal_form_and_membership() {
    let r = ring2();
    let b = Budget::default();
    let diag = ideal(&r, &["x11", "x22"]);
    assert_eq!(diag.normal_form(&p(&r, GL2[2]), &b).unwrap().to_text(), "2*x12*x21");
    let gt = ideal(&r, &GL2);
    assert!(gt.contains(&p(&r, "x12*x21"), &b).unwrap());
    assert!(gt.contains(&p(&r, "0"), &b).unwrap());
    assert!(!gt.contains(&p(&r, "x12"), &b).unwrap());
}

#[test]
fn normal_form_matches_hand_division_over_q() {
    let r = ring2();
    let i = ideal(&r, &["2*x11 - 3*x12", "x21^2 - 1/2"]);
    let nf = i.normal_form(&p(&r, "x11^2*x21^2 + x22"), &Budget::default()).unwrap();
    // x11 -> 3/2 x12, x21^2 -> 1/2
    assert_eq!(nf.to_text(), "9/8*x12^2 + x22");
}

#[test]
fn quotients() {
    let r = ring2();
    let b = Budget::default();
    let q = ideal(&r, &["x11"]).quotient(&p(&r, "x11"), &b).unwrap();
    assert_eq!(texts(&q), ["1"]);
    let q = ideal(&r, &["x11*x12"]).quotient(&p(&r, "x11"), &b).unwrap();
    assert_eq!(texts(&q), ["x12"]);
    let q = ideal(&r, &["x11*x12", "x11*x21"]).quotient(&p(&r, "x11"), &b).unwrap();
    assert_eq!(texts(&q), ["x21", "x12"]);
    assert!(ideal(&r, &["x11"]).quotient(&p(&r, "0"), &b).is_err());
}

#[test]
fn quotient_of_inhomogeneous_ideal() {
    let r = ring2();
    let b = Budget::default();
    // (x11^2 - 1) : (x11 - 1) = (x11 + 1)
    let q = ideal(&r, &["x11^2 - 1"]).quotient(&p(&r, "x11 - 1"), &b).unwrap();
    assert_eq!(texts(&q), ["x11 + 1"]);
}

#[test]
fn intersections() {
    let r = ring2();
    let b = Budget::default();
    let i = ideal(&r, &["x11"]).intersect(&ideal(&r, &["x22"]), &b).unwrap();
    assert_eq!(texts(&i), ["x11*x22"]);
    let i = ideal(&r, &["x11", "x22", "x21"])
        .intersect(&ideal(&r, &["x11", "x22", "x12"]), &b)
        .unwrap();
    assert_eq!(texts(&i), texts(&ideal(&r, &GL2)));
    let base = ideal(&r, &GL2);
    let i = base.intersect(&Ideal::unit(&r), &b).unwrap();
    assert_eq!(texts(&i), texts(&base));
}

#[test]
fn radical_membership() {
    let r = ring2();
    let b = Budget::default();
    let sq = ideal(&r, &["x11^2"]);
    let a = sq.radical_contains(&p(&r, "x11"), RadicalRoute::Auto, &b).unwrap();
    assert!(a.member);
    assert_eq!(a.decided_by, "rabinowitsch");
    let a = ideal(&r, &["x11"])
        .radical_contains(&p(&r, "x22"), RadicalRoute::Rabinowitsch, &b)
        .unwrap();
    assert!(!a.member);
    // chi_21, chi_22 of the 2x2 matrix
    let chi = ideal(&r, &["-x11 - x22", "x11*x22 - x12*x21"]);
    let a = chi.radical_contains(&p(&r, GL2[2]), RadicalRoute::Auto, &b).unwrap();
    assert!(a.member);
    assert_eq!(a.decided_by, "ideal_membership");
    let a = chi.radical_contains(&p(&r, GL2[2]), RadicalRoute::Rabinowitsch, &b).unwrap();
    assert!(a.member);
}

#[test]
fn dimensions() {
    let r = ring2();
    let b = Budget::default();
    assert_eq!(ideal(&r, &["x21*x12"]).krull_dimension(&b).unwrap().krull_dim, 3);
    let d = ideal(&r, &GL2).krull_dimension(&b).unwrap();
    assert_eq!(d.krull_dim, 1);
    assert_eq!(d.witness.len(), 1);
    assert_eq!(Ideal::zero(&r).krull_dimension(&b).unwrap().krull_dim, 4);
    assert_eq!(Ideal::unit(&r).krull_dimension(&b).unwrap().krull_dim, -1);
}

#[test]
fn lex_and_modular() {
    let r = ring2();
    let i = ideal(&r, &["x11^2 - x12", "x11^3 - x21"]);
    let gb = i.groebner_in(MonomialOrder::Lex, &Budget::default()).unwrap();
    assert_eq!(gb.to_texts(), ["x12^3 - x21^2", "x11*x21 - x12^2", "x11*x12 - x21", "x11^2 - x12"]);
    let rp = Ring::matrix(PrimeField::default(), 2);
    let ip = ideal(&rp, &GL2);
    assert_eq!(ip.krull_dimension(&Budget::default()).unwrap().krull_dim, 1);
}

#[test]
fn budgets_are_reported() {
    let r = Ring::matrix(Rationals, 3);
    let i = ideal(&r, &["x11*x12 - x21*x13", "x11*x21 - x12^2", "x12*x21 - x22^2*x33"]);
    let err = GroebnerBasis::compute(i.gens(), &r, MonomialOrder::Degrevlex, &Budget::default().pairs(1)).unwrap_err();
    assert!(err.is_budget());
    let err = GroebnerBasis::compute(i.gens(), &r, MonomialOrder::Degrevlex, &Budget::default().degree(2)).unwrap_err();
    assert!(err.is_budget());
}

#[test]
fn extension_matches_fresh_basis() {
    let r = Ring::matrix(Rationals, 3);
    let b = Budget::default();
    let gens = ["x11 + x22 + x33", "x11*x22 - x12*x21", "x12*x23 - x13*x22 + x31"];
    let first = GroebnerBasis::compute(&[p(&r, gens[0]), p(&r, gens[1])], &r, MonomialOrder::Degrevlex, &b).unwrap();
    let ext = first.extend(&[p(&r, gens[2])], &b).unwrap();
    assert_eq!(ext.to_texts(), texts(&ideal(&r, &gens)));
}
