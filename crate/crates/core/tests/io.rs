use gtkit_core::gt::{gamma_bar, sigma};
use gtkit_core::io::{matrix_from_rationals, parse_matrix, parse_rational_list, SystemFile, SYSTEM_SCHEMA};
use gtkit_core::kw::phi_k;
use gtkit_core::{FieldChoice, MonomialOrder, PrimeField, Rationals};
use num_rational::BigRational;

#[test]
fn system_round_trip() {
    let sys = sigma(Rationals, 3).unwrap();
    let file = SystemFile::from_system(&sys);
    assert_eq!(file.schema, SYSTEM_SCHEMA);
    assert_eq!(file.generators.len(), 2);
    let back = SystemFile::parse(&file.to_json()).unwrap();
    assert_eq!(back, file);
    let (ring, gens) = back.load(Rationals, None).unwrap();
    assert_eq!(ring.vars(), sys.ring.vars());
    assert_eq!(gens, sys.generators);
    assert_eq!(back.field_choice().unwrap(), FieldChoice::Rationals);
}

#[test]
fn system_minimal_and_overrides() {
    let text = r#"{"ring": {"field": "GF(101)", "variables": ["x11", "x12"]}, "generators": ["x11^2 - 1/2*x12"]}"#;
    let file = SystemFile::parse(text).unwrap();
    assert_eq!(file.field_choice().unwrap(), FieldChoice::Prime(101));
    let (ring, gens) = file.load(PrimeField::new(101).unwrap(), Some(MonomialOrder::Lex)).unwrap();
    assert_eq!(ring.order(), MonomialOrder::Lex);
    assert_eq!(gens[0].to_text(), "x11^2 + 50*x12");
    assert!(SystemFile::parse(r#"{"schema": "other/9", "ring": {"field": "QQ", "variables": []}, "generators": []}"#).is_err());
    let bad = r#"{"ring": {"field": "QQ", "variables": ["x11"]}, "generators": ["x12"]}"#;
    assert!(SystemFile::parse(bad).unwrap().load(Rationals, None).is_err());
}

#[test]
fn gamma_file_records_family_and_labels() {
    let file = SystemFile::from_system(&gamma_bar(Rationals, 2).unwrap());
    assert_eq!(file.labels.as_ref().unwrap()[0], "gamma_bar[1,1]");
    assert_eq!(file.family.as_ref().unwrap()["kind"], "gamma_bar");
}

#[test]
fn matrices_and_lists() {
    let rows = parse_matrix(r#"[[1, "1/2"], ["-3", 0]]"#).unwrap();
    assert_eq!(rows[0][1], BigRational::new(1.into(), 2.into()));
    let m = matrix_from_rationals(Rationals, &rows).unwrap();
    let phi = phi_k(&m, 2).unwrap();
    assert_eq!(phi[1][1], BigRational::new(3.into(), 2.into()));
    assert!(parse_matrix(r#"[[1, 2], [3]]"#).and_then(|r| matrix_from_rationals(Rationals, &r)).is_err());
    assert!(parse_matrix(r#"[[1.5]]"#).is_err());
    assert_eq!(parse_rational_list(r#"[[1], ["2/3", 4]]"#).unwrap().len(), 3);
    assert_eq!(parse_rational_list(r#"[1, 5]"#).unwrap().len(), 2);
}

#[test]
fn field_choice_parsing() {
    assert_eq!("QQ".parse::<FieldChoice>().unwrap(), FieldChoice::Rationals);
    assert_eq!("fp".parse::<FieldChoice>().unwrap(), FieldChoice::Prime(32003));
    assert_eq!("GF(7)".parse::<FieldChoice>().unwrap(), FieldChoice::Prime(7));
    assert!("GF(8)".parse::<FieldChoice>().is_err());
    assert!("reals".parse::<FieldChoice>().is_err());
}
