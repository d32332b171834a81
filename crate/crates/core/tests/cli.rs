use std::process::Command;

use proptest::prelude::*;
use qflag::cli::{parse_ast, parse_expr};
use qflag::error::Error;
use qflag::pbw::PbwBasis;
use qflag::qea::{UPlusExpr, Uq, Word};
use qflag::rootdata::CartanDatum;
use qflag::scalars::{LaurentPoly, RatScalar};
use std::sync::Arc;

fn a2() -> CartanDatum {
    CartanDatum::from_label("A2").unwrap()
}

fn qflag(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qflag")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn parses_root_vector() {
    let d = a2();
    let uq = Arc::new(Uq::new(d.clone()));
    let pbw = PbwBasis::new(uq.clone(), d.longest_word()).unwrap();
    let x = parse_expr(&d, "E1*E2 - q^-1*E2*E1").unwrap();
    assert!(uq.equals(&x, &pbw.root_vector(2).unwrap()));
}

#[test]
fn parses_divided_power_word() {
    let d = a2();
    let x = parse_expr(&d, "E1^(2)*E2").unwrap();
    let (w, c) = Word::from_runs(&d, &[(1, 2), (2, 1)]);
    assert!(c.is_one());
    assert_eq!(x, UPlusExpr::term(w, RatScalar::one()));
    let y = parse_expr(&d, "E1^2").unwrap();
    let expect = UPlusExpr::term(Word::divided(1, 2), RatScalar::from_poly(LaurentPoly::from_terms([(-1, 1), (1, 1)])));
    assert_eq!(y, expect);
}

#[test]
fn parser_errors() {
    assert!(matches!(parse_ast("E1 + + E2"), Err(Error::Syntax { offset: 5, .. })));
    assert!(matches!(parse_ast("E1 * x"), Err(Error::UnknownAtom { offset: 5, .. })));
    assert!(matches!(parse_ast("E0"), Err(Error::UnknownAtom { offset: 0, .. })));
    assert!(matches!(parse_ast("q^E1"), Err(Error::NonIntegerExponent(2))));
    assert!(matches!(parse_ast("q^1.5"), Err(Error::NonIntegerExponent(2))));
    assert!(matches!(parse_ast("(E1"), Err(Error::Syntax { offset: 3, .. })));
    assert!(matches!(parse_ast("E1 E2"), Err(Error::Syntax { offset: 3, .. })));
    assert!(matches!(parse_expr(&a2(), "E3"), Err(Error::UnknownAtom { offset: 0, .. })));
    assert!(matches!(parse_expr(&a2(), "E1/E2"), Err(Error::Syntax { offset: 2, .. })));
    assert!(matches!(parse_expr(&a2(), "E1/(q - q)"), Err(Error::DivisionByZero)));
}

#[test]
fn scalar_arithmetic() {
    let d = a2();
    let x = parse_expr(&d, "(q^2 - q^-2)/(q - q^-1)*E1").unwrap();
    let y = parse_expr(&d, "(q + q^-1)*E1").unwrap();
    assert_eq!(x, y);
    assert_eq!(parse_expr(&d, "-q^2").unwrap(), UPlusExpr::scalar(-RatScalar::q_pow(2)));
    assert_eq!(parse_expr(&d, "2 - 2").unwrap(), UPlusExpr::zero());
}

#[test]
fn renders_round_trip_examples() {
    let d = a2();
    for s in ["q^-1*E2*E1", "(q + q^-1)*E1", "-E1^(3)*E2 + 2*q^3*E2", "((q^2 + 1)/(q + 1))*E1*E2", "1"] {
        let x = parse_expr(&d, s).unwrap();
        assert_eq!(parse_expr(&d, &x.render('E')).unwrap(), x, "{s}");
    }
}

fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-4i64..=4, -3i64..=3), 0..4).prop_map(LaurentPoly::from_terms)
}

fn arb_scalar() -> impl Strategy<Value = RatScalar> {
    (arb_poly(), arb_poly(), any::<bool>()).prop_map(|(n, d, frac)| {
        let d = if frac && !d.is_zero() { d } else { LaurentPoly::one() };
        RatScalar::new(n, d).unwrap()
    })
}

fn arb_element() -> impl Strategy<Value = UPlusExpr> {
    let word = prop::collection::vec((1usize..=3, 1u32..=3), 0..4);
    prop::collection::vec((word, arb_scalar()), 0..4).prop_map(|terms| {
        let d = CartanDatum::from_label("A3").unwrap();
        let mut x = UPlusExpr::zero();
        for (runs, c) in terms {
            let (w, f) = Word::from_runs(&d, &runs);
            x.add_term(w, &(&c * &RatScalar::from_poly(f)));
        }
        x
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn parse_render_round_trip(x in arb_element()) {
        let d = CartanDatum::from_label("A3").unwrap();
        let text = x.render('E');
        prop_assert_eq!(parse_expr(&d, &text).unwrap(), x, "{}", text);
    }
}

#[test]
fn cli_examples() {
    let (code, out, _) = qflag(&["check", "prop41", "--type", "A2", "--orientation", "2>1"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"schema\": 1"));

    let (code, out, _) = qflag(&["basis", "--type", "A2", "--word", "1,2,1", "--weight", "1,1"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["elements"].as_array().unwrap().len(), 2);

    let (code, _, err) = qflag(&["pbw", "coords", "--type", "A2", "--word", "1,2,1", "--expr", "E1 + + E2"]);
    assert_eq!(code, 2);
    assert!(err.contains("offset 5"));
}

#[test]
fn cli_exit_codes_and_formats() {
    assert_eq!(qflag(&["nonsense"]).0, 2);
    assert_eq!(qflag(&["check", "nosuch", "--type", "A2", "--word", "1,2,1"]).0, 2);
    assert_eq!(qflag(&["check", "pairing", "--type", "A2"]).0, 2);
    assert_eq!(qflag(&["check", "pairing", "--type", "A2", "--word", "1,1,2"]).0, 2);
    assert_eq!(qflag(&["check", "prop41", "--type", "A2", "--word", "1,2,1"]).0, 2);
    assert_eq!(qflag(&["--help"]).0, 0);
    assert_eq!(qflag(&["check", "remark43", "--type", "D4", "--prefix", "2"]).0, 1);

    let (code, out, _) = qflag(&["rootdata", "--type", "A2", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out, "k,letter,beta,d_1,d_2,d_3\n1,1,\"[1,0]\",1,0,0\n2,2,\"[1,1]\",1,1,0\n3,1,\"[0,1]\",-1,1,1\n");

    let (code, out, _) = qflag(&["pbw", "coords", "--type", "A2", "--word", "1,2,1", "--expr", "E2*E1", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out, "datum,coeff\n\"[0,1,0]\",-q\n\"[1,0,1]\",q\n");

    let a = qflag(&["flag-minors", "--type", "A3", "--orientation", "2>1,2>3"]);
    let b = qflag(&["flag-minors", "--type", "A3", "--orientation", "2>1,2>3"]);
    assert_eq!(a, b);

    let dir = std::env::temp_dir().join(format!("qflag-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("quiver.json");
    let (code, out, _) = qflag(&["quiver", "--type", "D4", "--orientation", "1>2,3>2,4>2", "--output", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["indecomposables"].as_array().unwrap().len(), 12);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn cli_runs_every_orientation() {
    let (code, out, _) = qflag(&["mult-scan", "--type", "A2", "--orientation", "all", "--height", "3", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 3);
}
