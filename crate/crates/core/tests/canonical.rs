use std::sync::Arc;

use qflag::canonical::{demazure_flag, multiply, DualCanonical, EigenScalar, PhiElement};
use qflag::pbw::{rlex_less, PbwBasis};
use qflag::qea::{UPlusExpr, Uq};
use qflag::rootdata::{weights_up_to, CartanDatum, ReducedWord};
use qflag::scalars::{LaurentPoly, RatScalar};

fn basis(label: &str, word: Vec<usize>) -> DualCanonical {
    let uq = Arc::new(Uq::new(CartanDatum::from_label(label).unwrap()));
    let w = ReducedWord::new(uq.datum(), word).unwrap();
    DualCanonical::new(Arc::new(PbwBasis::new(uq, w).unwrap()))
}

#[test]
fn psi_matches_sigma_eta() {
    let b = basis("A2", vec![1, 2, 1]);
    let uq = b.uq().clone();
    let d = uq.datum().clone();
    let x = UPlusExpr::gen(1)
        .mul(&d, &UPlusExpr::gen(2))
        .scale(&RatScalar::q_pow(3))
        .add(&UPlusExpr::gen(2).mul(&d, &UPlusExpr::gen(1)).mul(&d, &UPlusExpr::gen(1)).scale(&RatScalar::from_int(2)));
    let x = x.component(2, &[2, 1]);
    let s = EigenScalar::new(&d, &[2, 1]).value().inv().unwrap();
    let lhs = uq.phi(&x.sigma_eta().scale(&s), &[2, 1]);
    let nf = RatScalar::from_poly(uq.norm_factor(&[2, 1]));
    let phi: Vec<LaurentPoly> = uq.phi(&x, &[2, 1]).iter().map(|c| (c * &nf).into_laurent().unwrap()).collect();
    let psi = PhiElement { weight: vec![2, 1], phi }.psi();
    for (a, b) in lhs.iter().zip(&psi.phi) {
        let b = &RatScalar::from_poly(b.clone()) * &nf.bar().inv().unwrap();
        assert_eq!(a, &b);
    }
}

#[test]
fn bar_matrix_examples() {
    let b = basis("A2", vec![1, 2, 1]);
    let one = LaurentPoly::one();
    assert_eq!(b.space(&[1, 0]).unwrap().bar_matrix, vec![vec![one.clone()]]);
    let s = b.space(&[1, 1]).unwrap();
    assert_eq!(s.data, vec![vec![0, 1, 0], vec![1, 0, 1]]);
    assert_eq!(s.bar_matrix[0][0], one);
    assert_eq!(s.bar_matrix[1][1], one);
    assert!(s.bar_matrix[1][0].is_zero());
    assert!(!s.bar_matrix[0][1].is_zero());
    assert!(b.space(&[0, 0]).unwrap().len() <= 1);
}

#[test]
fn dual_canonical_examples() {
    let b = basis("A2", vec![1, 2, 1]);
    let e2 = b.dual_pbw_expansion(&[0, 1, 0]).unwrap();
    assert_eq!(e2.len(), 1);
    assert!(e2[&vec![0, 1, 0]].is_one());
    let e13 = b.dual_pbw_expansion(&[1, 0, 1]).unwrap();
    assert!(e13[&vec![1, 0, 1]].is_one());
    assert!(e13[&vec![0, 1, 0]].is_in_qzq());
    assert_eq!(e13[&vec![0, 1, 0]], -RatScalar::q_pow(1));

    let uq = b.uq().clone();
    let (n, x) = b.flag_minor(1).unwrap();
    assert_eq!(n, vec![1, 0, 0]);
    let f = RatScalar::from_poly(LaurentPoly::from_terms([(0, 1), (-2, -1)]));
    assert!(uq.equals(&b.element_expr(&n).unwrap(), &UPlusExpr::gen(1).scale(&f)));
    assert_eq!(x.weight, vec![1, 0]);
    assert_eq!(b.flag_minor(2).unwrap().0, vec![0, 1, 0]);
    assert_eq!(b.flag_minor(2).unwrap().1.weight, vec![1, 1]);
    assert_eq!(b.flag_minor(3).unwrap().0, vec![1, 0, 1]);
    assert!(b.flag_minor(4).is_err());

    assert!(demazure_flag(&[1, 0, 1], 3));
    assert!(!demazure_flag(&[1, 0, 1], 2));
    assert!(demazure_flag(&[0, 0, 0], 1));

    let e = b.dual_pbw_element(&[1, 0, 1]).unwrap();
    assert!(b.in_q_lattice(&e.scale(&LaurentPoly::q_pow(1))).unwrap());
    assert!(!b.in_q_lattice(&e).unwrap());
    assert!(b.congruent_mod_ql(&b.element(&[1, 0, 1]).unwrap(), &e).unwrap());
    assert!(b.expand_dual_canonical(&UPlusExpr::zero()).unwrap().is_empty());
}

const WORDS: &[(&str, &[usize], i64)] = &[
    ("A2", &[1, 2, 1], 5),
    ("A2", &[2, 1, 2], 5),
    ("B2", &[1, 2, 1, 2], 4),
    ("B2", &[2, 1, 2, 1], 4),
    ("A3", &[1, 2, 1, 3, 2, 1], 3),
    ("A3", &[2, 1, 3, 2, 1, 3], 3),
];

fn data_up_to(b: &DualCanonical, h: i64) -> Vec<Vec<i64>> {
    weights_up_to(b.uq().rank(), h).iter().flat_map(|mu| b.pbw().data_of_weight(mu)).collect()
}

/// `sigma_eta(B(m)*) = s_mu B(m)*` checked on expressions, independently of the
/// triangular solve; expansions round-trip; off-diagonal coefficients in qZ[q].
#[test]
fn basis_invariants() {
    for (l, w, h) in WORDS {
        let b = basis(l, w.to_vec());
        let uq = b.uq().clone();
        let d = uq.datum().clone();
        for m in data_up_to(&b, *h) {
            let mu = b.pbw().weight_of(&m);
            let x = b.element_expr(&m).unwrap();
            let s = EigenScalar::new(&d, &mu).value();
            assert!(uq.equals(&x.sigma_eta(), &x.scale(&s)), "{l} {w:?} {m:?}");
            let c = b.expand_dual_canonical(&x).unwrap();
            assert_eq!(c.len(), 1);
            assert!(c[&m].is_one());
            for (n, c) in b.dual_pbw_expansion(&m).unwrap() {
                assert!(if n == m { c.is_one() } else { c.is_in_qzq() && rlex_less(&n, &m) });
            }
            let y = b.pbw().pbw_monomial(&m).unwrap().scale(&b.pbw().dual_pbw_normalizer(&m).unwrap());
            for (n, c) in b.expand_dual_canonical(&y).unwrap() {
                assert!(if n == m { c.is_one() } else { c.is_in_qzq() }, "{l} {w:?} {m:?} {n:?} {c}");
            }
        }
    }
}

/// For `m` supported on the first `k` coordinates, `B(m)*` is spanned by dual PBW
/// elements with the same support.
#[test]
fn demazure_part_is_spanned_by_its_pbw_part() {
    for (l, w, h) in WORDS {
        let b = basis(l, w.to_vec());
        for m in data_up_to(&b, *h) {
            let k = m.iter().rposition(|&x| x != 0).map_or(0, |p| p + 1);
            for n in b.dual_pbw_expansion(&m).unwrap().keys() {
                assert!(demazure_flag(n, k), "{l} {w:?} {m:?} {n:?}");
            }
        }
    }
}

/// `q^{-d(n_k, m)} B(m)* Delta_k*` is congruent to `B(m + n_k)*` mod `qL*` for `m`
/// in the Demazure part of the prefix.
#[test]
fn minor_times_demazure_element_is_dual_canonical() {
    for (l, w, h) in WORDS {
        let b = basis(l, w.to_vec());
        let uq = b.uq().clone();
        for k in 1..=w.len() {
            let (nk, delta) = b.flag_minor(k).unwrap();
            for m in data_up_to(&b, (*h).min(3)).iter().filter(|m| demazure_flag(m, k)) {
                let e = b.pbw().d_form(&nk, m);
                let x = multiply(&uq, &b.element(m).unwrap(), &delta).scale(&LaurentPoly::q_pow(-e));
                let sum: Vec<i64> = m.iter().zip(&nk).map(|(a, b)| a + b).collect();
                assert!(b.congruent_mod_ql(&x, &b.element(&sum).unwrap()).unwrap(), "{l} {w:?} k={k} {m:?}");
            }
        }
    }
}
