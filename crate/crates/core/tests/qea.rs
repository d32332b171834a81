use proptest::prelude::*;
use std::sync::Arc;

use qflag::pbw::{braid_t, PbwBasis};
use qflag::qea::{TriExpr, UPlusExpr, Uq, Word};
use qflag::rootdata::{CartanDatum, ReducedWord};
use qflag::scalars::{quantum_integer, LaurentPoly, RatScalar};

fn uq(label: &str) -> Uq {
    Uq::new(CartanDatum::from_label(label).unwrap())
}

fn word_in(d: &CartanDatum, w: &[u8]) -> UPlusExpr {
    let mut x = UPlusExpr::one();
    for &i in w {
        x = x.mul(d, &UPlusExpr::gen(i as usize));
    }
    x
}

fn rs(p: LaurentPoly) -> RatScalar {
    RatScalar::from_poly(p)
}

#[test]
fn serre_relations_vanish() {
    let u = uq("A2");
    let e = |w: &[u8]| word_in(u.datum(), w);
    let q2 = rs(quantum_integer(2, 2).unwrap());
    let s = e(&[1, 1, 2]).sub(&e(&[1, 2, 1]).scale(&q2)).add(&e(&[2, 1, 1]));
    assert!(u.is_zero(&s));
    assert!(!u.is_zero(&e(&[1, 2, 1])));

    let u = uq("B2");
    let e = |w: &[u8]| word_in(u.datum(), w);
    let q3 = rs(quantum_integer(3, 2).unwrap());
    let s = e(&[1, 1, 1, 2])
        .sub(&e(&[1, 1, 2, 1]).scale(&q3))
        .add(&e(&[1, 2, 1, 1]).scale(&q3))
        .sub(&e(&[2, 1, 1, 1]));
    assert!(u.is_zero(&s));
    let q2 = rs(quantum_integer(2, 4).unwrap());
    let s = e(&[2, 2, 1]).sub(&e(&[2, 1, 2]).scale(&q2)).add(&e(&[1, 2, 2]));
    assert!(u.is_zero(&s));
}

#[test]
fn generator_pairing() {
    let u = uq("A2");
    let p = u.pairing_words(&Word::gen(1), &Word::gen(1));
    let expect = RatScalar::new(LaurentPoly::one(), LaurentPoly::one() - LaurentPoly::q_pow(-2)).unwrap();
    assert_eq!(p, expect);
    assert!(u.pairing_words(&Word::gen(1), &Word::gen(2)).is_zero());
    let u = uq("B2");
    let p = u.pairing_words(&Word::gen(2), &Word::gen(2));
    let expect = RatScalar::new(LaurentPoly::one(), LaurentPoly::one() - LaurentPoly::q_pow(-4)).unwrap();
    assert_eq!(p, expect);
}

#[test]
fn commutation_in_triangular_form() {
    let u = uq("A2");
    let lhs = u.tri_mul(&TriExpr::e(2, 1), &TriExpr::f(2, 1));
    let inv = RatScalar::new(LaurentPoly::one(), LaurentPoly::q_pow(1) - LaurentPoly::q_pow(-1)).unwrap();
    let rhs = u
        .tri_mul(&TriExpr::f(2, 1), &TriExpr::e(2, 1))
        .add(&TriExpr::k(vec![1, 0]).sub(&TriExpr::k(vec![-1, 0])).scale(&inv));
    assert!(u.tri_eq(&lhs, &rhs));
    let lhs = u.tri_mul(&TriExpr::k(vec![1, 0]), &TriExpr::e(2, 1));
    let rhs = u.tri_mul(&TriExpr::e(2, 1), &TriExpr::k(vec![1, 0])).scale(&RatScalar::q_pow(2));
    assert!(u.tri_eq(&lhs, &rhs));
    let lhs = u.tri_mul(&TriExpr::k(vec![1, 0]), &TriExpr::e(2, 2));
    let rhs = u.tri_mul(&TriExpr::e(2, 2), &TriExpr::k(vec![1, 0])).scale(&RatScalar::q_pow(-1));
    assert!(u.tri_eq(&lhs, &rhs));
}

#[test]
fn braid_image_of_generator() {
    let u = uq("A2");
    let t = braid_t(&u, 1, &TriExpr::e(2, 2));
    let x = u.project_uplus(&t).unwrap();
    let e = |w: &[u8]| word_in(u.datum(), w);
    let expect = e(&[1, 2]).sub(&e(&[2, 1]).scale(&RatScalar::q_pow(-1)));
    assert!(u.equals(&x, &expect), "{x}");
    let t = braid_t(&u, 1, &TriExpr::f(2, 2));
    let y = u.project_uminus(&t).unwrap();
    println!("T1(F2) = {}", y.render('F'));
}

#[test]
fn pbw_orthogonality_a2() {
    let u = Arc::new(uq("A2"));
    let w = ReducedWord::new(u.datum(), vec![1, 2, 1]).unwrap();
    let pbw = PbwBasis::new(u.clone(), w).unwrap();
    for k in 1..=3 {
        println!("E_b{k} = {}", pbw.root_vector(k).unwrap());
        println!("F_b{k} = {}", pbw.f_root_vector(k).unwrap().render('F'));
    }
    for mu in [vec![1, 1], vec![2, 1], vec![2, 2], vec![3, 2]] {
        let data = pbw.data_of_weight(&mu);
        for m in &data {
            let phi = pbw.monomial_phi_prime(m).unwrap();
            for n in &data {
                let v = pbw.probe(n).unwrap().apply(&phi);
                if m == n {
                    assert!(!v.is_zero());
                    println!("{m:?}: f_m = {}", pbw.dual_pbw_normalizer(m).unwrap());
                } else {
                    assert!(v.is_zero(), "({m:?},{n:?}) = {v}");
                }
            }
        }
    }
}

fn weights_up_to(rank: usize, h: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..rank {
        let mut next = Vec::new();
        for w in &out {
            let s: i64 = w.iter().sum();
            for k in 0..=(h - s) {
                let mut v = w.clone();
                v.push(k);
                next.push(v);
            }
        }
        out = next;
    }
    out.retain(|w| w.iter().sum::<i64>() > 0);
    out
}

fn check_biorthogonal(label: &str, word: Vec<usize>, h: i64) {
    let u = Arc::new(uq(label));
    let w = ReducedWord::new(u.datum(), word).unwrap();
    let pbw = PbwBasis::new(u.clone(), w).unwrap();
    for mu in weights_up_to(u.rank(), h) {
        let data = pbw.data_of_weight(&mu);
        for m in &data {
            let phi = pbw.monomial_phi_prime(m).unwrap();
            for n in &data {
                let v = pbw.probe(n).unwrap().apply(&phi);
                assert_eq!(v.is_zero(), m != n, "{label} {m:?} {n:?}");
            }
        }
    }
}

#[test]
fn biorthogonality_b2_a3() {
    let t = std::time::Instant::now();
    check_biorthogonal("B2", vec![1, 2, 1, 2], 5);
    check_biorthogonal("B2", vec![2, 1, 2, 1], 5);
    println!("B2 {:?}", t.elapsed());
    check_biorthogonal("A3", vec![1, 2, 1, 3, 2, 1], 4);
    check_biorthogonal("A3", vec![2, 1, 3, 2, 1, 3], 4);
    println!("A3 {:?}", t.elapsed());
}

fn arb_word(rank: usize) -> impl Strategy<Value = Vec<(usize, u32)>> {
    prop::collection::vec((1..=rank, 1u32..=2), 0..3)
}

fn arb_coeff() -> impl Strategy<Value = RatScalar> {
    (-2i64..=2, -2i64..=2).prop_filter("nonzero", |(c, _)| *c != 0).prop_map(|(c, e)| rs(LaurentPoly::monomial(c, e)))
}

fn arb_uplus(rank: usize) -> impl Strategy<Value = Vec<(Vec<(usize, u32)>, RatScalar)>> {
    prop::collection::vec((arb_word(rank), arb_coeff()), 1..3)
}

fn build(d: &CartanDatum, terms: &[(Vec<(usize, u32)>, RatScalar)]) -> UPlusExpr {
    let mut x = UPlusExpr::zero();
    for (runs, c) in terms {
        let (w, f) = Word::from_runs(d, runs);
        x.add_term(w, &(c * &rs(f)));
    }
    x
}

type TriTerm = (Vec<(usize, u32)>, Vec<i64>, Vec<(usize, u32)>, RatScalar);

fn arb_tri() -> impl Strategy<Value = Vec<TriTerm>> {
    let term = (
        prop::collection::vec((1usize..=2, 1u32..=1), 0..2),
        prop::collection::vec(-1i64..=1, 2),
        prop::collection::vec((1usize..=2, 1u32..=1), 0..2),
        arb_coeff(),
    );
    prop::collection::vec(term, 1..3)
}

fn build_tri(d: &CartanDatum, terms: &[TriTerm]) -> TriExpr {
    let mut x = TriExpr::zero();
    for (f, k, e, c) in terms {
        let (fw, ff) = Word::from_runs(d, f);
        let (ew, fe) = Word::from_runs(d, e);
        x = x.add(&TriExpr::term(fw, k.clone(), ew, &(c * &rs(ff)) * &rs(fe)));
    }
    x
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn sigma_eta_is_an_involution(t in arb_uplus(3)) {
        let u = uq("A3");
        let x = build(u.datum(), &t);
        prop_assert!(u.equals(&x.sigma_eta().sigma_eta(), &x));
        prop_assert!(u.equals(&x.sigma().sigma(), &x));
        prop_assert!(u.equals(&x.eta().eta(), &x));
    }

    #[test]
    fn tri_mul_is_associative(a in arb_tri(), b in arb_tri(), c in arb_tri()) {
        let u = uq("A2");
        let (x, y, z) = (build_tri(u.datum(), &a), build_tri(u.datum(), &b), build_tri(u.datum(), &c));
        let lhs = u.tri_mul(&u.tri_mul(&x, &y), &z);
        let rhs = u.tri_mul(&x, &u.tri_mul(&y, &z));
        prop_assert!(u.tri_eq(&lhs, &rhs));
    }

    /// `(x y, F_w)` by the letter recursion equals the shuffle of the pairing vectors.
    #[test]
    fn pairing_recursion_matches_coproduct(a in arb_uplus(2), b in arb_uplus(2)) {
        let u = uq("B2");
        let d = u.datum().clone();
        let (x, y) = (build(&d, &a), build(&d, &b));
        for mu in x.weights(2) {
            for nu in y.weights(2) {
                let (xm, yn) = (x.component(2, &mu), y.component(2, &nu));
                let sum: Vec<i64> = mu.iter().zip(&nu).map(|(p, q)| p + q).collect();
                let nf = |m: &[i64]| rs(u.norm_factor(m));
                let px: Vec<RatScalar> = u.phi(&xm, &mu).iter().map(|c| c * &nf(&mu)).collect();
                let py: Vec<RatScalar> = u.phi(&yn, &nu).iter().map(|c| c * &nf(&nu)).collect();
                let lcm = px.iter().chain(&py).fold(LaurentPoly::one(), |acc, c| &acc * c.den());
                let ix: Vec<LaurentPoly> = px.iter().map(|c| (c * &rs(lcm.clone())).into_laurent().unwrap()).collect();
                let iy: Vec<LaurentPoly> = py.iter().map(|c| (c * &rs(lcm.clone())).into_laurent().unwrap()).collect();
                let shuffled = u.shuffle(&mu, &ix, &nu, &iy);
                let prod = xm.mul(&d, &yn);
                let sp = u.space(&sum);
                for (i, w) in sp.words().iter().enumerate() {
                    let f: Vec<u8> = w.iter().rev().copied().collect();
                    let (fw, ff) = Word::from_letters(&d, &f);
                    let direct = &u.pairing_uplus(&prod, &UPlusExpr::term(fw, rs(ff))) * &nf(&sum);
                    let via = RatScalar::new(shuffled[i].clone(), &lcm * &lcm).unwrap();
                    prop_assert_eq!(direct, via, "word {:?}", w);
                }
            }
        }
    }
}
