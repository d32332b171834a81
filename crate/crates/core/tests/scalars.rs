use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use qflag::scalars::{LaurentPoly, RatScalar};

fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-5i64..=5, -4i64..=4), 0..5).prop_map(LaurentPoly::from_terms)
}

fn arb_scalar() -> impl Strategy<Value = RatScalar> {
    (arb_poly(), arb_poly()).prop_map(|(n, d)| {
        let d = if d.is_zero() { LaurentPoly::one() } else { d };
        RatScalar::new(n, d).unwrap()
    })
}

fn arb_qzq() -> impl Strategy<Value = RatScalar> {
    prop::collection::vec((1i64..=5, -4i64..=4), 0..4).prop_map(|t| RatScalar::from_poly(LaurentPoly::from_terms(t)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn bar_is_an_involution(s in arb_scalar()) {
        prop_assert_eq!(s.bar().bar(), s);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn laurent_ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!(a.terms().iter().all(|(_, c)| !c.is_zero()));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn rat_normal_form(s in arb_scalar(), t in arb_scalar()) {
        for x in [&s, &t, &(&s * &t), &(&s + &t)] {
            let d = x.den();
            prop_assert!(d.min_exp() == Some(0));
            prop_assert!(d.coeff(0) > BigInt::zero());
            if !x.is_zero() {
                prop_assert!(x.num().gcd(d).is_one());
            }
        }
        let lhs = &s * &t;
        let cross_l = lhs.num() * &(s.den() * t.den());
        let cross_r = &(s.num() * t.num()) * lhs.den();
        prop_assert_eq!(cross_l, cross_r);
    }

    #[test]
    fn bar_is_a_ring_map(s in arb_scalar(), t in arb_scalar()) {
        prop_assert_eq!((&s * &t).bar(), &s.bar() * &t.bar());
        prop_assert_eq!((&s + &t).bar(), &s.bar() + &t.bar());
    }

    #[test]
    fn eval_at_zero_is_multiplicative(s in arb_scalar(), t in arb_scalar()) {
        if let (Ok(a), Ok(b)) = (s.eval_at_zero(), t.eval_at_zero()) {
            prop_assert_eq!((&s * &t).eval_at_zero().unwrap(), a * b);
        }
    }

    #[test]
    fn qzq_is_closed(s in arb_qzq(), t in arb_qzq()) {
        prop_assert!(s.is_in_qzq() && t.is_in_qzq());
        prop_assert!((&s + &t).is_in_qzq());
        prop_assert!((&s * &t).is_in_qzq());
    }
}

#[test]
fn scalar_examples() {
    let p = LaurentPoly::from_terms([(2, 1), (0, 1)]);
    assert_eq!(p.bar(), LaurentPoly::from_terms([(-2, 1), (0, 1)]));
    let s = RatScalar::new(LaurentPoly::one(), LaurentPoly::from_terms([(0, 1), (-2, -1)])).unwrap();
    assert_eq!(s.to_string(), "(-q^2)/(1 - q^2)");
    assert!(s.eval_at_zero().unwrap().is_zero());
    assert!(RatScalar::q_pow(-1).eval_at_zero().is_err());
    assert!(RatScalar::new(LaurentPoly::one(), LaurentPoly::zero()).is_err());
}
