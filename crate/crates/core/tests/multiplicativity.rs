use std::sync::Arc;

use qflag::canonical::DualCanonical;
use qflag::multiplicativity::{
    adapted_monomials, all_data, congruence_exponent, q_commute_exponent, verify_theorem_51_orientation, Multiplicative, Scanner,
};
use qflag::pbw::PbwBasis;
use qflag::qea::{UPlusExpr, Uq};
use qflag::quiver::{adapted_word, type_a_flag_word, Orientation};
use qflag::rootdata::{CartanDatum, ReducedWord};

fn scanner(label: &str, word: Vec<usize>) -> Scanner {
    let uq = Arc::new(Uq::new(CartanDatum::from_label(label).unwrap()));
    let w = ReducedWord::new(uq.datum(), word).unwrap();
    Scanner::new(Arc::new(DualCanonical::new(Arc::new(PbwBasis::new(uq, w).unwrap()))))
}

#[test]
fn q_commute_examples() {
    let s = scanner("A2", vec![1, 2, 1]);
    let dc = s.basis().clone();
    let (flag, _) = dc.flag_minor(3).unwrap();
    let e1 = vec![1, 0, 0];
    let e2 = vec![0, 0, 1];
    assert_eq!(s.q_commute(&e1, &e1).unwrap(), Some(0));
    assert_eq!(s.q_commute(&flag, &e1).unwrap(), Some(1));
    assert_eq!(s.q_commute(&e1, &e2).unwrap(), None);

    let uq = dc.uq();
    let x = dc.element_expr(&flag).unwrap();
    let y = dc.element_expr(&e1).unwrap();
    assert_eq!(q_commute_exponent(uq, &x, &y), Some(1));
    assert_eq!(q_commute_exponent(uq, &UPlusExpr::gen(1), &UPlusExpr::gen(2)), None);
}

#[test]
fn multiplicative_examples() {
    let s = scanner("A2", vec![1, 2, 1]);
    let dc = s.basis().clone();
    let (f1, _) = dc.flag_minor(1).unwrap();
    let (f3, _) = dc.flag_minor(3).unwrap();
    let r = s.is_multiplicative(&f1, &f3).unwrap().unwrap();
    let sum: Vec<i64> = f1.iter().zip(&f3).map(|(a, b)| a + b).collect();
    assert_eq!(r.datum, sum);
    assert_eq!(r.power, congruence_exponent(dc.pbw(), &f1, &f3));
    assert!(s.is_multiplicative(&[1, 0, 0], &[0, 0, 1]).unwrap().is_none());
    assert_eq!(
        s.is_multiplicative(&[1, 0, 0], &[1, 0, 0]).unwrap(),
        Some(Multiplicative { power: -1, datum: vec![2, 0, 0] })
    );
    assert!(s.check_511(&[1, 0, 0], &[1, 0, 0]).unwrap());
    assert!(s.check_511(&f1, &[0, 0, 1]).unwrap());
}

#[test]
fn multiplicative_agrees_with_full_expansion() {
    let s = scanner("A2", vec![1, 2, 1]);
    let data = all_data(s.basis().pbw(), 3);
    for (i, a) in data.iter().enumerate() {
        for b in &data[i..] {
            let single = s.is_multiplicative(a, b).unwrap();
            let full = s.expand_product(a, b).unwrap();
            let full_single = (full.len() == 1).then(|| full[0].clone()).and_then(|(m, c)| {
                let (one, e) = c.as_laurent()?.as_monomial()?;
                (*one == 1.into()).then_some(Multiplicative { power: -e, datum: m })
            });
            assert_eq!(single, full_single, "{a:?} {b:?}");
            if single.is_some() {
                assert!(s.q_commute(a, b).unwrap().is_some());
            }
        }
    }
}

#[test]
fn adapted_monomial_examples() {
    let s = scanner("A2", vec![1, 2, 1]);
    let pbw = s.basis().pbw();
    assert_eq!(adapted_monomials(pbw, 0), vec![vec![0, 0, 0]]);
    assert!(adapted_monomials(pbw, 1).contains(&vec![1, 0, 0]));
    assert!(adapted_monomials(pbw, 3).contains(&vec![2, 0, 1]));
}

#[test]
fn theorem_51_small() {
    let d = CartanDatum::from_label("A2").unwrap();
    for o in Orientation::all(&d).unwrap() {
        let r = verify_theorem_51_orientation(&d, &o, 5, true).unwrap();
        assert!(r.pairs_scanned > 0 && r.q_commuting > 0 && r.multiplicative > 0);
        assert!(r.multiplicative <= r.q_commuting && r.q_commuting <= r.pairs_scanned);
        assert!(r.violations.is_empty(), "{:?}", r.violations);
    }
}

#[test]
fn flag_minors_commute_and_multiply() {
    for l in ["A2", "A3"] {
        let d = CartanDatum::from_label(l).unwrap();
        for o in Orientation::all(&d).unwrap() {
            let s = scanner(l, adapted_word(&d, &o).unwrap().word().to_vec());
            let dc = s.basis().clone();
            let flags: Vec<Vec<i64>> = (1..=dc.pbw().word().len()).map(|k| dc.flag_minor(k).unwrap().0).collect();
            for a in &flags {
                for b in &flags {
                    assert!(s.q_commute(a, b).unwrap().is_some(), "{l} {o} {a:?} {b:?}");
                    let sum: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                    let r = s.is_multiplicative(a, b).unwrap();
                    assert_eq!(r, Some(Multiplicative { power: congruence_exponent(dc.pbw(), a, b), datum: sum }), "{l} {o} {a:?} {b:?}");
                }
            }
        }
    }
}

/// Type A flag minors are multiplicative with every dual canonical element they
/// q-commute with.
#[test]
fn type_a_flag_minor_multiplicativity() {
    let d = CartanDatum::from_label("A3").unwrap();
    let mut seen = Vec::new();
    for rows in [vec![1], vec![2], vec![3], vec![4], vec![1, 3], vec![2, 3], vec![2, 4], vec![1, 4], vec![1, 2, 4], vec![2, 3, 4]] {
        let f = type_a_flag_word(&d, &rows).unwrap();
        let (_, word) = f.completion.unwrap_or_else(|| panic!("{rows:?} has no adapted completion"));
        let s = scanner("A3", word.clone());
        let (flag, _) = s.basis().flag_minor(f.prefix.len().max(1)).unwrap();
        if f.prefix.is_empty() || seen.contains(&(word.clone(), flag.clone())) {
            continue;
        }
        seen.push((word.clone(), flag.clone()));
        for b in all_data(s.basis().pbw(), 3) {
            if s.q_commute(&flag, &b).unwrap().is_some() {
                assert!(s.is_multiplicative(&flag, &b).unwrap().is_some(), "{rows:?} {word:?} {b:?}");
            }
        }
    }
    assert!(seen.len() >= 5);
}
