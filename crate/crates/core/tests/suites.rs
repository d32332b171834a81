use qflag::quiver::Orientation;
use qflag::rootdata::CartanDatum;
use qflag::suites::{self, Setup, SuiteReport, Target};

fn datum(l: &str) -> CartanDatum {
    CartanDatum::from_label(l).unwrap()
}

fn show(r: &SuiteReport) {
    println!(
        "{} {} {:?} {:?}: {} checks, {} violations {:?}",
        r.suite,
        r.cartan_type,
        r.word,
        r.orientation,
        r.checks,
        r.violations.len(),
        r.violations.iter().take(3).collect::<Vec<_>>()
    );
}

fn orientations(l: &str) -> Vec<Setup> {
    let d = datum(l);
    Orientation::all(&d).unwrap().into_iter().map(|o| Setup::new(&d, &Target::Orientation(o)).unwrap()).collect()
}

#[test]
fn serre_suite() {
    for l in ["A2", "A3", "B2"] {
        let r = suites::serre(&datum(l), 4);
        show(&r);
        assert!(r.passed());
    }
}

#[test]
fn word_suites() {
    for (l, w, h) in [("A2", vec![1, 2, 1], 5), ("B2", vec![1, 2, 1, 2], 4), ("A3", vec![1, 2, 1, 3, 2, 1], 3)] {
        let s = Setup::new(&datum(l), &Target::Word(w)).unwrap();
        for r in [suites::pairing(&s, h).unwrap(), suites::prop21(&s).unwrap(), suites::cor22(&s, h).unwrap()] {
            show(&r);
            assert!(r.passed());
        }
    }
}

#[test]
fn prefix_suites() {
    for (l, h) in [("A2", 4), ("A3", 3)] {
        for s in orientations(l) {
            for r in [suites::prop31(&s, h).unwrap(), suites::prop32(&s, h).unwrap(), suites::cor22(&s, h).unwrap()] {
                show(&r);
                assert!(r.passed());
            }
        }
    }
}

#[test]
fn quiver_suites() {
    for s in orientations("A3") {
        for r in [suites::prop41(&s).unwrap(), suites::prop42(&s, 3).unwrap()] {
            show(&r);
            assert!(r.passed());
        }
    }
}

#[test]
fn flag_minor_suites() {
    let r = suites::claim43(&datum("A3")).unwrap();
    show(&r);
    println!("{}", r.details);
    assert!(r.passed());
    let r = suites::remark43(&datum("D4"), &[2, 1, 3, 2]).unwrap();
    show(&r);
    println!("{}", r.details);
}
