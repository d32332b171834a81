//! Acceptance gate: one pass/fail line per criterion. Criteria listed in
//! `KNOWN_RED` are reported as failures but do not fail the run; any other
//! failing criterion does.

#![allow(clippy::type_complexity)]

use std::sync::Arc;
use std::time::{Duration, Instant};

use qflag::canonical::DualCanonical;
use qflag::pbw::PbwBasis;
use qflag::qea::Uq;
use qflag::quiver::{all_adapted_words, Orientation};
use qflag::rootdata::{CartanDatum, ReducedWord};
use qflag::suites::{self, Setup, SuiteReport, Target};

/// Criteria that cannot hold under the stated axioms, with the reason.
const KNOWN_RED: &[(u32, &str)] = &[(
    3,
    "f_m(0) = 1 is unattainable: f_{e_1} = 1 - q^-2 has a pole at q = 0 under (E_i, F_j) = delta_ij / (1 - q_i^-2)",
)];

struct Outcome {
    pass: bool,
    summary: String,
}

type Res = qflag::Result<Outcome>;

fn datum(l: &str) -> CartanDatum {
    CartanDatum::from_label(l).unwrap()
}

fn word_setups(l: &str, words: &[&[usize]]) -> Vec<Setup> {
    let d = datum(l);
    words.iter().map(|w| Setup::new(&d, &Target::Word(w.to_vec())).unwrap()).collect()
}

fn oriented(l: &str) -> Vec<Setup> {
    let d = datum(l);
    Orientation::all(&d).unwrap().into_iter().map(|o| Setup::new(&d, &Target::Orientation(o)).unwrap()).collect()
}

/// The words of criterion 2: two reduced words of `w_0` per type, with heights.
fn tested_words() -> Vec<(Setup, i64)> {
    let mut v = Vec::new();
    for s in word_setups("A2", &[&[1, 2, 1], &[2, 1, 2]]) {
        v.push((s, 5));
    }
    for s in word_setups("B2", &[&[1, 2, 1, 2], &[2, 1, 2, 1]]) {
        v.push((s, 5));
    }
    for s in word_setups("A3", &[&[1, 2, 1, 3, 2, 1], &[2, 1, 3, 2, 1, 3]]) {
        v.push((s, 4));
    }
    v
}

fn tally(reports: &[SuiteReport]) -> Outcome {
    let checks: usize = reports.iter().map(|r| r.checks).sum();
    let violations: Vec<&String> = reports.iter().flat_map(|r| &r.violations).collect();
    let mut summary = format!("{} runs, {checks} checks, {} violations", reports.len(), violations.len());
    if let Some(v) = violations.first() {
        summary.push_str(&format!("; first: {v}"));
    }
    Outcome { pass: violations.is_empty() && checks > 0, summary }
}

fn c1() -> Res {
    Ok(tally(&["A2", "A3", "B2"].iter().map(|l| suites::serre(&datum(l), 4)).collect::<Vec<_>>()))
}

fn c2() -> Res {
    let r = tested_words().iter().map(|(s, h)| suites::pairing(s, *h)).collect::<qflag::Result<Vec<_>>>()?;
    Ok(tally(&r))
}

fn c3() -> Res {
    let (mut data, mut eigen, mut one) = (0, 0, 0);
    let mut first = None;
    for (s, h) in tested_words() {
        let r = suites::pairing(&s, h)?;
        let st = &r.details["normalizers"];
        data += st["data"].as_u64().unwrap();
        eigen += st["bar_eigen"].as_u64().unwrap();
        one += st["value_one_at_zero"].as_u64().unwrap();
        if first.is_none() && !st["first_failure_at_zero"].is_null() {
            first = Some(st["first_failure_at_zero"].to_string());
        }
    }
    let mut summary = format!("{data} data: bar-eigen {eigen}/{data}, f(0) = 1 {one}/{data}");
    if let Some(f) = first {
        summary.push_str(&format!("; first f(0) failure {f}"));
    }
    Ok(Outcome { pass: eigen == data && one == data, summary })
}

fn c4() -> Res {
    let r = tested_words().iter().map(|(s, _)| suites::prop21(s)).collect::<qflag::Result<Vec<_>>>()?;
    Ok(tally(&r))
}

fn c5() -> Res {
    let mut r = Vec::new();
    for (s, h) in tested_words().iter().filter(|(s, _)| s.datum.cartan_type().to_string() != "B2") {
        r.push(suites::cor22(s, *h)?);
    }
    for s in oriented("A2") {
        r.push(suites::cor22(&s, 5)?);
    }
    for s in oriented("A3") {
        r.push(suites::cor22(&s, 4)?);
    }
    Ok(tally(&r))
}

fn over_orientations(f: impl Fn(&Setup, i64) -> qflag::Result<SuiteReport>) -> Res {
    let mut r = Vec::new();
    for s in oriented("A2").iter().chain(&oriented("A3")) {
        r.push(f(s, 4)?);
    }
    Ok(tally(&r))
}

fn c6() -> Res {
    over_orientations(suites::prop31)
}

fn c7() -> Res {
    over_orientations(suites::prop32)
}

/// Every adapted word of every orientation, not only the canonical one.
fn c8() -> Res {
    let mut r = Vec::new();
    for l in ["A2", "A3", "D4"] {
        let d = datum(l);
        let uq = Arc::new(Uq::new(d.clone()));
        for o in Orientation::all(&d)? {
            for w in all_adapted_words(&d, &o) {
                let pbw = Arc::new(PbwBasis::new(uq.clone(), ReducedWord::new(&d, w)?)?);
                let s = Setup { datum: d.clone(), orientation: Some(o.clone()), basis: Arc::new(DualCanonical::new(pbw)) };
                r.push(suites::prop41(&s)?);
            }
        }
    }
    Ok(tally(&r))
}

fn c9() -> Res {
    over_orientations(suites::prop42)
}

fn c10() -> Res {
    let mut r = Vec::new();
    for s in oriented("A2") {
        r.push(suites::thm51(&s, 5, false)?);
    }
    for s in oriented("A3") {
        r.push(suites::thm51(&s, 4, false)?);
    }
    Ok(tally(&r))
}

fn c11() -> Res {
    let r = suites::claim43(&datum("A3"))?;
    let mut o = tally(std::slice::from_ref(&r));
    o.summary.push_str(&format!("; {}", r.details));
    Ok(o)
}

fn c12() -> Res {
    let r = suites::remark43(&datum("D4"), &[2, 1, 3, 2])?;
    let mut o = tally(std::slice::from_ref(&r));
    o.summary.push_str(&format!("; {}", r.details));
    Ok(o)
}

fn main() {
    let criteria: [(u32, &str, u64, fn() -> Res); 12] = [
        (1, "Serre elements and generator pairing axioms (A2, A3, B2)", 10, c1),
        (2, "PBW biorthogonality, two words per type", 120, c2),
        (3, "normalizers f_m: bar eigenvectors with f_m(0) = 1", 120, c3),
        (4, "dual PBW root vectors are dual canonical", 60, c4),
        (5, "unitriangularity over rlex in qZ[q], Ext-order support", 300, c5),
        (6, "prefix q-commutation exponents", 300, c6),
        (7, "flag minor congruence and d-form identities", 300, c7),
        (8, "d on indecomposables via Hom/Ext, all adapted words of A2, A3, D4", 30, c8),
        (9, "flag datum pairing and monotonicity along Ext order", 300, c9),
        (10, "multiplicativity scan, A2 at H = 5, A3 at H = 4", 900, c10),
        (11, "type A flag minors are adapted flag minors", 300, c11),
        (12, "D4 flag minor of s2 s1 s3 s2 is not adapted", 600, c12),
    ];
    let mut unexpected = 0;
    let mut passed = 0;
    for (n, name, budget, f) in criteria {
        let t = Instant::now();
        let out = f();
        let dt = t.elapsed();
        let (pass, summary) = match out {
            Ok(o) => (o.pass, o.summary),
            Err(e) => (false, format!("error: {e}")),
        };
        let in_time = dt <= Duration::from_secs(budget);
        let ok = pass && in_time;
        passed += usize::from(ok);
        let known = KNOWN_RED.iter().find(|(k, _)| *k == n);
        println!(
            "criterion {n:>2}: {} {name} [{:.2}s / {budget}s] {summary}",
            if ok { "PASS" } else { "FAIL" },
            dt.as_secs_f64()
        );
        match (ok, known) {
            (false, Some((_, why))) => println!("              known red: {why}"),
            (false, None) => unexpected += 1,
            (true, Some(_)) => println!("              listed as known red but passed"),
            (true, None) => {}
        }
    }
    println!("acceptance: {passed}/12 criteria pass, {unexpected} unexpected failures");
    if unexpected > 0 {
        std::process::exit(1);
    }
}
