//! Verification suites, one per identity: each returns a report with the number
//! of checks performed, the violations found and suite-specific details.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::One;
use serde::Serialize;
use serde_json::{json, Value};

use crate::canonical::{multiply, DualCanonical, PhiElement};
use crate::error::{Error, Result};
use crate::multiplicativity::{q_commute_exponent_phi, verify_theorem_51};
use crate::pbw::{rlex_less, signed_monomial, PbwBasis};
use crate::qea::{TriExpr, UPlusExpr, Uq, Word};
use crate::quiver::{all_adapted_words, check_d_identity, check_monotone, Orientation, QuiverData};
use crate::rootdata::{render_vec, weights_up_to, CartanDatum, CartanType, ReducedWord};
use crate::scalars::{LaurentPoly, RatScalar};

pub const SUITES: &[&str] =
    &["serre", "pairing", "prop21", "cor22", "prop31", "prop32", "prop41", "prop42", "thm51", "remark43", "claim43"];

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    #[serde(rename = "type")]
    pub cartan_type: String,
    pub word: Option<Vec<usize>>,
    pub orientation: Option<String>,
    pub height: Option<i64>,
    pub checks: usize,
    pub violations: Vec<String>,
    pub details: Value,
}

impl SuiteReport {
    fn new(suite: &str, datum: &CartanDatum) -> Self {
        SuiteReport {
            suite: suite.into(),
            cartan_type: datum.cartan_type().to_string(),
            word: None,
            orientation: None,
            height: None,
            checks: 0,
            violations: Vec::new(),
            details: Value::Null,
        }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.violations.push(msg());
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Which word a suite runs on.
#[derive(Clone, Debug)]
pub enum Target {
    Word(Vec<usize>),
    Orientation(Orientation),
}

/// Everything a suite needs: the datum, a word of `w_0` and, for adapted words,
/// the orientation.
pub struct Setup {
    pub datum: CartanDatum,
    pub orientation: Option<Orientation>,
    pub basis: Arc<DualCanonical>,
}

impl Setup {
    pub fn new(datum: &CartanDatum, target: &Target) -> Result<Self> {
        let uq = Arc::new(Uq::new(datum.clone()));
        let (word, orientation) = match target {
            Target::Word(w) => (ReducedWord::new(datum, w.clone())?, None),
            Target::Orientation(o) => (crate::quiver::adapted_word(datum, o)?, Some(o.clone())),
        };
        let pbw = Arc::new(PbwBasis::new(uq, word)?);
        Ok(Setup { datum: datum.clone(), orientation, basis: Arc::new(DualCanonical::new(pbw)) })
    }

    pub fn pbw(&self) -> &Arc<PbwBasis> {
        self.basis.pbw()
    }

    fn report(&self, suite: &str, height: Option<i64>) -> SuiteReport {
        let mut r = SuiteReport::new(suite, &self.datum);
        r.word = Some(self.pbw().word().word().to_vec());
        r.orientation = self.orientation.as_ref().map(|o| o.to_string());
        r.height = height;
        r
    }

    fn quiver(&self) -> Result<QuiverData> {
        let o = self.orientation.as_ref().ok_or_else(|| Error::InvalidArgument("suite needs an orientation".into()))?;
        QuiverData::new(&self.datum, o, self.pbw().word().clone())
    }
}

fn data_up_to(pbw: &PbwBasis, h: i64) -> Vec<Vec<i64>> {
    weights_up_to(pbw.uq().rank(), h).iter().flat_map(|mu| pbw.data_of_weight(mu)).collect()
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn divided(i: usize, k: u32) -> UPlusExpr {
    if k == 0 {
        UPlusExpr::one()
    } else {
        UPlusExpr::term(Word::divided(i, k), RatScalar::one())
    }
}

/// The quantum Serre element for `i != j`.
pub fn serre_element(datum: &CartanDatum, i: usize, j: usize) -> UPlusExpr {
    let n = (1 - datum.cartan(i, j)) as u32;
    let mut out = UPlusExpr::zero();
    for s in 0..=n {
        let t = divided(i, n - s).mul(datum, &UPlusExpr::gen(j)).mul(datum, &divided(i, s));
        out = if s % 2 == 0 { out.add(&t) } else { out.sub(&t) };
    }
    out
}

/// Serre elements vanish, the generator pairing axioms hold, and the shuffle
/// form of the pairing agrees with the coproduct recursion up to height `h`.
pub fn serre(datum: &CartanDatum, h: i64) -> SuiteReport {
    let uq = Uq::new(datum.clone());
    let n = datum.rank();
    let mut r = SuiteReport::new("serre", datum);
    r.height = Some(h);
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            let s = serre_element(datum, i, j);
            r.check(uq.is_zero(&s), || format!("Serre element ({i}, {j}) does not vanish"));
            if datum.cartan(i, j) != 0 {
                let x = UPlusExpr::gen(i).mul(datum, &UPlusExpr::gen(j));
                r.check(!uq.is_zero(&x), || format!("E{i}E{j} vanishes"));
            }
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            let p = uq.pairing_words(&Word::gen(i), &Word::gen(j));
            let expect = if i == j {
                RatScalar::new(LaurentPoly::one(), LaurentPoly::one() - LaurentPoly::q_pow(-2 * datum.d(i))).expect("nonzero")
            } else {
                RatScalar::zero()
            };
            r.check(p == expect, || format!("(E{i}, F{j}) = {p}, expected {expect}"));
            let mut l = vec![0; n];
            l[j - 1] = 1;
            let zero_kf = uq.pairing(&TriExpr::k(l.clone()), &TriExpr::f(n, i)).map(|v| v.is_zero()).unwrap_or(false);
            r.check(zero_kf, || format!("(K, F{i}) does not vanish"));
            let zero_ek = uq.pairing(&TriExpr::e(n, i), &TriExpr::k(l.clone())).map(|v| v.is_zero()).unwrap_or(false);
            r.check(zero_ek, || format!("(E{i}, K) does not vanish"));
            let mut m = vec![0; n];
            m[i - 1] = 1;
            let kk = uq.pairing(&TriExpr::k(l.clone()), &TriExpr::k(m.clone())).ok();
            let expect = RatScalar::q_pow(-datum.form_roots(&l, &m));
            r.check(kk.as_ref() == Some(&expect), || format!("(K_{j}, K_{i}) = {kk:?}"));
        }
    }
    for mu in weights_up_to(n, h) {
        let sp = uq.space(&mu);
        for a in sp.words() {
            let (w, c) = Word::from_letters(datum, a);
            let col = uq.phi_prime_word(&w);
            for (bi, b) in sp.words().iter().enumerate() {
                let rev: Vec<u8> = b.iter().rev().copied().collect();
                let rec = uq.pair_plain(a, &rev);
                let sh = &col[bi] * &c;
                r.check(rec == sh, || format!("pairing recursion and shuffle differ at ({a:?}, {b:?})"));
            }
        }
    }
    r
}

/// Claim on `f_m`: bar-eigen (`bar f = +-q^a f`) and value 1 at `q = 0`.
#[derive(Clone, Debug, Default, Serialize)]
pub struct NormalizerStats {
    pub data: usize,
    pub bar_eigen: usize,
    pub value_one_at_zero: usize,
    pub first_failure_at_zero: Option<(String, String)>,
}

/// PBW biorthogonality `(E(m), F(n)) = 0` for `m != n` and nonzero for `m = n`,
/// for all data of height at most `h`, with the statistics of `f_m`.
pub fn pairing(s: &Setup, h: i64) -> Result<SuiteReport> {
    let pbw = s.pbw();
    let mut r = s.report("pairing", Some(h));
    let mut st = NormalizerStats::default();
    for mu in weights_up_to(s.datum.rank(), h) {
        let data = pbw.data_of_weight(&mu);
        for m in &data {
            let phi = pbw.monomial_phi_prime(m)?;
            for n in &data {
                let v = pbw.probe(n)?.apply(&phi);
                r.check(v.is_zero() == (m != n), || format!("(E({}), F({})) = {v}", render_vec(m), render_vec(n)));
            }
            let f = pbw.dual_pbw_normalizer(m)?;
            st.data += 1;
            let eigen = signed_monomial(&(&f.bar() * &f.inv()?)).is_some();
            r.check(eigen, || format!("f_{} = {f} is not a bar eigenvector", render_vec(m)));
            st.bar_eigen += usize::from(eigen);
            let at0 = f.eval_at_zero();
            if matches!(&at0, Ok(v) if v.is_one()) {
                st.value_one_at_zero += 1;
            } else if st.first_failure_at_zero.is_none() {
                let v = at0.map(|v| v.to_string()).unwrap_or_else(|e| e.to_string());
                st.first_failure_at_zero = Some((format!("f_{} = {f}", render_vec(m)), v));
            }
        }
    }
    r.details = json!({ "normalizers": st });
    Ok(r)
}

/// Dual PBW root vectors are dual canonical: `B(e_k)* = E(e_k)*`.
pub fn prop21(s: &Setup) -> Result<SuiteReport> {
    let mut r = s.report("prop21", None);
    let n = s.pbw().len();
    for k in 1..=n {
        let e = crate::pbw::unit_datum(n, k);
        let b = s.basis.element(&e)?;
        let d = s.basis.dual_pbw_element(&e)?;
        r.check(b == d, || format!("B(e_{k})* differs from E(e_{k})*"));
    }
    Ok(r)
}

/// Unitriangularity of `B*` in the dual PBW basis over right-lex with
/// off-diagonal coefficients in `qZ[q]`; for adapted words also support on the Ext order.
pub fn cor22(s: &Setup, h: i64) -> Result<SuiteReport> {
    let pbw = s.pbw();
    let mut r = s.report("cor22", Some(h));
    let ext = s.orientation.is_some();
    let mut offdiag = 0usize;
    for mu in weights_up_to(s.datum.rank(), h) {
        let order = if ext { Some(pbw.ext_order(&mu)?) } else { None };
        for n in pbw.data_of_weight(&mu) {
            for (m, c) in s.basis.dual_pbw_expansion(&n)? {
                if m == n {
                    r.check(c.is_one(), || format!("diagonal coefficient at {} is {c}", render_vec(&n)));
                    continue;
                }
                offdiag += 1;
                let (rm, rn) = (render_vec(&m), render_vec(&n));
                r.check(rlex_less(&m, &n), || format!("coefficient of E({rm})* in B({rn})* is not right-lex below"));
                r.check(c.is_in_qzq(), || format!("coefficient {c} of E({rm})* in B({rn})* is not in qZ[q]"));
                if let Some(o) = &order {
                    r.check(o.leq(&m, &n), || format!("E({rm})* in B({rn})* is not below in the Ext order"));
                }
            }
        }
    }
    r.details = json!({ "off_diagonal_terms": offdiag, "ext_order_checked": ext });
    Ok(r)
}

/// `<(Id + w) varpi_{i_k}, mu>` for the prefix of length `k`.
pub fn prefix_exponent(datum: &CartanDatum, word: &ReducedWord, k: usize, mu: &[i64]) -> i64 {
    let i = word.letter(k);
    let nu = datum.minor_weight(&word.word()[..k], i);
    2 * datum.form_with_fundamental(mu, i) - datum.form_roots(&nu, mu)
}

/// q-commutation of each prefix flag minor with every `B(m)*` supported on the
/// prefix, with exponent `<(Id + w) varpi_{i_k}, mu>`.
pub fn prop31(s: &Setup, h: i64) -> Result<SuiteReport> {
    let pbw = s.pbw();
    let word = pbw.word();
    let uq = pbw.uq();
    let mut r = s.report("prop31", Some(h));
    let data = data_up_to(pbw, h);
    for k in 1..=word.len() {
        let (nk, delta) = s.basis.flag_minor(k)?;
        for m in data.iter().filter(|m| crate::canonical::demazure_flag(m, k)) {
            let mu = pbw.weight_of(m);
            let x = s.basis.element(m)?;
            let got = q_commute_exponent_phi(uq, &delta, &x);
            let want = prefix_exponent(&s.datum, word, k, &mu);
            r.check(got == Some(want), || {
                format!("k={k} n={} m={}: exponent {got:?}, expected {want}", render_vec(&nk), render_vec(m))
            });
        }
    }
    Ok(r)
}

/// The exponent `n` with `q^n Delta* E(m)* = E(n_w + m)*` mod `qL*`: `-d(m, n_w)`.
pub fn prop32_exponent(pbw: &PbwBasis, nw: &[i64], m: &[i64]) -> i64 {
    -pbw.d_form(m, nw)
}

/// Coefficient of `E(m + n)` in `E(m) E(n)`.
fn leading_coefficient(pbw: &PbwBasis, m: &[i64], n: &[i64]) -> Result<RatScalar> {
    let uq = pbw.uq();
    let (mu, nu) = (pbw.weight_of(m), pbw.weight_of(n));
    let x = uq.shuffle(&mu, &pbw.monomial_phi_prime(m)?, &nu, &pbw.monomial_phi_prime(n)?);
    let sum = add(m, n);
    let nf = RatScalar::from_poly(uq.norm_factor(&add(&mu, &nu)));
    let v = pbw.probe(&sum)?.apply(&x);
    Ok(&(&v * &nf.inv()?) * &pbw.dual_pbw_normalizer(&sum)?)
}

/// The congruence for flag minors against dual PBW elements, and the forms `d`, `c`
/// measured on actual PBW products.
pub fn prop32(s: &Setup, h: i64) -> Result<SuiteReport> {
    let pbw = s.pbw();
    let uq = pbw.uq();
    let word = pbw.word();
    let mut r = s.report("prop32", Some(h));
    let data = data_up_to(pbw, h);
    for k in 1..=word.len() {
        let (nk, delta) = s.basis.flag_minor(k)?;
        let nu = pbw.weight_of(&nk);
        for m in &data {
            let mu = pbw.weight_of(m);
            let (rn, rm) = (render_vec(&nk), render_vec(m));
            let e = prop32_exponent(pbw, &nk, m);
            let prod = multiply(uq, &delta, &s.basis.dual_pbw_element(m)?).scale(&LaurentPoly::q_pow(e));
            let target = s.basis.dual_pbw_element(&add(&nk, m))?;
            r.check(s.basis.congruent_mod_ql(&prod, &target)?, || format!("k={k} n={rn} m={rm}: congruence fails"));

            let (dnm, dmn) = (pbw.d_form(&nk, m), pbw.d_form(m, &nk));
            r.check(dnm + dmn == s.datum.form_roots(&nu, &mu), || format!("d({rn},{rm}) + d({rm},{rn}) != <nu, mu>"));
            let a = leading_coefficient(pbw, &nk, m)?;
            let b = leading_coefficient(pbw, m, &nk)?;
            let ca = signed_monomial(&a);
            r.check(
                matches!(ca, Some((_, x)) if x == -dnm) || (a.shift(dnm) - RatScalar::one()).is_in_qzq() || (a.shift(dnm) + RatScalar::one()).is_in_qzq(),
                || format!("leading coefficient of E({rn})E({rm}) is {a}, not q^-{dnm}(+-1 + qZ[q])"),
            );
            let ratio = signed_monomial(&(&a * &b.inv()?));
            r.check(matches!(ratio, Some((_, c)) if c == dmn - dnm), || {
                format!("graded commutation of E({rn}), E({rm}) has ratio {ratio:?}, expected c = {}", dmn - dnm)
            });
        }
    }
    Ok(r)
}

/// `d(iota M, iota N) = epsilon(N, M) - zeta(M, N)` for all indecomposables.
pub fn prop41(s: &Setup) -> Result<SuiteReport> {
    let q = s.quiver()?;
    let pbw = s.pbw();
    let mut r = s.report("prop41", None);
    let f = check_d_identity(&q, |m, n| pbw.d_form(m, n));
    r.checks = q.len() * q.len();
    r.violations = f.iter().map(|f| format!("d({}, {}) = {}, expected {}", render_vec(&f.m), render_vec(&f.n), f.lhs, f.rhs)).collect();
    Ok(r)
}

/// `d(n_w, .) = epsilon(., M_k)` and monotone along the Ext order, all prefixes.
pub fn prop42(s: &Setup, h: i64) -> Result<SuiteReport> {
    let q = s.quiver()?;
    let pbw = s.pbw();
    let mut r = s.report("prop42", Some(h));
    let data = data_up_to(pbw, h).len();
    for k in 1..=q.len() {
        let f = check_monotone(&q, pbw, k, h)?;
        r.checks += data;
        r.violations.extend(f.iter().map(|f| format!("k={k}: ({}, {}) gives {} vs {}", render_vec(&f.m), render_vec(&f.n), f.lhs, f.rhs)));
    }
    Ok(r)
}

/// The pair scan of the multiplicativity theorem.
pub fn thm51(s: &Setup, h: i64, exploratory: bool) -> Result<SuiteReport> {
    let mut r = s.report("thm51", Some(h));
    let mut rep = verify_theorem_51(s.basis.clone(), h, exploratory)?;
    rep.orientation = r.orientation.clone();
    r.checks = rep.pairs_scanned;
    r.violations = rep.violations.iter().map(|v| format!("({}, {}): {}", v.m, v.m_prime, v.reason)).collect();
    r.details = serde_json::to_value(&rep).expect("serializable report");
    Ok(r)
}

/// A flag minor as `(letter i_k, weight)`, with its element.
struct Minor {
    letter: usize,
    weight: Vec<i64>,
    word: Vec<usize>,
    element: PhiElement,
}

/// Flag minors of all prefixes of the given words of `w_0`, one per `(i_k, weight)`,
/// optionally only of one weight. A second prefix with the same key is checked
/// to give the same element.
fn minors_of_words(
    datum: &CartanDatum,
    words: &[Vec<usize>],
    only: Option<&[i64]>,
    r: &mut SuiteReport,
) -> Result<BTreeMap<(usize, Vec<i64>), Minor>> {
    let uq = Arc::new(Uq::new(datum.clone()));
    let mut out: BTreeMap<(usize, Vec<i64>), Minor> = BTreeMap::new();
    let mut confirmed = BTreeSet::new();
    for w in words {
        let dc = DualCanonical::new(Arc::new(PbwBasis::new(uq.clone(), ReducedWord::new(datum, w.clone())?)?));
        for k in 1..=w.len() {
            let letter = w[k - 1];
            let weight = datum.minor_weight(&w[..k], letter);
            if only.is_some_and(|o| o != weight.as_slice()) {
                continue;
            }
            let key = (letter, weight.clone());
            if confirmed.contains(&key) {
                continue;
            }
            let (_, element) = dc.flag_minor(k)?;
            match out.get(&key) {
                Some(prev) if prev.word.len() == k && prev.word.as_slice() == &w[..k] => {}
                Some(prev) => {
                    r.check(prev.element == element, || {
                        format!("flag minors of {:?} and {:?} with equal weight differ", prev.word, &w[..k])
                    });
                    confirmed.insert(key);
                }
                None => {
                    out.insert(key, Minor { letter, weight, word: w[..k].to_vec(), element });
                }
            }
        }
    }
    Ok(out)
}

fn adapted_minors(
    datum: &CartanDatum,
    only: Option<&[i64]>,
    r: &mut SuiteReport,
) -> Result<BTreeMap<(usize, Vec<i64>), Minor>> {
    let mut words = BTreeSet::new();
    for o in Orientation::all(datum)? {
        words.extend(all_adapted_words(datum, &o));
    }
    let words: Vec<Vec<usize>> = words.into_iter().collect();
    minors_of_words(datum, &words, only, r)
}

/// Type A: every flag minor of every word of `w_0` equals, as an element, a
/// flag minor of some orientation-adapted word.
pub fn claim43(datum: &CartanDatum) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("claim43", datum);
    if !matches!(datum.cartan_type(), CartanType::A(_)) {
        return Err(Error::InvalidArgument("claim43 applies to type A".into()));
    }
    let adapted = adapted_minors(datum, None, &mut r)?;
    let all = minors_of_words(datum, &datum.all_longest_words(), None, &mut r)?;
    let mut matched = 0;
    for (key, m) in &all {
        let hit = adapted.values().any(|a| a.element.weight == m.element.weight && a.element == m.element);
        matched += usize::from(hit);
        r.check(hit, || format!("flag minor of {:?} (letter {}, weight {}) is not adapted", m.word, key.0, render_vec(&key.1)));
    }
    r.details = json!({ "words": datum.all_longest_words().len(), "distinct_minors": all.len(), "adapted_minors": adapted.len(), "matched": matched });
    Ok(r)
}

/// The flag minor of a given prefix against every flag minor of every adapted word.
/// A violation means the minor is realized by some orientation.
pub fn remark43(datum: &CartanDatum, prefix: &[usize]) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("remark43", datum);
    let word = datum
        .all_longest_words()
        .into_iter()
        .find(|w| w.starts_with(prefix))
        .ok_or_else(|| Error::InvalidArgument(format!("{prefix:?} does not start a reduced word of w_0")))?;
    let uq = Arc::new(Uq::new(datum.clone()));
    let dc = DualCanonical::new(Arc::new(PbwBasis::new(uq, ReducedWord::new(datum, word.clone())?)?));
    let (datum_n, target) = dc.flag_minor(prefix.len())?;
    let mut keys = BTreeSet::new();
    for o in Orientation::all(datum)? {
        for w in all_adapted_words(datum, &o) {
            keys.extend((1..=w.len()).map(|k| (w[k - 1], datum.minor_weight(&w[..k], w[k - 1]))));
        }
    }
    let adapted = adapted_minors(datum, Some(&target.weight), &mut r)?;
    for key in keys.iter().filter(|k| k.1 != target.weight) {
        r.check(true, || format!("flag minor ({}, {}) has a different weight", key.0, render_vec(&key.1)));
    }
    let mut same_weight = Vec::new();
    for a in adapted.values() {
        same_weight.push(json!({ "word": a.word, "letter": a.letter, "weight": a.weight }));
        r.check(a.element != target, || format!("flag minor of {prefix:?} is realized by the adapted prefix {:?}", a.word));
    }
    r.details = json!({
        "prefix": prefix,
        "completion": word,
        "datum": datum_n,
        "weight": target.weight,
        "distinct_adapted_minors": keys.len(),
        "same_weight_candidates": same_weight,
    });
    r.word = Some(prefix.to_vec());
    Ok(r)
}
