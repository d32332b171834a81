//! q-commutation and multiplicativity on the dual canonical basis, monomials in
//! the flag minors of an adapted word, and the scan over pairs behind the
//! multiplicativity theorem.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::canonical::{multiply, multiply_both, DualCanonical, PhiElement};
use crate::error::Result;
use crate::pbw::PbwBasis;
use crate::qea::{UPlusExpr, Uq};
use crate::quiver::{adapted_word, flag_datum, Orientation};
use crate::rootdata::{render_vec, weights_up_to, CartanDatum};
use crate::scalars::{LaurentPoly, RatScalar};

const PRIME: u64 = (1 << 61) - 1;
const POINT: u64 = 1_000_003;

fn mul_mod(a: u64, b: u64) -> u64 {
    (a as u128 * b as u128 % PRIME as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b);
        }
        b = mul_mod(b, b);
        e >>= 1;
    }
    r
}

fn point_pow(e: i64) -> u64 {
    if e >= 0 {
        pow_mod(POINT, e as u64)
    } else {
        pow_mod(pow_mod(POINT, PRIME - 2), e.unsigned_abs())
    }
}

/// `m` with `xy = q^m yx`, from the pairing vectors of both products.
fn exponent_from(xy: &[LaurentPoly], yx: &[LaurentPoly]) -> Option<i64> {
    let i = yx.iter().position(|p| !p.is_zero())?;
    let r = xy[i].div_exact(&yx[i])?;
    let (c, m) = r.as_monomial()?;
    if *c != 1.into() {
        return None;
    }
    xy.iter().zip(yx).all(|(a, b)| *a == b.shift(m)).then_some(m)
}

/// `m` with `xy = q^m yx` for elements in pairing-vector form.
pub fn q_commute_exponent_phi(uq: &Uq, x: &PhiElement, y: &PhiElement) -> Option<i64> {
    let (xy, yx) = multiply_both(uq, x, y);
    exponent_from(&xy.phi, &yx.phi)
}

/// `m` with `bb' = q^m b'b` for homogeneous expressions.
pub fn q_commute_exponent(uq: &Uq, b: &UPlusExpr, b2: &UPlusExpr) -> Option<i64> {
    let rank = uq.rank();
    let (w1, w2) = (b.weights(rank), b2.weights(rank));
    if w1.len() != 1 || w2.len() != 1 {
        return None;
    }
    let lhs = b.mul(uq.datum(), b2);
    let rhs = b2.mul(uq.datum(), b);
    let mu: Vec<i64> = w1[0].iter().zip(&w2[0]).map(|(a, c)| a + c).collect();
    let (l, r) = (uq.phi(&lhs, &mu), uq.phi(&rhs, &mu));
    let i = r.iter().position(|p| !p.is_zero())?;
    let ratio = &l[i] * &r[i].inv().ok()?;
    let (c, m) = ratio.as_laurent()?.as_monomial()?;
    if *c != 1.into() {
        return None;
    }
    let s = RatScalar::q_pow(m);
    l.iter().zip(&r).all(|(a, c)| *a == &s * c).then_some(m)
}

/// The `n` with `q^n x` bar-invariant, if any.
fn bar_centre(x: &PhiElement) -> Option<i64> {
    let p = x.phi.iter().find(|p| !p.is_zero())?;
    let s = p.min_exp()? + p.max_exp()?;
    if s % 2 != 0 {
        return None;
    }
    let n = -s / 2;
    x.phi.iter().all(|p| p.shift(n) == p.shift(n).bar()).then_some(n)
}

/// Outcome of a multiplicativity test: `B(m)* B(m')* = q^{-power} B(datum)*`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Multiplicative {
    pub power: i64,
    pub datum: Vec<i64>,
}

/// Pair tests over one dual canonical basis, with a modular prefilter for q-commutation.
pub struct Scanner {
    dc: Arc<DualCanonical>,
    images: Mutex<HashMap<Vec<i64>, Arc<Vec<u64>>>>,
}

impl Scanner {
    pub fn new(dc: Arc<DualCanonical>) -> Self {
        Scanner { dc, images: Mutex::default() }
    }

    pub fn basis(&self) -> &Arc<DualCanonical> {
        &self.dc
    }

    fn image(&self, m: &[i64]) -> Result<Arc<Vec<u64>>> {
        if let Some(v) = self.images.lock().unwrap().get(m) {
            return Ok(v.clone());
        }
        let e = self.dc.element(m)?;
        let qi = point_pow(-1);
        let v = Arc::new(e.phi.iter().map(|p| p.eval_mod(POINT, qi, PRIME)).collect::<Vec<_>>());
        Ok(self.images.lock().unwrap().entry(m.to_vec()).or_insert(v).clone())
    }

    /// `m` with `B(a)* B(b)* = q^m B(b)* B(a)*`.
    pub fn q_commute(&self, a: &[i64], b: &[i64]) -> Result<Option<i64>> {
        let pbw = self.dc.pbw();
        let (wa, wb) = (pbw.weight_of(a), pbw.weight_of(b));
        let (ia, ib) = (self.image(a)?, self.image(b)?);
        let (xy, yx) = self.dc.uq().shuffle_both_mod(&wa, &ia, &wb, &ib, &point_pow, PRIME);
        let Some(i) = yx.iter().position(|&v| v != 0) else {
            return Ok(None);
        };
        let r = mul_mod(xy[i], pow_mod(yx[i], PRIME - 2));
        if !xy.iter().zip(&yx).all(|(&u, &v)| u == mul_mod(r, v)) {
            return Ok(None);
        }
        let (x, y) = (self.dc.element(a)?, self.dc.element(b)?);
        Ok(q_commute_exponent_phi(self.dc.uq(), &x, &y))
    }

    /// `Some((n, m''))` when `B(a)* B(b)* = q^{-n} B(m'')*`.
    pub fn is_multiplicative(&self, a: &[i64], b: &[i64]) -> Result<Option<Multiplicative>> {
        let (x, y) = (self.dc.element(a)?, self.dc.element(b)?);
        let prod = multiply(self.dc.uq(), &x, &y);
        let Some(n) = bar_centre(&prod) else {
            return Ok(None);
        };
        let shifted = prod.scale(&LaurentPoly::q_pow(n));
        let coords = self.dc.dual_pbw_coordinates(&shifted)?;
        let space = self.dc.space(&shifted.weight)?;
        let mut lead = None;
        for (m, c) in space.data.iter().zip(&coords) {
            if c.is_in_qzq() {
                continue;
            }
            let Some(p) = c.as_laurent() else {
                return Ok(None);
            };
            if !(p - &LaurentPoly::one()).is_in_qzq() || lead.is_some() {
                return Ok(None);
            }
            lead = Some(m.clone());
        }
        Ok(lead.map(|datum| Multiplicative { power: n, datum }))
    }

    /// The same test through the full expansion of the product in `B*`.
    pub fn expand_product(&self, a: &[i64], b: &[i64]) -> Result<Vec<(Vec<i64>, RatScalar)>> {
        let (x, y) = (self.dc.element(a)?, self.dc.element(b)?);
        let prod = multiply(self.dc.uq(), &x, &y);
        Ok(self.dc.canonical_coordinates(&prod)?.into_iter().collect())
    }

    /// `q^n B(a)* B(b)* = B(a + b)*` modulo `qL*`, `n` the congruence exponent.
    pub fn check_511(&self, a: &[i64], b: &[i64]) -> Result<bool> {
        let pbw = self.dc.pbw();
        let (x, y) = (self.dc.element(a)?, self.dc.element(b)?);
        let prod = multiply(self.dc.uq(), &x, &y).scale(&LaurentPoly::q_pow(congruence_exponent(pbw, a, b)));
        let sum: Vec<i64> = a.iter().zip(b).map(|(u, v)| u + v).collect();
        let target = self.dc.dual_pbw_element(&sum)?;
        self.dc.congruent_mod_ql(&prod, &target)
    }
}

/// The `n` with `q^n B(m)* B(m')* = B(m + m')*` mod `qL*` for a multiplicative
/// pair: `-d(m', m)`.
pub fn congruence_exponent(pbw: &PbwBasis, m: &[i64], m2: &[i64]) -> i64 {
    -pbw.d_form(m2, m)
}

/// All data `sum a_k n_k` over the flag data `n_k` of the prefixes, of height at most `h`.
pub fn adapted_monomials(pbw: &PbwBasis, h: i64) -> Vec<Vec<i64>> {
    let word = pbw.word();
    let gens: Vec<(Vec<i64>, i64)> = (1..=word.len())
        .map(|k| {
            let n = flag_datum(word, k);
            let ht = pbw.weight_of(&n).iter().sum();
            (n, ht)
        })
        .collect();
    let mut out = BTreeSet::new();
    fn rec(gens: &[(Vec<i64>, i64)], i: usize, cur: &mut Vec<i64>, left: i64, out: &mut BTreeSet<Vec<i64>>) {
        if i == gens.len() {
            out.insert(cur.clone());
            return;
        }
        rec(gens, i + 1, cur, left, out);
        let (n, ht) = &gens[i];
        let mut used = 0;
        while used + ht <= left {
            used += ht;
            for (c, x) in cur.iter_mut().zip(n) {
                *c += x;
            }
            rec(gens, i + 1, cur, left - used, out);
        }
        for (c, x) in cur.iter_mut().zip(n) {
            *c -= x * (used / ht);
        }
    }
    let mut cur = vec![0; word.len()];
    rec(&gens, 0, &mut cur, h, &mut out);
    let mut v: Vec<Vec<i64>> = out.into_iter().collect();
    v.sort_by_key(|m| (pbw.weight_of(m).iter().sum::<i64>(), m.clone()));
    v
}

/// All Lusztig data of nonzero weight with height at most `h`.
pub fn all_data(pbw: &PbwBasis, h: i64) -> Vec<Vec<i64>> {
    weights_up_to(pbw.uq().rank(), h).iter().flat_map(|mu| pbw.data_of_weight(mu)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub m: String,
    pub m_prime: String,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairRecord {
    pub m: String,
    pub m_prime: String,
    pub q_commute: i64,
    pub multiplicative: Option<Multiplicative>,
}

/// Result of the pair scan for one word.
#[derive(Clone, Debug, Serialize)]
pub struct Thm51Report {
    pub word: Vec<usize>,
    pub orientation: Option<String>,
    pub height: i64,
    pub adapted_monomials: usize,
    pub pairs_scanned: usize,
    pub q_commuting: usize,
    pub multiplicative: usize,
    pub violations: Vec<Violation>,
    /// q-commuting, non-multiplicative pairs with neither factor a flag-minor monomial.
    pub outside_q_commuting: usize,
    pub outside_non_multiplicative: usize,
    pub pairs: Vec<PairRecord>,
}

/// For every flag-minor monomial `b*` and every `b'*` in `B*` of height at most `h`
/// that q-commute: the product is multiplicative with datum `m + m'` and power
/// `-d(m', m)`, and the congruence holds. With `exploratory`, also scans pairs
/// with neither factor a monomial.
pub fn verify_theorem_51(dc: Arc<DualCanonical>, h: i64, exploratory: bool) -> Result<Thm51Report> {
    let pbw = dc.pbw().clone();
    let sc = Scanner::new(dc);
    let monomials = adapted_monomials(&pbw, h);
    let mono_set: BTreeSet<Vec<i64>> = monomials.iter().cloned().collect();
    let all = all_data(&pbw, h);
    let mut seen = BTreeSet::new();
    let mut report = Thm51Report {
        word: pbw.word().word().to_vec(),
        orientation: None,
        height: h,
        adapted_monomials: monomials.len(),
        pairs_scanned: 0,
        q_commuting: 0,
        multiplicative: 0,
        violations: Vec::new(),
        outside_q_commuting: 0,
        outside_non_multiplicative: 0,
        pairs: Vec::new(),
    };
    for a in monomials.iter().filter(|m| m.iter().any(|&x| x != 0)) {
        for b in &all {
            let key = if a <= b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
            if !seen.insert(key) {
                continue;
            }
            report.pairs_scanned += 1;
            let Some(e) = sc.q_commute(a, b)? else {
                continue;
            };
            report.q_commuting += 1;
            let mult = sc.is_multiplicative(a, b)?;
            let (ra, rb) = (render_vec(a), render_vec(b));
            let mut bad = |reason: String| {
                report.violations.push(Violation { m: ra.clone(), m_prime: rb.clone(), reason });
            };
            let sum: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            match &mult {
                None => bad("q-commuting pair is not multiplicative".into()),
                Some(mu) => {
                    if mu.datum != sum {
                        bad(format!("product datum {} differs from m + m'", render_vec(&mu.datum)));
                    }
                    let n = congruence_exponent(&pbw, a, b);
                    if mu.power != n {
                        bad(format!("power {} differs from -d(m', m) = {n}", mu.power));
                    }
                }
            }
            if !sc.check_511(a, b)? {
                bad("congruence modulo qL* fails".into());
            }
            if mult.is_some() {
                report.multiplicative += 1;
            }
            report.pairs.push(PairRecord { m: ra, m_prime: rb, q_commute: e, multiplicative: mult });
        }
    }
    if exploratory {
        for (i, a) in all.iter().enumerate() {
            if mono_set.contains(a) {
                continue;
            }
            for b in all[i..].iter().filter(|b| !mono_set.contains(*b)) {
                if sc.q_commute(a, b)?.is_some() {
                    report.outside_q_commuting += 1;
                    if sc.is_multiplicative(a, b)?.is_none() {
                        report.outside_non_multiplicative += 1;
                    }
                }
            }
        }
    }
    Ok(report)
}

/// The scan for the adapted word of an orientation.
pub fn verify_theorem_51_orientation(datum: &CartanDatum, o: &Orientation, h: i64, exploratory: bool) -> Result<Thm51Report> {
    let uq = Arc::new(Uq::new(datum.clone()));
    let word = adapted_word(datum, o)?;
    let dc = Arc::new(DualCanonical::new(Arc::new(PbwBasis::new(uq, word)?)));
    let mut r = verify_theorem_51(dc, h, exploratory)?;
    r.orientation = Some(o.to_string());
    Ok(r)
}
