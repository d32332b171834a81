use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use super::{CommuteTerm, UPlusExpr, Uq, Word};
use crate::error::{Error, Result};
use crate::rootdata::render_vec;
use crate::scalars::{LaurentPoly, RatScalar};

/// `(F-word, K exponent vector, E-word)`: the normal-ordered monomial `F K_l E`.
pub type TriKey = (Word, Vec<i64>, Word);

/// An element of `U_q(g)` as a combination of normal-ordered monomials `F K E`.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct TriExpr {
    terms: BTreeMap<TriKey, RatScalar>,
}

impl TriExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one(rank: usize) -> Self {
        Self::term(Word::empty(), vec![0; rank], Word::empty(), RatScalar::one())
    }

    pub fn e(rank: usize, i: usize) -> Self {
        Self::term(Word::empty(), vec![0; rank], Word::gen(i), RatScalar::one())
    }

    pub fn f(rank: usize, i: usize) -> Self {
        Self::term(Word::gen(i), vec![0; rank], Word::empty(), RatScalar::one())
    }

    /// `K_l` with `l = sum k_i alpha_i`.
    pub fn k(k: Vec<i64>) -> Self {
        Self::term(Word::empty(), k, Word::empty(), RatScalar::one())
    }

    pub fn term(f: Word, k: Vec<i64>, e: Word, c: RatScalar) -> Self {
        let mut t = Self::zero();
        t.add_term((f, k, e), &c);
        t
    }

    pub fn from_uplus(rank: usize, x: &UPlusExpr) -> Self {
        let mut t = Self::zero();
        for (w, c) in x.terms() {
            t.add_term((Word::empty(), vec![0; rank], w.clone()), c);
        }
        t
    }

    /// Embeds an `F`-side expression.
    pub fn from_uminus(rank: usize, x: &UPlusExpr) -> Self {
        let mut t = Self::zero();
        for (w, c) in x.terms() {
            t.add_term((w.clone(), vec![0; rank], Word::empty()), c);
        }
        t
    }

    pub fn add_term(&mut self, key: TriKey, c: &RatScalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key.clone()).or_insert_with(RatScalar::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TriKey, &RatScalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: &RatScalar) -> Self {
        let mut out = Self::zero();
        for (k, x) in &self.terms {
            out.add_term(k.clone(), &(x * c));
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&RatScalar::from_int(-1)))
    }
}

impl fmt::Display for TriExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((fw, k, ew), c)| {
                let mut factors = Vec::new();
                if !fw.is_empty() {
                    factors.push(fw.render('F'));
                }
                if k.iter().any(|&x| x != 0) {
                    factors.push(format!("K{}", render_vec(k)));
                }
                if !ew.is_empty() {
                    factors.push(ew.render('E'));
                }
                if factors.is_empty() {
                    factors.push("1".into());
                }
                format!("({c})*{}", factors.join("*"))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for TriExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Uq {
    /// Normal-orders `E_a F_b` (plain letters) into terms `F K E`.
    fn commute_plain(&self, a: &[u8], b: &[u8]) -> Arc<Vec<CommuteTerm>> {
        let rank = self.rank();
        if a.is_empty() || b.is_empty() {
            return Arc::new(vec![(b.to_vec(), vec![0; rank], a.to_vec(), RatScalar::one())]);
        }
        let key = (a.to_vec(), b.to_vec());
        if let Some(v) = self.commute.lock().unwrap().get(&key) {
            return v.clone();
        }
        let datum = self.datum();
        let r = *a.last().unwrap();
        let prefix = &a[..a.len() - 1];
        let dr = datum.d(r as usize);
        // E_r F_b = F_b E_r + sum_t F_{b<t} (K_r - K_{-r})/(q_r - q_r^-1) F_{b>t}
        let mut stage: Vec<(Vec<u8>, Vec<i64>, Vec<u8>, RatScalar)> =
            vec![(b.to_vec(), vec![0; rank], vec![r], RatScalar::one())];
        let inv = RatScalar::new(LaurentPoly::one(), LaurentPoly::from_terms([(dr, 1), (-dr, -1)])).unwrap();
        for t in 0..b.len() {
            if b[t] != r {
                continue;
            }
            let e: i64 = b[t + 1..].iter().map(|&l| datum.form_simple(r as usize, l as usize)).sum();
            let mut rest = b.to_vec();
            rest.remove(t);
            let mut kp = vec![0; rank];
            kp[r as usize - 1] = 1;
            let mut km = vec![0; rank];
            km[r as usize - 1] = -1;
            stage.push((rest.clone(), kp, vec![], &inv * &RatScalar::q_pow(-e)));
            stage.push((rest, km, vec![], -(&inv * &RatScalar::q_pow(e))));
        }
        let mut acc: HashMap<(Vec<u8>, Vec<i64>, Vec<u8>), RatScalar> = HashMap::new();
        for (f1, k1, e1, c1) in stage {
            for (f2, k2, e2, c2) in self.commute_plain(prefix, &f1).iter() {
                // F2 K2 E2 K1 E1 = q^{-(k1, wt E2)} F2 K_{k2+k1} E2 E1
                let wt: Vec<i64> = letters_weight(rank, e2);
                let s = -datum.form_roots(&k1, &wt);
                let k: Vec<i64> = k2.iter().zip(&k1).map(|(x, y)| x + y).collect();
                let mut e = e2.clone();
                e.extend_from_slice(&e1);
                let c = &(&c1 * c2) * &RatScalar::q_pow(s);
                let slot = acc.entry((f2.clone(), k, e)).or_insert_with(RatScalar::zero);
                *slot += &c;
            }
        }
        let mut out: Vec<CommuteTerm> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|((f, k, e), c)| (f, k, e, c)).collect();
        out.sort_by(|x, y| (&x.0, &x.1, &x.2).cmp(&(&y.0, &y.1, &y.2)));
        let out = Arc::new(out);
        self.commute.lock().unwrap().insert(key, out.clone());
        out
    }

    /// Product in `U_q(g)`, rewritten to normal order. Words are not Serre-reduced.
    pub fn tri_mul(&self, x: &TriExpr, y: &TriExpr) -> TriExpr {
        let datum = self.datum();
        let rank = self.rank();
        let mut out = TriExpr::zero();
        for ((f1, k1, e1), c1) in x.terms() {
            let a = e1.letters();
            let sa = e1.factorial(datum);
            for ((f2, k2, e2), c2) in y.terms() {
                let b = f2.letters();
                let sb = f2.factorial(datum);
                let base = RatScalar::new(LaurentPoly::one(), &sa * &sb).unwrap();
                let c12 = &(c1 * c2) * &base;
                for (fp, kp, ep, cp) in self.commute_plain(&a, &b).iter() {
                    // F1 K1 (F' K' E') K2 E2
                    let s = -datum.form_roots(k1, &letters_weight(rank, fp))
                        - datum.form_roots(k2, &letters_weight(rank, ep));
                    let (fw, ff) = Word::from_letters(datum, fp);
                    let (fw, fc) = f1.concat(datum, &fw);
                    let (ew, ef) = Word::from_letters(datum, ep);
                    let (ew, ec) = ew.concat(datum, e2);
                    let scal = &(&ff * &fc) * &(&ef * &ec);
                    let k: Vec<i64> = (0..rank).map(|i| k1[i] + kp[i] + k2[i]).collect();
                    let c = &(&c12 * cp) * &RatScalar::from_poly(scal.shift(s));
                    out.add_term((fw, k, ew), &c);
                }
            }
        }
        out
    }

    /// True iff `x = 0` in `U_q(g)`, comparing `U^- (x) U^0 (x) U^+` components
    /// through pairing vectors on both sides.
    pub fn tri_is_zero(&self, x: &TriExpr) -> bool {
        let rank = self.rank();
        let datum = self.datum();
        type Group = Vec<(Word, Word, RatScalar)>;
        let mut groups: BTreeMap<(Vec<i64>, Vec<i64>, Vec<i64>), Group> = BTreeMap::new();
        for ((f, k, e), c) in x.terms() {
            groups
                .entry((k.clone(), f.weight(rank), e.weight(rank)))
                .or_default()
                .push((f.clone(), e.clone(), c.clone()));
        }
        for ((_, wf, _we), terms) in groups {
            let sf = self.space(&wf);
            let rows = self.pair_matrix(&wf);
            let mut tensor: HashMap<(usize, usize), RatScalar> = HashMap::new();
            for (f, e, c) in terms {
                let fl = f.letters();
                let col = sf.index_of(&fl).expect("word in its weight space");
                let fscale = RatScalar::new(LaurentPoly::one(), f.factorial(datum)).unwrap();
                let ev = self.phi_prime_word(&e);
                for (v, row) in rows.iter().enumerate() {
                    let a = &row[col];
                    if a.is_zero() {
                        continue;
                    }
                    let ca = &(&c * &fscale) * &RatScalar::from_poly(a.clone());
                    for (w, b) in ev.iter().enumerate() {
                        if b.is_zero() {
                            continue;
                        }
                        let slot = tensor.entry((v, w)).or_insert_with(RatScalar::zero);
                        *slot += &(&ca * &RatScalar::from_poly(b.clone()));
                    }
                }
            }
            if tensor.values().any(|s| !s.is_zero()) {
                return false;
            }
        }
        true
    }

    pub fn tri_eq(&self, x: &TriExpr, y: &TriExpr) -> bool {
        self.tri_is_zero(&x.sub(y))
    }

    /// The `U_q(n)` part of `x`, provided every other component vanishes.
    pub fn project_uplus(&self, x: &TriExpr) -> Result<UPlusExpr> {
        let rank = self.rank();
        let zero = vec![0; rank];
        let mut plus = UPlusExpr::zero();
        let mut rest = TriExpr::zero();
        for ((f, k, e), c) in x.terms() {
            if f.is_empty() && *k == zero {
                plus.add_term(e.clone(), c);
            } else {
                rest.add_term((f.clone(), k.clone(), e.clone()), c);
            }
        }
        if self.tri_is_zero(&rest) {
            Ok(plus)
        } else {
            Err(Error::NotInUqn)
        }
    }

    /// The `U_q(n^-)` part of `x` as an `F`-side expression.
    pub fn project_uminus(&self, x: &TriExpr) -> Result<UPlusExpr> {
        let rank = self.rank();
        let zero = vec![0; rank];
        let mut minus = UPlusExpr::zero();
        let mut rest = TriExpr::zero();
        for ((f, k, e), c) in x.terms() {
            if e.is_empty() && *k == zero {
                minus.add_term(f.clone(), c);
            } else {
                rest.add_term((f.clone(), k.clone(), e.clone()), c);
            }
        }
        if self.tri_is_zero(&rest) {
            Ok(minus)
        } else {
            Err(Error::NotInUqn)
        }
    }
}

fn letters_weight(rank: usize, w: &[u8]) -> Vec<i64> {
    let mut v = vec![0; rank];
    for &i in w {
        v[i as usize - 1] += 1;
    }
    v
}
