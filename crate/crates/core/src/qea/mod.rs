//! Elements of `U_q(n)` and triangular-form elements of `U_q(g)`, the Hopf
//! pairing, canonical forms and the maps `eta`, `sigma`.
//!
//! Conventions: `K_l E_i = q^{(l, a_i)} E_i K_l`, `K_l F_i = q^{-(l, a_i)} F_i K_l`,
//! `E_i F_j - F_j E_i = delta_ij (K_i - K_{-i}) / (q_i - q_i^{-1})`,
//! `Delta(E_i) = E_i (x) 1 + K_i (x) E_i`, `Delta(F_i) = F_i (x) K_{-i} + 1 (x) F_i`
//! and `(E_i, F_j) = delta_ij / (1 - q_i^{-2})`.
//!
//! The pairing satisfies `(x x', y) = (x (x) x', Delta(y))` on the `F` side. In
//! terms of plain words, `(E_a, F_b)` equals the shuffle entry of `E_a` at the
//! reversed word of `b`; the pairing vector `phi(x)[w]` is `(x, F_{rev w})`.

mod shuffle;
mod tri;
mod word;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

pub use shuffle::{ShuffleTable, WordSpace};
pub use tri::{TriExpr, TriKey};
pub use word::{EWord, FWord, UPlusExpr, Word};

use crate::rootdata::CartanDatum;
use crate::scalars::{LaurentPoly, RatScalar};

pub(crate) use shuffle::{divided_power_entry, shuffle as shuffle_one, shuffle_both, shuffle_both_mod};

type CommuteTerm = (Vec<u8>, Vec<i64>, Vec<u8>, RatScalar);

/// The pairing vector of a `U_q(n)` element: per weight, the nonzero values
/// `(x, F_{rev w})` indexed by plain words `w`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CanonicalForm {
    pub components: BTreeMap<Vec<i64>, BTreeMap<Vec<u8>, RatScalar>>,
}

impl CanonicalForm {
    pub fn is_zero(&self) -> bool {
        self.components.values().all(|c| c.is_empty())
    }
}

/// Algebra context for one Cartan datum, holding the memo tables.
///
/// Caches are idempotent: concurrent duplicate computation yields identical
/// values.
pub struct Uq {
    datum: CartanDatum,
    spaces: Mutex<HashMap<Vec<i64>, Arc<WordSpace>>>,
    tables: Mutex<HashMap<(Vec<i64>, Vec<i64>), Arc<ShuffleTable>>>,
    word_phi: Mutex<HashMap<Word, Arc<Vec<LaurentPoly>>>>,
    plain_pair: Mutex<HashMap<(Vec<u8>, Vec<u8>), LaurentPoly>>,
    commute: Mutex<HashMap<(Vec<u8>, Vec<u8>), Arc<Vec<CommuteTerm>>>>,
}

impl Uq {
    pub fn new(datum: CartanDatum) -> Self {
        Uq {
            datum,
            spaces: Mutex::default(),
            tables: Mutex::default(),
            word_phi: Mutex::default(),
            plain_pair: Mutex::default(),
            commute: Mutex::default(),
        }
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn space(&self, weight: &[i64]) -> Arc<WordSpace> {
        if let Some(s) = self.spaces.lock().unwrap().get(weight) {
            return s.clone();
        }
        let s = Arc::new(WordSpace::new(weight));
        self.spaces.lock().unwrap().entry(weight.to_vec()).or_insert(s).clone()
    }

    pub fn table(&self, mu: &[i64], nu: &[i64]) -> Arc<ShuffleTable> {
        let key = (mu.to_vec(), nu.to_vec());
        if let Some(t) = self.tables.lock().unwrap().get(&key) {
            return t.clone();
        }
        let out: Vec<i64> = mu.iter().zip(nu).map(|(a, b)| a + b).collect();
        let t = Arc::new(ShuffleTable::new(&self.datum, &self.space(mu), &self.space(nu), &self.space(&out)));
        self.tables.lock().unwrap().entry(key).or_insert(t).clone()
    }

    /// Pairing vectors of `xy` and `yx`.
    pub fn shuffle_both(
        &self,
        mu: &[i64],
        x: &[LaurentPoly],
        nu: &[i64],
        y: &[LaurentPoly],
    ) -> (Vec<LaurentPoly>, Vec<LaurentPoly>) {
        let out: Vec<i64> = mu.iter().zip(nu).map(|(a, b)| a + b).collect();
        let n = self.space(&out).len();
        shuffle_both(&self.table(mu, nu), x, y, n)
    }

    /// Modular images of the pairing vectors of `xy` and `yx` at a point.
    pub fn shuffle_both_mod(
        &self,
        mu: &[i64],
        x: &[u64],
        nu: &[i64],
        y: &[u64],
        qpow: &dyn Fn(i64) -> u64,
        p: u64,
    ) -> (Vec<u64>, Vec<u64>) {
        let out: Vec<i64> = mu.iter().zip(nu).map(|(a, b)| a + b).collect();
        let n = self.space(&out).len();
        shuffle_both_mod(&self.table(mu, nu), x, y, n, qpow, p)
    }

    /// Pairing vector of `xy`.
    pub fn shuffle(&self, mu: &[i64], x: &[LaurentPoly], nu: &[i64], y: &[LaurentPoly]) -> Vec<LaurentPoly> {
        let out: Vec<i64> = mu.iter().zip(nu).map(|(a, b)| a + b).collect();
        let n = self.space(&out).len();
        shuffle_one(&self.table(mu, nu), x, y, n)
    }

    /// `N_mu = prod_i (1 - q_i^{-2})^{k_i}`: multiplies pairing vectors of
    /// `E`-words into `Z[q, q^-1]`.
    pub fn norm_factor(&self, weight: &[i64]) -> LaurentPoly {
        let mut c = LaurentPoly::one();
        for (i, &k) in weight.iter().enumerate() {
            let f = LaurentPoly::from_terms([(0, 1), (-2 * self.datum.d(i + 1), -1)]);
            c = &c * &f.pow(k as u32);
        }
        c
    }

    /// `N_mu * (E_word, F_{rev w})` for all plain `w`; integral.
    pub fn phi_prime_word(&self, w: &Word) -> Arc<Vec<LaurentPoly>> {
        if let Some(v) = self.word_phi.lock().unwrap().get(w) {
            return v.clone();
        }
        let runs = w.runs();
        let v = if runs.len() <= 1 {
            let mut v = vec![LaurentPoly::one()];
            if let Some(&(i, k)) = runs.first() {
                let i = i as usize;
                v = vec![divided_power_entry(k, self.datum.d(i))];
            }
            v
        } else {
            let rank = self.rank();
            let head = Word::from_runs(&self.datum, &[(runs[0].0 as usize, runs[0].1)]).0;
            let tail_runs: Vec<(usize, u32)> = runs[1..].iter().map(|&(i, k)| (i as usize, k)).collect();
            let tail = Word::from_runs(&self.datum, &tail_runs).0;
            let a = self.phi_prime_word(&head);
            let b = self.phi_prime_word(&tail);
            self.shuffle(&head.weight(rank), &a, &tail.weight(rank), &b)
        };
        let v = Arc::new(v);
        self.word_phi.lock().unwrap().entry(w.clone()).or_insert(v).clone()
    }

    /// Pairing vector `w -> (x, F_{rev w})` of a homogeneous expression of weight `mu`.
    pub fn phi(&self, x: &UPlusExpr, mu: &[i64]) -> Vec<RatScalar> {
        let n = self.space(mu).len();
        let mut acc: Vec<RatScalar> = vec![RatScalar::zero(); n];
        let rank = self.rank();
        for (w, c) in x.terms() {
            if w.weight(rank) != mu {
                continue;
            }
            let v = self.phi_prime_word(w);
            for (slot, p) in acc.iter_mut().zip(v.iter()) {
                if !p.is_zero() {
                    *slot += &(c * &RatScalar::from_poly(p.clone()));
                }
            }
        }
        let inv = RatScalar::from_poly(self.norm_factor(mu)).inv().expect("nonzero norm factor");
        acc.iter().map(|a| a * &inv).collect()
    }

    /// Integral pairing vector of an element known to lie in the dual lattice.
    pub fn phi_integral(&self, x: &UPlusExpr, mu: &[i64]) -> Option<Vec<LaurentPoly>> {
        self.phi(x, mu).into_iter().map(|s| s.into_laurent()).collect()
    }

    /// The canonical form; two expressions are equal in `U_q(n)` iff their forms agree.
    pub fn canonical_form(&self, x: &UPlusExpr) -> CanonicalForm {
        let mut out = CanonicalForm::default();
        for mu in x.weights(self.rank()) {
            let sp = self.space(&mu);
            let v = self.phi(x, &mu);
            let comp: BTreeMap<Vec<u8>, RatScalar> = v
                .into_iter()
                .enumerate()
                .filter(|(_, s)| !s.is_zero())
                .map(|(i, s)| (sp.word(i).to_vec(), s))
                .collect();
            out.components.insert(mu, comp);
        }
        out
    }

    pub fn is_zero(&self, x: &UPlusExpr) -> bool {
        self.canonical_form(x).is_zero()
    }

    pub fn equals(&self, x: &UPlusExpr, y: &UPlusExpr) -> bool {
        self.is_zero(&x.sub(y))
    }

    /// `N_mu * (E_a, F_b)` for plain words, by the coproduct recursion on the
    /// first `F` letter.
    pub fn pair_plain(&self, a: &[u8], b: &[u8]) -> LaurentPoly {
        if a.len() != b.len() {
            return LaurentPoly::zero();
        }
        let rb: Vec<u8> = b.iter().rev().copied().collect();
        self.pair_rec(a, &rb)
    }

    fn pair_rec(&self, a: &[u8], b: &[u8]) -> LaurentPoly {
        if a.is_empty() {
            return LaurentPoly::one();
        }
        let key = (a.to_vec(), b.to_vec());
        if let Some(v) = self.plain_pair.lock().unwrap().get(&key) {
            return v.clone();
        }
        let r = *a.last().unwrap();
        let rest = &a[..a.len() - 1];
        let mut acc = LaurentPoly::zero();
        for t in 0..b.len() {
            if b[t] != r {
                continue;
            }
            let e: i64 = b[t + 1..].iter().map(|&l| self.datum.form_simple(r as usize, l as usize)).sum();
            let mut bb = b.to_vec();
            bb.remove(t);
            let sub = self.pair_rec(rest, &bb);
            acc.add_scaled_shifted(&sub, &num_bigint::BigInt::from(1), e);
        }
        self.plain_pair.lock().unwrap().insert(key, acc.clone());
        acc
    }

    /// `(E_a, F_b)` for divided-power words, by the recursion.
    pub fn pairing_words(&self, e: &Word, f: &Word) -> RatScalar {
        let rank = self.rank();
        let mu = e.weight(rank);
        if mu != f.weight(rank) {
            return RatScalar::zero();
        }
        let p = self.pair_plain(&e.letters(), &f.letters());
        let den = &(&e.factorial(&self.datum) * &f.factorial(&self.datum)) * &self.norm_factor(&mu);
        RatScalar::new(p, den).expect("nonzero denominator")
    }

    /// `(x, y)` for `x` in `U_q(n)` and `y` an `F`-side expression.
    pub fn pairing_uplus(&self, x: &UPlusExpr, y: &UPlusExpr) -> RatScalar {
        let mut acc = RatScalar::zero();
        for (a, ca) in x.terms() {
            for (b, cb) in y.terms() {
                let v = self.pairing_words(a, b);
                if !v.is_zero() {
                    acc += &(&(ca * cb) * &v);
                }
            }
        }
        acc
    }

    /// Hopf pairing of `x` (terms `K_l E_a`) with `y` (terms `F_b K_m`):
    /// `(K_l E_a, F_b K_m) = q^{(l, wt a)} q^{-(l, m)} (E_a, F_b)`.
    pub fn pairing(&self, x: &TriExpr, y: &TriExpr) -> crate::error::Result<RatScalar> {
        let rank = self.rank();
        let mut acc = RatScalar::zero();
        for ((fx, kx, ex), cx) in x.terms() {
            if !fx.is_empty() {
                return Err(crate::error::Error::InvalidArgument("left argument has an F part".into()));
            }
            for ((fy, ky, ey), cy) in y.terms() {
                if !ey.is_empty() {
                    return Err(crate::error::Error::InvalidArgument("right argument has an E part".into()));
                }
                let v = self.pairing_words(ex, fy);
                if v.is_zero() {
                    continue;
                }
                let e = self.datum.form_roots(kx, &ex.weight(rank)) - self.datum.form_roots(kx, ky);
                acc += &(&(&(cx * cy) * &v) * &RatScalar::q_pow(e));
            }
        }
        Ok(acc)
    }

    /// `N_mu (E_v, F_{rev b})` for all plain `v, b` of weight `mu`; rows are `v`.
    fn pair_matrix(&self, mu: &[i64]) -> Vec<Arc<Vec<LaurentPoly>>> {
        let sp = self.space(mu);
        sp.words()
            .iter()
            .map(|v| {
                let (w, c) = Word::from_letters(&self.datum, v);
                let col = self.phi_prime_word(&w);
                Arc::new(col.iter().map(|p| p * &c).collect())
            })
            .collect()
    }
}
