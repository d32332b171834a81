use std::collections::BTreeMap;
use std::fmt;

use crate::rootdata::CartanDatum;
use crate::scalars::{quantum_binomial, quantum_factorial, LaurentPoly, RatScalar};

/// A divided-power word `X_{i_1}^{(k_1)} ... X_{i_r}^{(k_r)}` with maximal runs,
/// so adjacent generators always differ. Used for both `E` and `F` words.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Word(Vec<(u8, u32)>);

pub type EWord = Word;
pub type FWord = Word;

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn gen(i: usize) -> Self {
        Word(vec![(i as u8, 1)])
    }

    pub fn divided(i: usize, k: u32) -> Self {
        if k == 0 {
            Word::empty()
        } else {
            Word(vec![(i as u8, k)])
        }
    }

    /// Builds from runs, merging equal neighbours; returns the word and the
    /// scalar `c` with `runs = c * word`.
    pub fn from_runs(datum: &CartanDatum, runs: &[(usize, u32)]) -> (Self, LaurentPoly) {
        let mut w = Word::empty();
        let mut c = LaurentPoly::one();
        for &(i, k) in runs {
            let (nw, f) = w.concat(datum, &Word::divided(i, k));
            w = nw;
            c = &c * &f;
        }
        (w, c)
    }

    /// A plain letter sequence as `c * word`.
    pub fn from_letters(datum: &CartanDatum, letters: &[u8]) -> (Self, LaurentPoly) {
        let runs: Vec<(usize, u32)> = letters.iter().map(|&i| (i as usize, 1)).collect();
        Self::from_runs(datum, &runs)
    }

    pub fn runs(&self) -> &[(u8, u32)] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn height(&self) -> usize {
        self.0.iter().map(|r| r.1 as usize).sum()
    }

    pub fn weight(&self, rank: usize) -> Vec<i64> {
        let mut w = vec![0; rank];
        for &(i, k) in &self.0 {
            w[i as usize - 1] += k as i64;
        }
        w
    }

    /// Plain letters, each run repeated.
    pub fn letters(&self) -> Vec<u8> {
        let mut v = Vec::with_capacity(self.height());
        for &(i, k) in &self.0 {
            v.extend(std::iter::repeat_n(i, k as usize));
        }
        v
    }

    /// `prod [k]_i!` over the runs: `word = letters / factorial`.
    pub fn factorial(&self, datum: &CartanDatum) -> LaurentPoly {
        let mut c = LaurentPoly::one();
        for &(i, k) in &self.0 {
            if k > 1 {
                let f = quantum_factorial(k as i64, 2 * datum.d(i as usize)).expect("valid norm");
                c = &c * &f;
            }
        }
        c
    }

    /// `self * other = c * word`, merging the boundary run.
    pub fn concat(&self, datum: &CartanDatum, other: &Word) -> (Word, LaurentPoly) {
        let mut v = self.0.clone();
        let mut c = LaurentPoly::one();
        for &(i, k) in &other.0 {
            match v.last_mut() {
                Some(last) if last.0 == i => {
                    let n = last.1 + k;
                    let b = quantum_binomial(n as i64, k as i64, 2 * datum.d(i as usize))
                        .expect("valid norm");
                    c = &c * &b;
                    last.1 = n;
                }
                _ => v.push((i, k)),
            }
        }
        (Word(v), c)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn render(&self, sym: char) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(i, k)| if k == 1 { format!("{sym}{i}") } else { format!("{sym}{i}^({k})") })
            .collect();
        parts.join("*")
    }
}

/// A finite combination of divided-power words with coefficients in `Q(q)`.
///
/// The same type holds `F`-side expressions where noted.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct UPlusExpr {
    terms: BTreeMap<Word, RatScalar>,
}

impl UPlusExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(Word::empty(), RatScalar::one())
    }

    pub fn gen(i: usize) -> Self {
        Self::term(Word::gen(i), RatScalar::one())
    }

    pub fn scalar(c: RatScalar) -> Self {
        Self::term(Word::empty(), c)
    }

    pub fn term(w: Word, c: RatScalar) -> Self {
        let mut e = Self::zero();
        e.add_term(w, &c);
        e
    }

    pub fn add_term(&mut self, w: Word, c: &RatScalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w).or_insert_with(RatScalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &RatScalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Weights of the homogeneous components present.
    pub fn weights(&self, rank: usize) -> Vec<Vec<i64>> {
        let mut ws: Vec<Vec<i64>> = self.terms.keys().map(|w| w.weight(rank)).collect();
        ws.sort();
        ws.dedup();
        ws
    }

    /// The homogeneous component of weight `mu`.
    pub fn component(&self, rank: usize, mu: &[i64]) -> UPlusExpr {
        UPlusExpr {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.weight(rank) == mu)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&RatScalar::from_int(-1)))
    }

    pub fn scale(&self, c: &RatScalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UPlusExpr { terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect() }
    }

    /// Product by concatenation; no Serre reduction.
    pub fn mul(&self, datum: &CartanDatum, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let (w, f) = a.concat(datum, b);
                out.add_term(w, &(&(ca * cb) * &RatScalar::from_poly(f)));
            }
        }
        out
    }

    pub fn pow(&self, datum: &CartanDatum, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.mul(datum, self);
        }
        acc
    }

    /// Bar-conjugates coefficients, fixes words.
    pub fn eta(&self) -> Self {
        UPlusExpr { terms: self.terms.iter().map(|(w, c)| (w.clone(), c.bar())).collect() }
    }

    /// Reverses words, fixes coefficients.
    pub fn sigma(&self) -> Self {
        UPlusExpr { terms: self.terms.iter().map(|(w, c)| (w.reversed(), c.clone())).collect() }
    }

    pub fn sigma_eta(&self) -> Self {
        self.eta().sigma()
    }

    /// Renders with generator symbol `sym` (`E` or `F`).
    pub fn render(&self, sym: char) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (n, (w, c)) in self.terms.iter().enumerate() {
            let (neg, body) = render_coeff(c);
            let piece = match (w.is_empty(), body.as_str()) {
                (true, "") => "1".to_string(),
                (true, b) => b.to_string(),
                (false, "") => w.render(sym),
                (false, b) => format!("{b}*{}", w.render(sym)),
            };
            if n == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&piece);
        }
        out
    }
}

/// Splits a coefficient into a sign and a factor string ("" for 1).
fn render_coeff(c: &RatScalar) -> (bool, String) {
    if let Some(p) = c.as_laurent() {
        if let Some((k, e)) = p.as_monomial() {
            let neg = k < &num_bigint::BigInt::from(0);
            let a = if neg { -k.clone() } else { k.clone() };
            let one = a == num_bigint::BigInt::from(1);
            let s = match (e, one) {
                (0, true) => String::new(),
                (0, false) => a.to_string(),
                (1, true) => "q".into(),
                (e, true) => format!("q^{e}"),
                (1, false) => format!("{a}*q"),
                (e, false) => format!("{a}*q^{e}"),
            };
            return (neg, s);
        }
        return (false, format!("({p})"));
    }
    (false, format!("({c})"))
}

impl fmt::Display for UPlusExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render('E'))
    }
}

impl fmt::Debug for UPlusExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
