//! Plain-word spaces and the q-shuffle product on pairing vectors.
//!
//! For `x` of weight `mu` the pairing vector is `w -> (x, F_w)` over all plain
//! words `w` of weight `mu`. Products of elements become q-shuffles: every time
//! a letter `b` of the right factor precedes a letter `a` of the left factor the
//! term picks up `q^{(a, b)}`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::rootdata::CartanDatum;
use crate::scalars::LaurentPoly;

pub(crate) fn pack(word: &[u8]) -> u64 {
    assert!(word.len() <= 16, "words longer than 16 letters are unsupported");
    word.iter().enumerate().fold(0u64, |k, (i, &c)| k | ((c as u64) << (4 * i)))
}

/// All plain words of a weight, in lexicographic order.
#[derive(Debug)]
pub struct WordSpace {
    weight: Vec<i64>,
    words: Vec<Vec<u8>>,
    index: HashMap<u64, u32>,
}

impl WordSpace {
    pub fn new(weight: &[i64]) -> Self {
        let mut words = Vec::new();
        let mut counts = weight.to_vec();
        let h: i64 = weight.iter().sum();
        let mut cur = Vec::with_capacity(h as usize);
        gen_words(&mut counts, h as usize, &mut cur, &mut words);
        let index = words.iter().enumerate().map(|(i, w)| (pack(w), i as u32)).collect();
        WordSpace { weight: weight.to_vec(), words, index }
    }

    pub fn weight(&self) -> &[i64] {
        &self.weight
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn word(&self, i: usize) -> &[u8] {
        &self.words[i]
    }

    pub fn words(&self) -> &[Vec<u8>] {
        &self.words
    }

    pub fn index_of(&self, w: &[u8]) -> Option<usize> {
        self.index.get(&pack(w)).map(|&i| i as usize)
    }

    pub(crate) fn index_of_packed(&self, key: u64) -> usize {
        self.index[&key] as usize
    }
}

fn gen_words(counts: &mut [i64], left: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
    if left == 0 {
        out.push(cur.clone());
        return;
    }
    for i in 0..counts.len() {
        if counts[i] > 0 {
            counts[i] -= 1;
            cur.push(i as u8 + 1);
            gen_words(counts, left - 1, cur, out);
            cur.pop();
            counts[i] += 1;
        }
    }
}

/// Precomputed shuffle structure for a pair of weights `(mu, nu)`.
///
/// Entry `(iu, iv)` lists `(target word, exponent, multiplicity)` for all
/// shuffles of `u = W(mu)[iu]` (left factor) with `v = W(nu)[iv]`.
#[derive(Debug)]
pub struct ShuffleTable {
    pub(crate) n_nu: usize,
    pub(crate) cross: i64,
    pub(crate) entries: Vec<Vec<(u32, i32, u32)>>,
}

impl ShuffleTable {
    pub fn new(datum: &CartanDatum, wmu: &WordSpace, wnu: &WordSpace, out: &WordSpace) -> Self {
        let cross = datum.form_roots(wmu.weight(), wnu.weight());
        let mut entries = Vec::with_capacity(wmu.len() * wnu.len());
        let mut leaves: Vec<(u64, i32)> = Vec::new();
        for u in wmu.words() {
            for v in wnu.words() {
                // pre[i][j] = (alpha_{u_i}, alpha_{v_0} + ... + alpha_{v_{j-1}})
                let pre: Vec<Vec<i32>> = u
                    .iter()
                    .map(|&a| {
                        let mut acc = 0i32;
                        let mut row = Vec::with_capacity(v.len() + 1);
                        row.push(0);
                        for &b in v {
                            acc += datum.form_simple(a as usize, b as usize) as i32;
                            row.push(acc);
                        }
                        row
                    })
                    .collect();
                leaves.clear();
                merge_rec(u, v, &pre, 0, 0, 0, 0, &mut leaves);
                leaves.sort_unstable();
                let mut grouped: Vec<(u32, i32, u32)> = Vec::with_capacity(leaves.len());
                for &(key, e) in leaves.iter() {
                    let idx = out.index_of_packed(key) as u32;
                    match grouped.last_mut() {
                        Some(g) if g.0 == idx && g.1 == e => g.2 += 1,
                        _ => grouped.push((idx, e, 1)),
                    }
                }
                entries.push(grouped);
            }
        }
        ShuffleTable { n_nu: wnu.len(), cross, entries }
    }
}

#[allow(clippy::too_many_arguments)]
fn merge_rec(u: &[u8], v: &[u8], pre: &[Vec<i32>], i: usize, j: usize, key: u64, e: i32, out: &mut Vec<(u64, i32)>) {
    let pos = i + j;
    if i == u.len() && j == v.len() {
        out.push((key, e));
        return;
    }
    if i < u.len() {
        let k = key | ((u[i] as u64) << (4 * pos));
        merge_rec(u, v, pre, i + 1, j, k, e + pre[i][j], out);
    }
    if j < v.len() {
        let k = key | ((v[j] as u64) << (4 * pos));
        merge_rec(u, v, pre, i, j + 1, k, e, out);
    }
}

/// Dense accumulator for a Laurent polynomial.
struct Acc {
    lo: i64,
    c: Vec<BigInt>,
}

impl Acc {
    fn new() -> Self {
        Acc { lo: 0, c: Vec::new() }
    }

    fn add(&mut self, p: &LaurentPoly, e: i64, mult: u32) {
        let (Some(pl), Some(ph)) = (p.min_exp(), p.max_exp()) else {
            return;
        };
        let (lo, hi) = (pl + e, ph + e);
        if self.c.is_empty() {
            self.lo = lo;
            self.c = vec![BigInt::zero(); (hi - lo + 1) as usize];
        } else {
            if lo < self.lo {
                let pad = (self.lo - lo) as usize;
                let mut nc = vec![BigInt::zero(); pad];
                nc.append(&mut self.c);
                self.c = nc;
                self.lo = lo;
            }
            let top = self.lo + self.c.len() as i64 - 1;
            if hi > top {
                self.c.resize((hi - self.lo + 1) as usize, BigInt::zero());
            }
        }
        for (x, a) in p.terms() {
            let slot = &mut self.c[(x + e - self.lo) as usize];
            if mult == 1 {
                *slot += a;
            } else {
                *slot += a * BigInt::from(mult);
            }
        }
    }

    fn finish(self) -> LaurentPoly {
        let lo = self.lo;
        LaurentPoly::from_terms(self.c.into_iter().enumerate().map(|(i, c)| (i as i64 + lo, c)))
    }
}

/// `(phi(xy), phi(yx))` from `phi(x)` over `W(mu)` and `phi(y)` over `W(nu)`.
pub fn shuffle_both(
    t: &ShuffleTable,
    x: &[LaurentPoly],
    y: &[LaurentPoly],
    out_len: usize,
) -> (Vec<LaurentPoly>, Vec<LaurentPoly>) {
    let mut xy: Vec<Acc> = (0..out_len).map(|_| Acc::new()).collect();
    let mut yx: Vec<Acc> = (0..out_len).map(|_| Acc::new()).collect();
    for (iu, a) in x.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (iv, b) in y.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let p = a * b;
            for &(idx, e, m) in &t.entries[iu * t.n_nu + iv] {
                xy[idx as usize].add(&p, e as i64, m);
                yx[idx as usize].add(&p, t.cross - e as i64, m);
            }
        }
    }
    (xy.into_iter().map(Acc::finish).collect(), yx.into_iter().map(Acc::finish).collect())
}

/// `phi(xy)` only.
pub fn shuffle(t: &ShuffleTable, x: &[LaurentPoly], y: &[LaurentPoly], out_len: usize) -> Vec<LaurentPoly> {
    let mut xy: Vec<Acc> = (0..out_len).map(|_| Acc::new()).collect();
    for (iu, a) in x.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (iv, b) in y.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let p = a * b;
            for &(idx, e, m) in &t.entries[iu * t.n_nu + iv] {
                xy[idx as usize].add(&p, e as i64, m);
            }
        }
    }
    xy.into_iter().map(Acc::finish).collect()
}

/// Modular images: values at `q = q0` in `Z/p`.
pub fn shuffle_both_mod(
    t: &ShuffleTable,
    x: &[u64],
    y: &[u64],
    out_len: usize,
    qpow: &dyn Fn(i64) -> u64,
    p: u64,
) -> (Vec<u64>, Vec<u64>) {
    let m = p as u128;
    let mut xy = vec![0u128; out_len];
    let mut yx = vec![0u128; out_len];
    for (iu, &a) in x.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (iv, &b) in y.iter().enumerate() {
            if b == 0 {
                continue;
            }
            let pr = a as u128 * b as u128 % m;
            for &(idx, e, mult) in &t.entries[iu * t.n_nu + iv] {
                let s = pr * mult as u128 % m;
                xy[idx as usize] = (xy[idx as usize] + s * qpow(e as i64) as u128) % m;
                yx[idx as usize] = (yx[idx as usize] + s * qpow(t.cross - e as i64) as u128) % m;
            }
        }
    }
    (xy.into_iter().map(|v| v as u64).collect(), yx.into_iter().map(|v| v as u64).collect())
}

/// `q^{k(k-1)/2 * d}`: the pairing-vector entry of `E_i^{(k)}` at `i^k`, up to normalization.
pub fn divided_power_entry(k: u32, d: i64) -> LaurentPoly {
    let k = k as i64;
    LaurentPoly::monomial(BigInt::one(), d * k * (k - 1) / 2)
}
