//! Braid automorphisms, root vectors, PBW monomials and coordinates, the forms
//! `d` and `c`, and the right-lexicographic and Ext orders on Lusztig data.
//!
//! `T_i(E_i) = -F_i K_i`, `T_i(F_i) = -K_{-i} E_i`, `T_i(K_l) = K_{s_i l}` and for
//! `j != i`, `r = -a_ij`:
//! `T_i(E_j) = sum_s (-1)^s q_i^{-s} E_i^{(r-s)} E_j E_i^{(s)}`,
//! `T_i(F_j) = sum_s (-1)^s q_i^{s} F_i^{(s)} F_j F_i^{(r-s)}`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::One;

use crate::error::{Error, Result};
use crate::qea::{TriExpr, UPlusExpr, Uq, Word};
use crate::rootdata::{render_vec, ReducedWord};
use crate::scalars::{quantum_factorial, LaurentPoly, RatScalar};

/// A Lusztig datum `m` tied to a reduced word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LusztigDatum {
    pub word: Vec<usize>,
    pub m: Vec<i64>,
}

impl fmt::Display for LusztigDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_vec(&self.m))
    }
}

/// Coordinates indexed by Lusztig data of one word.
pub type Expansion = BTreeMap<Vec<i64>, RatScalar>;

/// `m < n` in the right lexicographic order: compare at the largest differing index.
pub fn rlex_less(m: &[i64], n: &[i64]) -> bool {
    for j in (0..m.len()).rev() {
        if m[j] != n[j] {
            return m[j] < n[j];
        }
    }
    false
}

pub fn rlex_cmp(m: &[i64], n: &[i64]) -> std::cmp::Ordering {
    for j in (0..m.len()).rev() {
        if m[j] != n[j] {
            return m[j].cmp(&n[j]);
        }
    }
    std::cmp::Ordering::Equal
}

/// `e_k` (1-based) of length `n`.
pub fn unit_datum(n: usize, k: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[k - 1] = 1;
    v
}

fn letter_image(uq: &Uq, i: usize, j: usize, f_side: bool) -> TriExpr {
    let datum = uq.datum();
    let rank = uq.rank();
    let di = datum.d(i);
    if i == j {
        let mut k = vec![0; rank];
        if f_side {
            k[i - 1] = -1;
            return TriExpr::term(Word::empty(), k, Word::gen(i), RatScalar::from_int(-1));
        }
        k[i - 1] = 1;
        return TriExpr::term(Word::gen(i), k, Word::empty(), RatScalar::from_int(-1));
    }
    let r = -datum.cartan(i, j);
    let mut out = TriExpr::zero();
    for s in 0..=r {
        let sign = if s % 2 == 0 { 1 } else { -1 };
        let (runs, e) = if f_side {
            (vec![(i, s as u32), (j, 1), (i, (r - s) as u32)], di * s)
        } else {
            (vec![(i, (r - s) as u32), (j, 1), (i, s as u32)], -di * s)
        };
        let runs: Vec<(usize, u32)> = runs.into_iter().filter(|r| r.1 > 0).collect();
        let (w, c) = Word::from_runs(datum, &runs);
        let coeff = RatScalar::from_poly(c.shift(e)) * RatScalar::from_int(sign);
        if f_side {
            out.add_term((w, vec![0; rank], Word::empty()), &coeff);
        } else {
            out.add_term((Word::empty(), vec![0; rank], w), &coeff);
        }
    }
    out
}

/// `T_i(x)`, extended multiplicatively from the generator images.
pub fn braid_t(uq: &Uq, i: usize, x: &TriExpr) -> TriExpr {
    let datum = uq.datum();
    let rank = uq.rank();
    let mut images: HashMap<(usize, bool), TriExpr> = HashMap::new();
    let mut image = |j: usize, f: bool| images.entry((j, f)).or_insert_with(|| letter_image(uq, i, j, f)).clone();
    let mut out = TriExpr::zero();
    for ((fw, k, ew), c) in x.terms() {
        let mut acc = TriExpr::one(rank);
        for l in fw.letters() {
            acc = uq.tri_mul(&acc, &image(l as usize, true));
        }
        let mut kk = k.clone();
        datum.reflect_root(i, &mut kk);
        acc = uq.tri_mul(&acc, &TriExpr::k(kk));
        for l in ew.letters() {
            acc = uq.tri_mul(&acc, &image(l as usize, false));
        }
        let scale = RatScalar::new(LaurentPoly::one(), &fw.factorial(datum) * &ew.factorial(datum)).unwrap();
        out = out.add(&acc.scale(&(c * &scale)));
    }
    out
}

/// Plain-word expansion of an `F`-side element with a common denominator:
/// `F = (1/den) sum_w coeffs[w] F_{rev w}`, indexed like pairing vectors.
#[derive(Clone, Debug)]
pub struct Probe {
    pub terms: Vec<(usize, LaurentPoly)>,
    pub den: LaurentPoly,
}

impl Probe {
    /// `(x, F)` from the pairing vector of `x`.
    pub fn apply(&self, phi: &[LaurentPoly]) -> RatScalar {
        let mut acc = LaurentPoly::zero();
        for (w, c) in &self.terms {
            if !phi[*w].is_zero() {
                acc += &(c * &phi[*w]);
            }
        }
        if let Some(q) = acc.div_exact(&self.den) {
            return RatScalar::from_poly(q);
        }
        RatScalar::new(acc, self.den.clone()).unwrap()
    }

    pub fn apply_rat(&self, phi: &[RatScalar]) -> RatScalar {
        let mut acc = RatScalar::zero();
        for (w, c) in &self.terms {
            if !phi[*w].is_zero() {
                acc += &(&phi[*w] * &RatScalar::from_poly(c.clone()));
            }
        }
        &acc * &RatScalar::from_poly(self.den.clone()).inv().unwrap()
    }
}

/// PBW data for one reduced word of `w_0`.
pub struct PbwBasis {
    uq: Arc<Uq>,
    word: ReducedWord,
    e_roots: Vec<OnceLock<Result<UPlusExpr>>>,
    f_roots: Vec<OnceLock<Result<UPlusExpr>>>,
    e_root_phi: Vec<OnceLock<Arc<Vec<LaurentPoly>>>>,
    probes: Mutex<HashMap<Vec<i64>, Arc<Probe>>>,
    monomial_phi: Mutex<HashMap<Vec<i64>, Arc<Vec<LaurentPoly>>>>,
    straighten: Mutex<HashMap<(usize, usize), Expansion>>,
}

impl PbwBasis {
    pub fn new(uq: Arc<Uq>, word: ReducedWord) -> Result<Self> {
        if !word.is_longest(uq.datum()) {
            return Err(Error::InvalidArgument(format!("word {word} is not a reduced word of w_0")));
        }
        let n = word.len();
        Ok(PbwBasis {
            uq,
            word,
            e_roots: (0..n).map(|_| OnceLock::new()).collect(),
            f_roots: (0..n).map(|_| OnceLock::new()).collect(),
            e_root_phi: (0..n).map(|_| OnceLock::new()).collect(),
            probes: Mutex::default(),
            monomial_phi: Mutex::default(),
            straighten: Mutex::default(),
        })
    }

    pub fn uq(&self) -> &Arc<Uq> {
        &self.uq
    }

    pub fn word(&self) -> &ReducedWord {
        &self.word
    }

    /// `N`.
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn datum_of(&self, m: &[i64]) -> LusztigDatum {
        LusztigDatum { word: self.word.word().to_vec(), m: m.to_vec() }
    }

    /// `sum m_k beta_k`.
    pub fn weight_of(&self, m: &[i64]) -> Vec<i64> {
        let mut w = vec![0; self.uq.rank()];
        for (k, &mk) in m.iter().enumerate() {
            for (x, b) in w.iter_mut().zip(self.word.beta(k + 1)) {
                *x += mk * b;
            }
        }
        w
    }

    fn root_chain(&self, k: usize, f_side: bool) -> Result<UPlusExpr> {
        let uq = &self.uq;
        let rank = uq.rank();
        let ik = self.word.letter(k);
        let mut x = if f_side { TriExpr::f(rank, ik) } else { TriExpr::e(rank, ik) };
        for j in (1..k).rev() {
            let t = braid_t(uq, self.word.letter(j), &x);
            let p = if f_side { uq.project_uminus(&t)? } else { uq.project_uplus(&t)? };
            x = if f_side { TriExpr::from_uminus(rank, &p) } else { TriExpr::from_uplus(rank, &p) };
        }
        if f_side {
            uq.project_uminus(&x)
        } else {
            uq.project_uplus(&x)
        }
    }

    /// `E_{beta_k} = T_{i_1} ... T_{i_{k-1}}(E_{i_k})`, 1-based `k`.
    pub fn root_vector(&self, k: usize) -> Result<UPlusExpr> {
        if k == 0 || k > self.len() {
            return Err(Error::IndexOutOfRange(k));
        }
        self.e_roots[k - 1].get_or_init(|| self.root_chain(k, false)).clone()
    }

    /// `F_{beta_k}`, the mirrored construction, as an `F`-side expression.
    pub fn f_root_vector(&self, k: usize) -> Result<UPlusExpr> {
        if k == 0 || k > self.len() {
            return Err(Error::IndexOutOfRange(k));
        }
        self.f_roots[k - 1].get_or_init(|| self.root_chain(k, true)).clone()
    }

    fn root_norm(&self, k: usize) -> i64 {
        let b = self.word.beta(k);
        self.uq.datum().form_roots(b, b)
    }

    /// `E_beta^{(j)} = E_beta^j / [j]_beta!`.
    fn divided_root(&self, k: usize, j: i64, f_side: bool) -> Result<UPlusExpr> {
        let x = if f_side { self.f_root_vector(k)? } else { self.root_vector(k)? };
        let p = x.pow(self.uq.datum(), j as u32);
        let fact = quantum_factorial(j, self.root_norm(k))?;
        Ok(p.scale(&RatScalar::new(LaurentPoly::one(), fact)?))
    }

    fn check_datum(&self, m: &[i64]) -> Result<()> {
        if m.len() != self.len() || m.iter().any(|&x| x < 0) {
            return Err(Error::InvalidArgument(format!("datum {} does not fit word {}", render_vec(m), self.word)));
        }
        Ok(())
    }

    /// `E(m) = E_{beta_1}^{(m_1)} ... E_{beta_N}^{(m_N)}`.
    pub fn pbw_monomial(&self, m: &[i64]) -> Result<UPlusExpr> {
        self.check_datum(m)?;
        let mut acc = UPlusExpr::one();
        for (k, &mk) in m.iter().enumerate() {
            if mk > 0 {
                acc = acc.mul(self.uq.datum(), &self.divided_root(k + 1, mk, false)?);
            }
        }
        Ok(acc)
    }

    /// `F(m)`, same ordering, as an `F`-side expression.
    pub fn f_monomial(&self, m: &[i64]) -> Result<UPlusExpr> {
        self.check_datum(m)?;
        let mut acc = UPlusExpr::one();
        for (k, &mk) in m.iter().enumerate() {
            if mk > 0 {
                acc = acc.mul(self.uq.datum(), &self.divided_root(k + 1, mk, true)?);
            }
        }
        Ok(acc)
    }

    /// All data of weight `mu`, ascending in rlex.
    pub fn data_of_weight(&self, mu: &[i64]) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        let mut cur = vec![0; self.len()];
        self.enum_data(0, mu.to_vec(), &mut cur, &mut out);
        out.sort_by(|a, b| rlex_cmp(a, b));
        out
    }

    fn enum_data(&self, k: usize, rem: Vec<i64>, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if rem.iter().all(|&x| x == 0) {
            out.push(cur.clone());
            return;
        }
        if k == self.len() {
            return;
        }
        let b = self.word.beta(k + 1);
        let mut r = rem.clone();
        let mut j = 0;
        loop {
            if r.iter().any(|&x| x < 0) {
                break;
            }
            cur[k] = j;
            self.enum_data(k + 1, r.clone(), cur, out);
            for (x, y) in r.iter_mut().zip(b) {
                *x -= y;
            }
            j += 1;
        }
        cur[k] = 0;
    }

    /// `N_mu * phi(E_{beta_k})`, integral.
    fn root_phi_prime(&self, k: usize) -> Result<Arc<Vec<LaurentPoly>>> {
        if let Some(v) = self.e_root_phi[k - 1].get() {
            return Ok(v.clone());
        }
        let x = self.root_vector(k)?;
        let mu = self.word.beta(k).to_vec();
        let n = self.uq.norm_factor(&mu);
        let v: Option<Vec<LaurentPoly>> = self
            .uq
            .phi(&x, &mu)
            .into_iter()
            .map(|s| (&s * &RatScalar::from_poly(n.clone())).into_laurent())
            .collect();
        let v = Arc::new(v.ok_or_else(|| Error::Convention("root vector outside the integral form".into()))?);
        Ok(self.e_root_phi[k - 1].get_or_init(|| v).clone())
    }

    /// `N_mu * phi(E(m))`, integral.
    pub fn monomial_phi_prime(&self, m: &[i64]) -> Result<Arc<Vec<LaurentPoly>>> {
        self.check_datum(m)?;
        if let Some(v) = self.monomial_phi.lock().unwrap().get(m) {
            return Ok(v.clone());
        }
        let uq = &self.uq;
        let mut wt = vec![0; uq.rank()];
        let mut acc: Vec<LaurentPoly> = vec![LaurentPoly::one()];
        for (k, &mk) in m.iter().enumerate() {
            if mk == 0 {
                continue;
            }
            let b = self.word.beta(k + 1).to_vec();
            let r = self.root_phi_prime(k + 1)?;
            let mut pw: Vec<LaurentPoly> = r.as_ref().clone();
            let mut pwt = b.clone();
            for _ in 1..mk {
                pw = uq.shuffle(&pwt, &pw, &b, &r);
                for (x, y) in pwt.iter_mut().zip(&b) {
                    *x += y;
                }
            }
            if mk > 1 {
                let fact = quantum_factorial(mk, self.root_norm(k + 1))?;
                pw = pw
                    .iter()
                    .map(|p| p.div_exact(&fact))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| Error::Convention("divided root power not integral".into()))?;
            }
            acc = uq.shuffle(&wt, &acc, &pwt, &pw);
            for (x, y) in wt.iter_mut().zip(&pwt) {
                *x += y;
            }
        }
        let v = Arc::new(acc);
        Ok(self.monomial_phi.lock().unwrap().entry(m.to_vec()).or_insert(v).clone())
    }

    /// Plain-word expansion of `F(m)`.
    pub fn probe(&self, m: &[i64]) -> Result<Arc<Probe>> {
        self.check_datum(m)?;
        if let Some(p) = self.probes.lock().unwrap().get(m) {
            return Ok(p.clone());
        }
        let mu = self.weight_of(m);
        let sp = self.uq.space(&mu);
        let datum = self.uq.datum();
        let f = self.f_monomial(m)?;
        let mut vals: BTreeMap<usize, RatScalar> = BTreeMap::new();
        for (w, c) in f.terms() {
            let rev: Vec<u8> = w.letters().into_iter().rev().collect();
            let idx = sp.index_of(&rev).expect("F(m) has weight mu");
            let s = c * &RatScalar::new(LaurentPoly::one(), w.factorial(datum))?;
            *vals.entry(idx).or_insert_with(RatScalar::zero) += &s;
        }
        let mut den = LaurentPoly::one();
        for s in vals.values() {
            let d = s.den();
            if !d.is_one() {
                let g = den.gcd(d);
                den = (&den * d).div_exact(&g).expect("gcd divides");
            }
        }
        let dr = RatScalar::from_poly(den.clone());
        let terms = vals
            .into_iter()
            .filter(|(_, s)| !s.is_zero())
            .map(|(i, s)| (i, (&s * &dr).into_laurent().expect("common denominator")))
            .collect();
        let p = Arc::new(Probe { terms, den });
        Ok(self.probes.lock().unwrap().entry(m.to_vec()).or_insert(p).clone())
    }

    /// `(E(m), F(m))`.
    pub fn norm_pairing(&self, m: &[i64]) -> Result<RatScalar> {
        let mu = self.weight_of(m);
        let v = self.probe(m)?.apply(&self.monomial_phi_prime(m)?);
        Ok(&v * &RatScalar::from_poly(self.uq.norm_factor(&mu)).inv()?)
    }

    /// `f_m = 1 / (E(m), F(m))`, so that `E(m)* = f_m E(m)`.
    pub fn dual_pbw_normalizer(&self, m: &[i64]) -> Result<RatScalar> {
        let p = self.norm_pairing(m)?;
        if p.is_zero() {
            return Err(Error::Convention(format!("(E(m), F(m)) vanishes at {}", render_vec(m))));
        }
        p.inv()
    }

    /// Dual PBW coordinates `(x, F(m))` of a homogeneous `x` of weight `mu`.
    pub fn dual_pbw_coordinates_phi(&self, mu: &[i64], phi: &[RatScalar]) -> Result<Expansion> {
        let mut out = Expansion::new();
        for m in self.data_of_weight(mu) {
            let v = self.probe(&m)?.apply_rat(phi);
            if !v.is_zero() {
                out.insert(m, v);
            }
        }
        Ok(out)
    }

    /// Coordinates of `x` in the dual PBW basis `{E(m)*}`.
    pub fn dual_pbw_coordinates(&self, x: &UPlusExpr) -> Result<Expansion> {
        let mut out = Expansion::new();
        for mu in x.weights(self.uq.rank()) {
            let phi = self.uq.phi(x, &mu);
            out.extend(self.dual_pbw_coordinates_phi(&mu, &phi)?);
        }
        Ok(out)
    }

    /// `x = sum c_m E(m)`, with `c_m = f_m (x, F(m))`.
    pub fn pbw_coordinates(&self, x: &UPlusExpr) -> Result<Expansion> {
        let mut out = Expansion::new();
        for (m, a) in self.dual_pbw_coordinates(x)? {
            let c = &a * &self.dual_pbw_normalizer(&m)?;
            if !c.is_zero() {
                out.insert(m, c);
            }
        }
        Ok(out)
    }

    /// `d(m, n) = sum_{i>j} <b_i, b_j> m_i n_j + 1/2 sum_i <b_i, b_i> m_i n_i`.
    pub fn d_form(&self, m: &[i64], n: &[i64]) -> i64 {
        let datum = self.uq.datum();
        let mut s = 0;
        for i in 0..m.len() {
            if m[i] == 0 {
                continue;
            }
            let bi = self.word.beta(i + 1);
            for j in 0..i {
                if n[j] != 0 {
                    s += datum.form_roots(bi, self.word.beta(j + 1)) * m[i] * n[j];
                }
            }
            s += datum.form_roots(bi, bi) / 2 * m[i] * n[i];
        }
        s
    }

    /// `c(n, m) = d(n, m) - d(m, n)`.
    pub fn c_form(&self, n: &[i64], m: &[i64]) -> i64 {
        self.d_form(n, m) - self.d_form(m, n)
    }

    /// PBW coordinates of `E_{b_k} E_{b_k'} - q^{<b_k, b_k'>} E_{b_k'} E_{b_k}`, `k < k'`.
    pub fn straighten_commutator(&self, k: usize, kp: usize) -> Result<Expansion> {
        if k >= kp || kp > self.len() || k == 0 {
            return Err(Error::InvalidArgument(format!("need 1 <= k < k' <= N, got ({k}, {kp})")));
        }
        if let Some(e) = self.straighten.lock().unwrap().get(&(k, kp)) {
            return Ok(e.clone());
        }
        let datum = self.uq.datum();
        let a = self.root_vector(k)?;
        let b = self.root_vector(kp)?;
        let e = datum.form_roots(self.word.beta(k), self.word.beta(kp));
        let x = a.mul(datum, &b).sub(&b.mul(datum, &a).scale(&RatScalar::q_pow(e)));
        let out = self.pbw_coordinates(&x)?;
        self.straighten.lock().unwrap().insert((k, kp), out.clone());
        Ok(out)
    }

    /// The Ext order on data of weight `mu`.
    pub fn ext_order(&self, mu: &[i64]) -> Result<ExtOrder> {
        let data = self.data_of_weight(mu);
        let index: HashMap<Vec<i64>, usize> = data.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let n = data.len();
        let mut below: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for (ni, d) in data.iter().enumerate() {
            for k in 1..=self.len() {
                if d[k - 1] == 0 {
                    continue;
                }
                for kp in k + 1..=self.len() {
                    if d[kp - 1] == 0 {
                        continue;
                    }
                    for m in self.straighten_commutator(k, kp)?.keys() {
                        let mut c = d.clone();
                        c[k - 1] -= 1;
                        c[kp - 1] -= 1;
                        for (x, y) in c.iter_mut().zip(m) {
                            *x += y;
                        }
                        if let Some(&ci) = index.get(&c) {
                            below[ni].insert(ci);
                        }
                    }
                }
            }
        }
        let mut reach = vec![vec![false; n]; n];
        for s in 0..n {
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                if reach[x][s] {
                    continue;
                }
                reach[x][s] = true;
                stack.extend(below[x].iter().copied());
            }
        }
        Ok(ExtOrder { data, index, reach, covers: below })
    }
}

/// Reachability matrix of the Ext order within one weight space.
#[derive(Clone, Debug)]
pub struct ExtOrder {
    pub data: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    reach: Vec<Vec<bool>>,
    covers: Vec<BTreeSet<usize>>,
}

impl ExtOrder {
    /// `m <= n`.
    pub fn leq(&self, m: &[i64], n: &[i64]) -> bool {
        match (self.index.get(m), self.index.get(n)) {
            (Some(&a), Some(&b)) => self.reach[a][b],
            _ => false,
        }
    }

    /// Generating pairs `(m, n)` with `m` obtained from `n` by one straightening step.
    pub fn generating_pairs(&self) -> Vec<(Vec<i64>, Vec<i64>)> {
        let mut out = Vec::new();
        for (n, below) in self.covers.iter().enumerate() {
            for &m in below {
                out.push((self.data[m].clone(), self.data[n].clone()));
            }
        }
        out
    }
}

/// `sum_k m_k` weighted by root heights.
pub fn datum_height(pbw: &PbwBasis, m: &[i64]) -> i64 {
    pbw.weight_of(m).iter().sum()
}

/// Sign and exponent of a coefficient of the form `+-q^a`.
pub fn signed_monomial(c: &RatScalar) -> Option<(i8, i64)> {
    let p = c.as_laurent()?;
    let (k, e) = p.as_monomial()?;
    if k.is_one() {
        Some((1, e))
    } else if (-k).is_one() {
        Some((-1, e))
    } else {
        None
    }
}

