//! The dual canonical basis `B*` through the twisted bar involution, the
//! lattice `L*`, quantum flag minors and Demazure flags.
//!
//! The twisted involution is `psi(x) = s_mu^{-1} sigma(eta(x))`. On pairing
//! vectors it is the coefficientwise bar, `phi(psi x) = bar(phi(x))`, so the whole
//! computation runs on integral pairing vectors.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::pbw::{rlex_less, Expansion, PbwBasis};
use crate::qea::{UPlusExpr, Uq};
use crate::rootdata::{render_vec, CartanDatum};
use crate::scalars::{LaurentPoly, RatScalar};

/// `s_mu = (-1)^{tr mu} q^{<mu, mu>/2} q^{sum k_i d_i}` for `mu = sum k_i alpha_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenScalar {
    pub weight: Vec<i64>,
    pub sign: i8,
    pub exponent: i64,
}

impl EigenScalar {
    pub fn new(datum: &CartanDatum, mu: &[i64]) -> Self {
        let tr: i64 = mu.iter().sum();
        let qmu: i64 = mu.iter().enumerate().map(|(i, k)| k * datum.d(i + 1)).sum();
        let exponent = datum.form_roots(mu, mu) / 2 + qmu;
        EigenScalar { weight: mu.to_vec(), sign: if tr % 2 == 0 { 1 } else { -1 }, exponent }
    }

    pub fn value(&self) -> RatScalar {
        RatScalar::from_poly(LaurentPoly::monomial(self.sign as i64, self.exponent))
    }
}

/// A homogeneous element of `U_q(n)` in pairing-vector form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiElement {
    pub weight: Vec<i64>,
    pub phi: Vec<LaurentPoly>,
}

impl PhiElement {
    pub fn is_zero(&self) -> bool {
        self.phi.iter().all(|p| p.is_zero())
    }

    pub fn scale(&self, c: &LaurentPoly) -> PhiElement {
        PhiElement { weight: self.weight.clone(), phi: self.phi.iter().map(|p| p * c).collect() }
    }

    pub fn sub(&self, other: &PhiElement) -> PhiElement {
        assert_eq!(self.weight, other.weight);
        PhiElement { weight: self.weight.clone(), phi: self.phi.iter().zip(&other.phi).map(|(a, b)| a - b).collect() }
    }

    /// The pairing vector of `psi(x)`.
    pub fn psi(&self) -> PhiElement {
        PhiElement { weight: self.weight.clone(), phi: self.phi.iter().map(|p| p.bar()).collect() }
    }
}

/// Product and reversed product of two elements.
pub fn multiply_both(uq: &Uq, x: &PhiElement, y: &PhiElement) -> (PhiElement, PhiElement) {
    let (xy, yx) = uq.shuffle_both(&x.weight, &x.phi, &y.weight, &y.phi);
    let w: Vec<i64> = x.weight.iter().zip(&y.weight).map(|(a, b)| a + b).collect();
    (PhiElement { weight: w.clone(), phi: xy }, PhiElement { weight: w, phi: yx })
}

pub fn multiply(uq: &Uq, x: &PhiElement, y: &PhiElement) -> PhiElement {
    let w: Vec<i64> = x.weight.iter().zip(&y.weight).map(|(a, b)| a + b).collect();
    PhiElement { weight: w, phi: uq.shuffle(&x.weight, &x.phi, &y.weight, &y.phi) }
}

/// The dual PBW and dual canonical data of one weight space.
#[derive(Debug)]
pub struct WeightSpace {
    pub weight: Vec<i64>,
    /// Lusztig data, ascending in rlex.
    pub data: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    /// `f_m` with `E(m)* = f_m E(m)`.
    pub normalizers: Vec<RatScalar>,
    /// Pairing vectors of `E(m)*`.
    pub dual_pbw: Vec<Vec<LaurentPoly>>,
    /// `bar_matrix[p][m]`: coefficient of `E(p)*` in `psi(E(m)*)`.
    pub bar_matrix: Vec<Vec<LaurentPoly>>,
    /// `coeffs[p][n]`: coefficient of `E(p)*` in `B(n)*`.
    pub coeffs: Vec<Vec<LaurentPoly>>,
    /// Pairing vectors of `B(n)*`.
    pub canonical: Vec<Vec<LaurentPoly>>,
}

impl WeightSpace {
    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn index_of(&self, m: &[i64]) -> Option<usize> {
        self.index.get(m).copied()
    }
}

/// Dual canonical basis attached to one reduced word of `w_0`.
pub struct DualCanonical {
    pbw: Arc<PbwBasis>,
    spaces: Mutex<HashMap<Vec<i64>, Arc<WeightSpace>>>,
}

impl DualCanonical {
    pub fn new(pbw: Arc<PbwBasis>) -> Self {
        DualCanonical { pbw, spaces: Mutex::default() }
    }

    pub fn pbw(&self) -> &Arc<PbwBasis> {
        &self.pbw
    }

    pub fn uq(&self) -> &Arc<Uq> {
        self.pbw.uq()
    }

    pub fn space(&self, mu: &[i64]) -> Result<Arc<WeightSpace>> {
        if let Some(s) = self.spaces.lock().unwrap().get(mu) {
            return Ok(s.clone());
        }
        let s = Arc::new(self.build_space(mu)?);
        Ok(self.spaces.lock().unwrap().entry(mu.to_vec()).or_insert(s).clone())
    }

    fn build_space(&self, mu: &[i64]) -> Result<WeightSpace> {
        let pbw = &self.pbw;
        let uq = pbw.uq();
        let data = pbw.data_of_weight(mu);
        let n = data.len();
        let index: HashMap<Vec<i64>, usize> = data.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let nf = RatScalar::from_poly(uq.norm_factor(mu));
        let mut normalizers = Vec::with_capacity(n);
        let mut dual_pbw = Vec::with_capacity(n);
        for m in &data {
            let phi = pbw.monomial_phi_prime(m)?;
            let d = pbw.probe(m)?.apply(&phi);
            if d.is_zero() {
                return Err(Error::Convention(format!("(E(m), F(m)) vanishes at {}", render_vec(m))));
            }
            let inv = d.inv()?;
            normalizers.push(&nf * &inv);
            let v = phi
                .iter()
                .map(|p| (&RatScalar::from_poly(p.clone()) * &inv).into_laurent())
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::Convention(format!("dual PBW element {} is not integral", render_vec(m))))?;
            dual_pbw.push(v);
        }
        let probes = data.iter().map(|m| pbw.probe(m)).collect::<Result<Vec<_>>>()?;
        let mut bar_matrix = vec![vec![LaurentPoly::zero(); n]; n];
        for (mi, m) in data.iter().enumerate() {
            let x = PhiElement { weight: mu.to_vec(), phi: dual_pbw[mi].clone() }.psi();
            for (pi, p) in data.iter().enumerate() {
                let r = probes[pi].apply(&x.phi);
                if r.is_zero() {
                    continue;
                }
                let r = r
                    .into_laurent()
                    .ok_or_else(|| Error::NotUnitriangular(format!("{} (non-integral entry)", render_vec(m))))?;
                if pi == mi && !r.is_one() {
                    return Err(Error::NotUnitriangular(format!("{} (diagonal {r})", render_vec(m))));
                }
                if pi != mi && !rlex_less(p, m) {
                    return Err(Error::NotUnitriangular(format!("{} (entry at {})", render_vec(m), render_vec(p))));
                }
                bar_matrix[pi][mi] = r;
            }
            if bar_matrix[mi][mi].is_zero() {
                return Err(Error::NotUnitriangular(format!("{} (zero diagonal)", render_vec(m))));
            }
        }
        let coeffs = solve_triangular(&data, &bar_matrix)?;
        let len = uq.space(mu).len();
        let canonical = (0..n)
            .map(|ni| {
                let mut v = vec![LaurentPoly::zero(); len];
                for pi in 0..=ni {
                    let c = &coeffs[pi][ni];
                    if c.is_zero() {
                        continue;
                    }
                    for (slot, x) in v.iter_mut().zip(&dual_pbw[pi]) {
                        if !x.is_zero() {
                            *slot += &(c * x);
                        }
                    }
                }
                v
            })
            .collect();
        Ok(WeightSpace { weight: mu.to_vec(), data, index, normalizers, dual_pbw, bar_matrix, coeffs, canonical })
    }

    fn locate(&self, m: &[i64]) -> Result<(Arc<WeightSpace>, usize)> {
        if m.len() != self.pbw.len() || m.iter().any(|&x| x < 0) {
            return Err(Error::InvalidArgument(format!("datum {} does not fit the word", render_vec(m))));
        }
        let s = self.space(&self.pbw.weight_of(m))?;
        let i = s.index_of(m).expect("datum lies in its weight space");
        Ok((s, i))
    }

    /// `E(m)*` as a pairing vector.
    pub fn dual_pbw_element(&self, m: &[i64]) -> Result<PhiElement> {
        let (s, i) = self.locate(m)?;
        Ok(PhiElement { weight: s.weight.clone(), phi: s.dual_pbw[i].clone() })
    }

    /// `B(m)*` as a pairing vector.
    pub fn element(&self, m: &[i64]) -> Result<PhiElement> {
        let (s, i) = self.locate(m)?;
        Ok(PhiElement { weight: s.weight.clone(), phi: s.canonical[i].clone() })
    }

    /// `B(n)* = sum_m c_mn E(m)*`.
    pub fn dual_pbw_expansion(&self, n: &[i64]) -> Result<Expansion> {
        let (s, ni) = self.locate(n)?;
        Ok((0..=ni)
            .filter(|&p| !s.coeffs[p][ni].is_zero())
            .map(|p| (s.data[p].clone(), RatScalar::from_poly(s.coeffs[p][ni].clone())))
            .collect())
    }

    /// `B(n)*` written through PBW monomials: `sum_m c_mn f_m E(m)`.
    pub fn element_expr(&self, n: &[i64]) -> Result<UPlusExpr> {
        let (s, ni) = self.locate(n)?;
        let mut out = UPlusExpr::zero();
        for p in 0..=ni {
            let c = &s.coeffs[p][ni];
            if c.is_zero() {
                continue;
            }
            let k = &RatScalar::from_poly(c.clone()) * &s.normalizers[p];
            out = out.add(&self.pbw.pbw_monomial(&s.data[p])?.scale(&k));
        }
        Ok(out)
    }

    /// `(x, F(m))` for every datum of the weight.
    pub fn dual_pbw_coordinates(&self, x: &PhiElement) -> Result<Vec<RatScalar>> {
        let s = self.space(&x.weight)?;
        s.data.iter().map(|m| Ok(self.pbw.probe(m)?.apply(&x.phi))).collect()
    }

    /// Coordinates in `B*` from dual PBW coordinates (vector over `data`).
    pub fn canonical_from_dual_pbw(&self, mu: &[i64], a: &[RatScalar]) -> Result<Vec<RatScalar>> {
        let s = self.space(mu)?;
        let n = s.len();
        let mut b = vec![RatScalar::zero(); n];
        for m in (0..n).rev() {
            let mut v = a[m].clone();
            for j in m + 1..n {
                let c = &s.coeffs[m][j];
                if !c.is_zero() && !b[j].is_zero() {
                    v -= &(&RatScalar::from_poly(c.clone()) * &b[j]);
                }
            }
            b[m] = v;
        }
        Ok(b)
    }

    /// Coordinates of `x` in `B*`.
    pub fn canonical_coordinates(&self, x: &PhiElement) -> Result<Expansion> {
        let a = self.dual_pbw_coordinates(x)?;
        let b = self.canonical_from_dual_pbw(&x.weight, &a)?;
        let s = self.space(&x.weight)?;
        Ok(s.data.iter().cloned().zip(b).filter(|(_, c)| !c.is_zero()).collect())
    }

    /// Coordinates of a `U_q(n)` expression in `B*`, all weights.
    pub fn expand_dual_canonical(&self, x: &UPlusExpr) -> Result<Expansion> {
        let uq = self.uq();
        let mut out = Expansion::new();
        for mu in x.weights(uq.rank()) {
            let phi = uq.phi(x, &mu);
            let a: Vec<RatScalar> = self
                .space(&mu)?
                .data
                .iter()
                .map(|m| Ok(self.pbw.probe(m)?.apply_rat(&phi)))
                .collect::<Result<_>>()?;
            let b = self.canonical_from_dual_pbw(&mu, &a)?;
            let s = self.space(&mu)?;
            out.extend(s.data.iter().cloned().zip(b).filter(|(_, c)| !c.is_zero()));
        }
        Ok(out)
    }

    /// Dual PBW coordinates of a `U_q(n)` expression, all weights.
    pub fn expand_dual_pbw(&self, x: &UPlusExpr) -> Result<Expansion> {
        self.pbw.dual_pbw_coordinates(x)
    }

    /// If `x = c B(m)*` for a single `m`, returns `(m, c)`.
    pub fn match_dual_canonical(&self, x: &PhiElement) -> Result<Option<(Vec<i64>, RatScalar)>> {
        let e = self.canonical_coordinates(x)?;
        if e.len() != 1 {
            return Ok(None);
        }
        Ok(e.into_iter().next())
    }

    /// `x` lies in `qL*`: every dual PBW coordinate is in `qZ[q]`.
    pub fn in_q_lattice(&self, x: &PhiElement) -> Result<bool> {
        Ok(self.dual_pbw_coordinates(x)?.iter().all(|c| c.is_in_qzq()))
    }

    /// `x - y` lies in `qL*`.
    pub fn congruent_mod_ql(&self, x: &PhiElement, y: &PhiElement) -> Result<bool> {
        self.in_q_lattice(&x.sub(y))
    }

    /// `n_w = sum e_l` over `l <= k` with `i_l = i_k`.
    pub fn flag_datum(&self, k: usize) -> Result<Vec<i64>> {
        let w = self.pbw.word();
        if k == 0 || k > w.len() {
            return Err(Error::IndexOutOfRange(k));
        }
        let ik = w.letter(k);
        Ok((1..=w.len()).map(|l| i64::from(l <= k && w.letter(l) == ik)).collect())
    }

    /// The flag minor of the prefix of length `k`: its datum and `B(n)*`.
    pub fn flag_minor(&self, k: usize) -> Result<(Vec<i64>, PhiElement)> {
        let n = self.flag_datum(k)?;
        let e = self.element(&n)?;
        let w = self.pbw.word();
        let expect = self.uq().datum().minor_weight(&w.word()[..k], w.letter(k));
        if e.weight != expect {
            return Err(Error::Convention(format!("flag minor weight {} differs from {}", render_vec(&e.weight), render_vec(&expect))));
        }
        Ok((n, e))
    }
}

/// `m` is supported on the first `k` coordinates.
pub fn demazure_flag(m: &[i64], k: usize) -> bool {
    m.iter().skip(k).all(|&x| x == 0)
}

/// Solves `c_pn - bar(c_pn) = sum_{m != p} r_pm bar(c_mn)` with `c_nn = 1` and
/// `c_pn` in `qZ[q]`, processing `p` downwards from `n`.
fn solve_triangular(data: &[Vec<i64>], r: &[Vec<LaurentPoly>]) -> Result<Vec<Vec<LaurentPoly>>> {
    let n = data.len();
    let mut c = vec![vec![LaurentPoly::zero(); n]; n];
    for col in 0..n {
        c[col][col] = LaurentPoly::one();
        for p in (0..col).rev() {
            let mut rhs = LaurentPoly::zero();
            for m in p + 1..=col {
                if r[p][m].is_zero() || c[m][col].is_zero() {
                    continue;
                }
                rhs += &(&r[p][m] * &c[m][col].bar());
            }
            let x = rhs.positive_part();
            if rhs != &x - &x.bar() {
                return Err(Error::NoSolution(render_vec(&data[col])));
            }
            c[p][col] = x;
        }
    }
    Ok(c)
}
