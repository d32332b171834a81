//! Exact arithmetic in `Z[q, q^-1]` and its fraction field `Q(q)`.
//!
//! [`LaurentPoly`] stores only nonzero terms, sorted by exponent. [`RatScalar`]
//! keeps a reduced fraction whose denominator is an ordinary polynomial in `q`
//! with positive constant term, so equal values are structurally equal.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A Laurent polynomial with arbitrary-precision integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: Vec<(i64, BigInt)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        let c = c.into();
        if c.is_zero() {
            Self::zero()
        } else {
            Self { terms: vec![(e, c)] }
        }
    }

    /// `q^e`.
    pub fn q_pow(e: i64) -> Self {
        Self::monomial(1, e)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// Builds from arbitrary (exponent, coefficient) pairs, merging duplicates.
    pub fn from_terms<I, C>(it: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut v: Vec<(i64, BigInt)> = it.into_iter().map(|(e, c)| (e, c.into())).collect();
        v.sort_by_key(|t| t.0);
        let mut out: Vec<(i64, BigInt)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        Self { terms: out }
    }

    pub fn terms(&self) -> &[(i64, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.first().map(|t| t.0)
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.last().map(|t| t.0)
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        match self.terms.binary_search_by_key(&e, |t| t.0) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    /// Returns `(c, e)` if the polynomial is a single term `c q^e`.
    pub fn as_monomial(&self) -> Option<(&BigInt, i64)> {
        match self.terms.as_slice() {
            [(e, c)] => Some((c, *e)),
            _ => None,
        }
    }

    /// Multiplies by `q^e`.
    pub fn shift(&self, e: i64) -> Self {
        Self { terms: self.terms.iter().map(|(x, c)| (x + e, c.clone())).collect() }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect() }
    }

    /// `q -> q^-1`.
    pub fn bar(&self) -> Self {
        Self { terms: self.terms.iter().rev().map(|(e, c)| (-e, c.clone())).collect() }
    }

    pub fn is_bar_invariant(&self) -> bool {
        *self == self.bar()
    }

    /// Terms with positive exponent.
    pub fn positive_part(&self) -> Self {
        Self { terms: self.terms.iter().filter(|t| t.0 > 0).cloned().collect() }
    }

    /// True iff the polynomial lies in `qZ[q]`.
    pub fn is_in_qzq(&self) -> bool {
        self.min_exp().is_none_or(|e| e > 0)
    }

    /// True iff the polynomial lies in `Z[q]`.
    pub fn is_in_zq(&self) -> bool {
        self.min_exp().is_none_or(|e| e >= 0)
    }

    /// `self += c * q^e * other`.
    pub fn add_scaled_shifted(&mut self, other: &Self, c: &BigInt, e: i64) {
        if other.is_zero() || c.is_zero() {
            return;
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = std::mem::take(&mut self.terms).into_iter().peekable();
        let mut b = other.terms.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => match x.0.cmp(&(y.0 + e)) {
                    Ordering::Less => out.push(a.next().unwrap()),
                    Ordering::Greater => {
                        let y = b.next().unwrap();
                        out.push((y.0 + e, &y.1 * c));
                    }
                    Ordering::Equal => {
                        let (ex, mut cx) = a.next().unwrap();
                        let y = b.next().unwrap();
                        cx += &y.1 * c;
                        if !cx.is_zero() {
                            out.push((ex, cx));
                        }
                    }
                },
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, Some(_)) => {
                    let y = b.next().unwrap();
                    out.push((y.0 + e, &y.1 * c));
                }
                (None, None) => break,
            }
        }
        self.terms = out;
    }

    /// Evaluates at an integer point modulo `p` (`q` must be invertible mod `p`).
    pub fn eval_mod(&self, q: u64, q_inv: u64, p: u64) -> u64 {
        let mut acc: u128 = 0;
        for (e, c) in &self.terms {
            let base = if *e >= 0 { q } else { q_inv };
            let pw = pow_mod(base, e.unsigned_abs(), p) as u128;
            let cm = c.mod_floor(&BigInt::from(p));
            let cm: u64 = cm.try_into().unwrap_or(0);
            acc = (acc + pw * cm as u128) % p as u128;
        }
        acc as u64
    }

    /// Exact quotient, or `None` if `d` does not divide `self` in `Z[q, q^-1]`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some((c, e)) = d.as_monomial() {
            let mut terms = Vec::with_capacity(self.terms.len());
            for (x, a) in &self.terms {
                let (qt, r) = a.div_rem(c);
                if !r.is_zero() {
                    return None;
                }
                terms.push((x - e, qt));
            }
            return Some(Self { terms });
        }
        let (sa, a) = self.to_dense();
        let (sd, b) = d.to_dense();
        let q = dense_div_exact(&a, &b)?;
        Some(Self::from_dense(sa - sd, q))
    }

    /// Dense ascending coefficients after factoring out `q^min`.
    fn to_dense(&self) -> (i64, Vec<BigInt>) {
        let lo = self.min_exp().unwrap_or(0);
        let hi = self.max_exp().unwrap_or(0);
        let mut v = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            v[(e - lo) as usize] = c.clone();
        }
        (lo, v)
    }

    fn from_dense(shift: i64, v: Vec<BigInt>) -> Self {
        Self {
            terms: v
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i as i64 + shift, c))
                .collect(),
        }
    }

    /// Greatest common divisor, normalized as a polynomial with positive constant term.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.normalize_unit().0;
        }
        if other.is_zero() {
            return self.normalize_unit().0;
        }
        let (_, a) = self.to_dense();
        let (_, b) = other.to_dense();
        Self::from_dense(0, dense_gcd(&a, &b))
    }

    /// Splits `self = u * p` with `u = ±q^k` and `p` a polynomial with positive constant term.
    fn normalize_unit(&self) -> (Self, i64, bool) {
        let Some(lo) = self.min_exp() else {
            return (Self::zero(), 0, false);
        };
        let neg = self.terms[0].1.is_negative();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e - lo, if neg { -c } else { c.clone() }))
            .collect();
        (Self { terms }, lo, neg)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }
}

fn pow_mod(b: u64, mut e: u64, p: u64) -> u64 {
    let m = p as u128;
    let mut r: u128 = 1;
    let mut bb = (b % p) as u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * bb % m;
        }
        bb = bb * bb % m;
        e >>= 1;
    }
    r as u64
}

fn trim(v: &mut Vec<BigInt>) {
    while v.len() > 1 && v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn dense_div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut r = a.to_vec();
    trim(&mut r);
    let mut b = b.to_vec();
    trim(&mut b);
    let db = b.len() - 1;
    if r.len() < b.len() {
        return if r.iter().all(|c| c.is_zero()) { Some(vec![]) } else { None };
    }
    let lb = b[db].clone();
    let mut q = vec![BigInt::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let top = &r[i + db];
        if top.is_zero() {
            continue;
        }
        let (qt, rem) = top.div_rem(&lb);
        if !rem.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= &qt * bj;
        }
        q[i] = qt;
    }
    if r.iter().all(|c| c.is_zero()) {
        Some(q)
    } else {
        None
    }
}

fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let c = content(v);
    if c.is_zero() || c.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &c).collect()
}

fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lb = &b[db];
    while r.iter().any(|c| !c.is_zero()) && r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bj) in b.iter().enumerate() {
            r[dr - db + j] -= &lr * bj;
        }
        r.pop();
        trim(&mut r);
    }
    r
}

/// Primitive PRS gcd over `Z[q]`; the result has positive leading coefficient.
fn dense_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let g = content(a).gcd(&content(b));
    let mut x = primitive(a);
    let mut y = primitive(b);
    trim(&mut x);
    trim(&mut y);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while y.iter().any(|c| !c.is_zero()) {
        if y.len() == 1 {
            x = vec![BigInt::one()];
            break;
        }
        let r = pseudo_rem(&x, &y);
        x = y;
        y = primitive(&r);
        trim(&mut y);
    }
    let mut out: Vec<BigInt> = x.iter().map(|c| c * &g).collect();
    if out.last().is_some_and(|c| c.is_negative()) {
        for c in out.iter_mut() {
            *c = -&*c;
        }
    }
    // strip a q-power factor; units of Z[q, q^-1] are irrelevant here
    let lead_zeros = out.iter().take_while(|c| c.is_zero()).count();
    out.drain(..lead_zeros);
    if out.first().is_some_and(|c| c.is_negative()) {
        for c in out.iter_mut() {
            *c = -&*c;
        }
    }
    out
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            match (*e, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "q")?,
                (e, true) => write!(f, "q^{e}")?,
                (1, false) => write!(f, "{a}*q")?,
                (e, false) => write!(f, "{a}*q^{e}")?,
            }
        }
        Ok(())
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out.add_scaled_shifted(rhs, &BigInt::one(), 0);
        out
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out.add_scaled_shifted(rhs, &-BigInt::one(), 0);
        out
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        if self.terms.len() == 1 {
            let (e, c) = &self.terms[0];
            return LaurentPoly { terms: rhs.terms.iter().map(|(x, d)| (x + e, d * c)).collect() };
        }
        if rhs.terms.len() == 1 {
            return rhs * self;
        }
        let lo = self.terms[0].0 + rhs.terms[0].0;
        let hi = self.terms.last().unwrap().0 + rhs.terms.last().unwrap().0;
        let mut dense = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                dense[(ea + eb - lo) as usize] += ca * cb;
            }
        }
        LaurentPoly::from_dense(lo, dense)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        self.add_scaled_shifted(rhs, &BigInt::one(), 0);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        self.add_scaled_shifted(rhs, &-BigInt::one(), 0);
    }
}

macro_rules! forward_owned {
    ($ty:ty, $tr:ident, $m:ident) => {
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: &$ty) -> $ty {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(LaurentPoly, Add, add);
forward_owned!(LaurentPoly, Sub, sub);
forward_owned!(LaurentPoly, Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

/// `[k]_{q_a}` with `q_a = q^{norm/2}`.
pub fn quantum_integer(k: i64, norm: i64) -> Result<LaurentPoly> {
    if k <= 0 {
        return Err(Error::InvalidArgument(format!("quantum integer needs k > 0, got {k}")));
    }
    if norm <= 0 || norm % 2 != 0 {
        return Err(Error::InvalidArgument(format!("root norm must be even and positive, got {norm}")));
    }
    let d = norm / 2;
    Ok(LaurentPoly::from_terms((0..k).map(|j| (d * (k - 1 - 2 * j), 1))))
}

/// `[k]_{q_a}!`, with `[0]! = 1`.
pub fn quantum_factorial(k: i64, norm: i64) -> Result<LaurentPoly> {
    let mut acc = LaurentPoly::one();
    for j in 1..=k {
        acc = &acc * &quantum_integer(j, norm)?;
    }
    if k == 0 && (norm <= 0 || norm % 2 != 0) {
        quantum_integer(1, norm)?;
    }
    Ok(acc)
}

/// Gaussian binomial `[a+b choose a]_{q_a}`, a Laurent polynomial.
pub fn quantum_binomial(n: i64, k: i64, norm: i64) -> Result<LaurentPoly> {
    let num = quantum_factorial(n, norm)?;
    let den = &quantum_factorial(k, norm)? * &quantum_factorial(n - k, norm)?;
    num.div_exact(&den)
        .ok_or_else(|| Error::Convention("quantum binomial not integral".into()))
}

/// An element of `Q(q)` as a reduced fraction of Laurent polynomials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatScalar {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Default for RatScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl RatScalar {
    pub fn zero() -> Self {
        Self { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn q_pow(e: i64) -> Self {
        Self::from_poly(LaurentPoly::q_pow(e))
    }

    pub fn from_int(c: impl Into<BigInt>) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self { num: p, den: LaurentPoly::one() }
    }

    /// `num / den`, reduced and normalized.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (den_p, shift, neg) = den.normalize_unit();
        let mut num = num.shift(-shift);
        if neg {
            num = -num;
        }
        if den_p.is_one() {
            return Self { num, den: den_p };
        }
        let g = num.gcd(&den_p);
        if g.is_one() {
            return Self { num, den: den_p };
        }
        let num = num.div_exact(&g).expect("gcd divides numerator");
        let den = den_p.div_exact(&g).expect("gcd divides denominator");
        let (den, shift, neg) = den.normalize_unit();
        let mut num = num.shift(-shift);
        if neg {
            num = -num;
        }
        Self { num, den }
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    /// The value as a Laurent polynomial, if the denominator is a unit.
    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn into_laurent(self) -> Option<LaurentPoly> {
        self.den.is_one().then_some(self.num)
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    /// `q -> q^-1`, renormalized.
    pub fn bar(&self) -> Self {
        if self.den.is_one() {
            return Self::from_poly(self.num.bar());
        }
        Self::reduce(self.num.bar(), self.den.bar())
    }

    /// Value at `q = 0`.
    pub fn eval_at_zero(&self) -> Result<BigRational> {
        let nmin = self.num.min_exp().unwrap_or(0);
        if !self.num.is_zero() && nmin < 0 {
            return Err(Error::PoleAtZero);
        }
        Ok(BigRational::new(self.num.coeff(0), self.den.coeff(0)))
    }

    /// True iff the value lies in `qZ[q]`.
    pub fn is_in_qzq(&self) -> bool {
        self.den.is_one() && self.num.is_in_qzq()
    }

    /// True iff the value lies in `Z[q]`.
    pub fn is_in_zq(&self) -> bool {
        self.den.is_one() && self.num.is_in_zq()
    }

    pub fn shift(&self, e: i64) -> Self {
        Self { num: self.num.shift(e), den: self.den.clone() }
    }

    /// If `self = ±q^a * other` (nonzero), returns `(sign, a)`.
    pub fn monomial_ratio(&self, other: &Self) -> Option<(i8, i64)> {
        if self.is_zero() || other.is_zero() {
            return None;
        }
        let r = self * &other.inv().ok()?;
        let p = r.as_laurent()?;
        let (c, e) = p.as_monomial()?;
        if c.is_one() {
            Some((1, e))
        } else if (-c).is_one() {
            Some((-1, e))
        } else {
            None
        }
    }
}

impl From<LaurentPoly> for RatScalar {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl fmt::Debug for RatScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RatScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Add<&RatScalar> for &RatScalar {
    type Output = RatScalar;
    fn add(self, rhs: &RatScalar) -> RatScalar {
        if self.den.is_one() && rhs.den.is_one() {
            return RatScalar::from_poly(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            return RatScalar::reduce(&self.num + &rhs.num, self.den.clone());
        }
        RatScalar::reduce(&self.num * &rhs.den + &rhs.num * &self.den, &self.den * &rhs.den)
    }
}

impl Sub<&RatScalar> for &RatScalar {
    type Output = RatScalar;
    fn sub(self, rhs: &RatScalar) -> RatScalar {
        self + &(-rhs)
    }
}

impl Mul<&RatScalar> for &RatScalar {
    type Output = RatScalar;
    fn mul(self, rhs: &RatScalar) -> RatScalar {
        if self.den.is_one() && rhs.den.is_one() {
            return RatScalar::from_poly(&self.num * &rhs.num);
        }
        RatScalar::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RatScalar {
    type Output = RatScalar;
    fn neg(self) -> RatScalar {
        RatScalar { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RatScalar {
    type Output = RatScalar;
    fn neg(self) -> RatScalar {
        -&self
    }
}

impl AddAssign<&RatScalar> for RatScalar {
    fn add_assign(&mut self, rhs: &RatScalar) {
        if self.den.is_one() && rhs.den.is_one() {
            self.num += &rhs.num;
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&RatScalar> for RatScalar {
    fn sub_assign(&mut self, rhs: &RatScalar) {
        *self += &-rhs;
    }
}

forward_owned!(RatScalar, Add, add);
forward_owned!(RatScalar, Sub, sub);
forward_owned!(RatScalar, Mul, mul);

/// Free-function form of [`RatScalar::bar`].
pub fn bar(s: &RatScalar) -> RatScalar {
    s.bar()
}

/// Free-function form of [`RatScalar::eval_at_zero`].
pub fn eval_at_zero(s: &RatScalar) -> Result<BigRational> {
    s.eval_at_zero()
}

/// Free-function form of [`RatScalar::is_in_qzq`].
pub fn is_in_qzq(s: &RatScalar) -> bool {
    s.is_in_qzq()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(t: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(t.iter().copied())
    }

    #[test]
    fn render() {
        assert_eq!(lp(&[(-1, 1), (0, 2), (3, 1)]).to_string(), "q^-1 + 2 + q^3");
        assert_eq!(lp(&[(1, -2), (2, 1)]).to_string(), "-2*q + q^2");
        let r = RatScalar::new(LaurentPoly::one(), lp(&[(0, 1), (1, 1)])).unwrap();
        assert_eq!(r.to_string(), "(1)/(1 + q)");
    }

    #[test]
    fn normalization() {
        // 1/(1 - q^-2) = q^2/(q^2 - 1) = -q^2/(1 - q^2)
        let r = RatScalar::new(LaurentPoly::one(), lp(&[(0, 1), (-2, -1)])).unwrap();
        assert_eq!(r.den(), &lp(&[(0, 1), (2, -1)]));
        assert_eq!(r.num(), &lp(&[(2, -1)]));
        let a = RatScalar::new(lp(&[(0, 2), (1, 2)]), lp(&[(0, 4), (2, -4)])).unwrap();
        let b = RatScalar::new(LaurentPoly::one(), lp(&[(0, 2), (1, -2)])).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn div_and_gcd() {
        let a = lp(&[(0, 1), (1, 1)]);
        let b = lp(&[(0, 1), (1, -1)]);
        let p = &a * &b;
        assert_eq!(p.div_exact(&a), Some(b.clone()));
        assert_eq!(p.gcd(&a), a);
        assert!(a.div_exact(&b).is_none());
    }

    #[test]
    fn quantum_numbers() {
        assert_eq!(quantum_integer(2, 2).unwrap(), lp(&[(-1, 1), (1, 1)]));
        assert_eq!(quantum_integer(2, 4).unwrap(), lp(&[(-2, 1), (2, 1)]));
        assert_eq!(quantum_binomial(4, 2, 2).unwrap(), lp(&[(-4, 1), (-2, 1), (0, 2), (2, 1), (4, 1)]));
        assert!(quantum_integer(0, 2).is_err());
        assert!(quantum_integer(1, 3).is_err());
    }
}
