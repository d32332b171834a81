//! Cartan data, the invariant form, Weyl group words and convex orderings.
//!
//! Simple roots and vertices are indexed from 1, as in the CLI. Vector
//! coordinates are stored in plain `Vec`s, position `i - 1` holding the
//! coefficient of `alpha_i` (or `varpi_i`).
//!
//! B2 uses `alpha_1` short and `alpha_2` long; short roots have norm 2.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::Zero;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CartanType {
    A(usize),
    B2,
    D4,
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CartanType::A(n) => write!(f, "A{n}"),
            CartanType::B2 => write!(f, "B2"),
            CartanType::D4 => write!(f, "D4"),
        }
    }
}

impl FromStr for CartanType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A1" => Ok(CartanType::A(1)),
            "A2" => Ok(CartanType::A(2)),
            "A3" => Ok(CartanType::A(3)),
            "A4" => Ok(CartanType::A(4)),
            "B2" => Ok(CartanType::B2),
            "D4" => Ok(CartanType::D4),
            _ => Err(Error::InvalidArgument(format!("unsupported type label `{s}`"))),
        }
    }
}

impl CartanType {
    pub fn is_simply_laced(self) -> bool {
        !matches!(self, CartanType::B2)
    }
}

/// Coordinates in the simple-root basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootVector(pub Vec<i64>);

/// Coordinates in the fundamental-weight basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVector(pub Vec<i64>);

/// Either kind of vector, for operations accepting both.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Vector {
    Root(RootVector),
    Weight(WeightVector),
}

impl From<RootVector> for Vector {
    fn from(v: RootVector) -> Self {
        Vector::Root(v)
    }
}

impl From<WeightVector> for Vector {
    fn from(v: WeightVector) -> Self {
        Vector::Weight(v)
    }
}

impl RootVector {
    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_vec(&self.0))
    }
}

/// `[1,0,1]`.
pub fn render_vec<T: fmt::Display>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

/// A Cartan datum with its symmetrized form and positive roots.
#[derive(Clone, Debug)]
pub struct CartanDatum {
    ty: CartanType,
    a: Vec<Vec<i64>>,
    d: Vec<i64>,
    form: Vec<Vec<i64>>,
    positive_roots: Vec<Vec<i64>>,
    longest: Vec<usize>,
}

impl PartialEq for CartanDatum {
    fn eq(&self, other: &Self) -> bool {
        self.ty == other.ty
    }
}

impl Eq for CartanDatum {}

impl CartanDatum {
    pub fn new(ty: CartanType) -> Result<Self> {
        let (a, d) = match ty {
            CartanType::A(n) if (1..=4).contains(&n) => {
                let mut a = vec![vec![0; n]; n];
                for i in 0..n {
                    a[i][i] = 2;
                    if i + 1 < n {
                        a[i][i + 1] = -1;
                        a[i + 1][i] = -1;
                    }
                }
                (a, vec![1; n])
            }
            CartanType::A(n) => {
                return Err(Error::InvalidArgument(format!("type A{n} outside supported range")))
            }
            CartanType::B2 => (vec![vec![2, -2], vec![-1, 2]], vec![1, 2]),
            CartanType::D4 => {
                let mut a = vec![vec![0; 4]; 4];
                for i in 0..4 {
                    a[i][i] = 2;
                }
                for j in [0, 2, 3] {
                    a[1][j] = -1;
                    a[j][1] = -1;
                }
                (a, vec![1; 4])
            }
        };
        let n = a.len();
        let form: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| d[i] * a[i][j]).collect()).collect();
        let mut datum = CartanDatum { ty, a, d, form, positive_roots: Vec::new(), longest: Vec::new() };
        datum.positive_roots = datum.compute_positive_roots();
        datum.longest = datum.greedy_longest();
        Ok(datum)
    }

    pub fn from_label(label: &str) -> Result<Self> {
        Self::new(label.parse()?)
    }

    pub fn cartan_type(&self) -> CartanType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.a.len()
    }

    /// `a_ij` for 1-based `i, j`.
    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        self.a[i - 1][j - 1]
    }

    /// Symmetrizer `d_i`; `(alpha_i, alpha_i) = 2 d_i`.
    pub fn d(&self, i: usize) -> i64 {
        self.d[i - 1]
    }

    pub fn form_matrix(&self) -> &[Vec<i64>] {
        &self.form
    }

    /// `(alpha_i, alpha_j)` for 1-based indices.
    pub fn form_simple(&self, i: usize, j: usize) -> i64 {
        self.form[i - 1][j - 1]
    }

    /// The form on root coordinates.
    pub fn form_roots(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut s = 0;
        for (i, xi) in x.iter().enumerate() {
            if *xi == 0 {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                s += xi * yj * self.form[i][j];
            }
        }
        s
    }

    /// `(x, alpha_i)` for root coordinates `x`.
    pub fn form_with_simple(&self, x: &[i64], i: usize) -> i64 {
        x.iter().zip(&self.form).map(|(c, row)| c * row[i - 1]).sum()
    }

    fn check_len(&self, v: &[i64]) -> Result<()> {
        if v.len() == self.rank() {
            Ok(())
        } else {
            Err(Error::DatumMismatch)
        }
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if (1..=self.rank()).contains(&i) {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange(i))
        }
    }

    /// Root coordinates of a weight, over the rationals.
    pub fn weight_to_root(&self, w: &WeightVector) -> Result<Vec<Rational64>> {
        self.check_len(&w.0)?;
        // solve A^T c = lambda, where lambda_i = <lambda, alpha_i^vee> = sum_j c_j a_ij
        let n = self.rank();
        let mut m: Vec<Vec<Rational64>> = (0..n)
            .map(|i| {
                let mut row: Vec<Rational64> = (0..n).map(|j| Rational64::from(self.a[i][j])).collect();
                row.push(Rational64::from(w.0[i]));
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| !m[r][col].is_zero()).expect("Cartan matrix is invertible");
            m.swap(col, piv);
            let p = m[col][col];
            for x in m[col].iter_mut() {
                *x /= p;
            }
            for r in 0..n {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col];
                    let pivot_row = m[col].clone();
                    for (x, y) in m[r].iter_mut().zip(pivot_row) {
                        *x -= f * y;
                    }
                }
            }
        }
        Ok(m.into_iter().map(|row| row[n]).collect())
    }

    /// Weight coordinates of a root vector.
    pub fn root_to_weight(&self, r: &RootVector) -> Result<WeightVector> {
        self.check_len(&r.0)?;
        let n = self.rank();
        Ok(WeightVector((0..n).map(|i| (0..n).map(|j| self.a[i][j] * r.0[j]).sum()).collect()))
    }

    fn rational_coords(&self, v: &Vector) -> Result<Vec<Rational64>> {
        match v {
            Vector::Root(r) => {
                self.check_len(&r.0)?;
                Ok(r.0.iter().map(|&c| Rational64::from(c)).collect())
            }
            Vector::Weight(w) => self.weight_to_root(w),
        }
    }

    /// The invariant form `<x, y>`. Integral on roots; rational on general weights.
    pub fn form(&self, x: &Vector, y: &Vector) -> Result<Rational64> {
        let a = self.rational_coords(x)?;
        let b = self.rational_coords(y)?;
        let mut s = Rational64::zero();
        for (i, ai) in a.iter().enumerate() {
            for (j, bj) in b.iter().enumerate() {
                s += ai * bj * Rational64::from(self.form[i][j]);
            }
        }
        Ok(s)
    }

    /// `s_i` on root coordinates.
    pub fn reflect_root(&self, i: usize, x: &mut [i64]) {
        let c: i64 = (0..self.rank()).map(|j| self.a[i - 1][j] * x[j]).sum();
        x[i - 1] -= c;
    }

    /// `s_i` on weight coordinates.
    pub fn reflect_weight(&self, i: usize, x: &mut [i64]) {
        let c = x[i - 1];
        for (j, xj) in x.iter_mut().enumerate() {
            *xj -= c * self.a[j][i - 1];
        }
    }

    /// `s_{i_1} ... s_{i_k}(x)`: the last letter acts first.
    pub fn weyl_act(&self, word: &[usize], x: &Vector) -> Result<Vector> {
        for &i in word {
            self.check_index(i)?;
        }
        match x {
            Vector::Root(r) => {
                self.check_len(&r.0)?;
                let mut v = r.0.clone();
                for &i in word.iter().rev() {
                    self.reflect_root(i, &mut v);
                }
                Ok(Vector::Root(RootVector(v)))
            }
            Vector::Weight(w) => {
                self.check_len(&w.0)?;
                let mut v = w.0.clone();
                for &i in word.iter().rev() {
                    self.reflect_weight(i, &mut v);
                }
                Ok(Vector::Weight(WeightVector(v)))
            }
        }
    }

    /// Root-coordinate action, for internal callers with valid input.
    pub fn act_root(&self, word: &[usize], x: &[i64]) -> Vec<i64> {
        let mut v = x.to_vec();
        for &i in word.iter().rev() {
            self.reflect_root(i, &mut v);
        }
        v
    }

    pub fn simple_root(&self, i: usize) -> Vec<i64> {
        let mut v = vec![0; self.rank()];
        v[i - 1] = 1;
        v
    }

    fn compute_positive_roots(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut stack: Vec<Vec<i64>> = (1..=n).map(|i| self.simple_root(i)).collect();
        while let Some(r) = stack.pop() {
            if !seen.insert(r.clone()) {
                continue;
            }
            for i in 1..=n {
                let mut s = r.clone();
                self.reflect_root(i, &mut s);
                if !seen.contains(&s) {
                    stack.push(s);
                }
            }
        }
        let mut pos: Vec<Vec<i64>> = seen.into_iter().filter(|r| r.iter().all(|&c| c >= 0)).collect();
        pos.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
        pos
    }

    /// Positive roots sorted by height, then lexicographically.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    /// `N = |R^+|`.
    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    /// Whether `word` followed by `i` is still reduced, i.e. `w(alpha_i) > 0`.
    pub fn extends_reduced(&self, word: &[usize], i: usize) -> bool {
        let b = self.act_root(word, &self.simple_root(i));
        b.iter().all(|&c| c >= 0)
    }

    fn greedy_longest(&self) -> Vec<usize> {
        let n = self.rank();
        let target = self.num_positive_roots();
        let mut w: Vec<usize> = Vec::with_capacity(target);
        while w.len() < target {
            let i = (1..=n).find(|&i| self.extends_reduced(&w, i)).expect("w is not longest yet");
            w.push(i);
        }
        w
    }

    /// The lexicographically smallest reduced word of `w_0`.
    pub fn longest_word(&self) -> ReducedWord {
        ReducedWord::new(self, self.longest.clone()).expect("greedy word is reduced")
    }

    /// `i*` with `w_0(alpha_i) = -alpha_{i*}`.
    pub fn dual_vertex(&self, i: usize) -> Result<usize> {
        self.check_index(i)?;
        let v = self.act_root(&self.longest, &self.simple_root(i));
        let j = v.iter().position(|&c| c != 0).expect("nonzero image");
        Ok(j + 1)
    }

    /// All reduced words of `w_0`, lexicographically ordered.
    pub fn all_longest_words(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.enumerate_reduced(&mut cur, &mut out);
        out
    }

    fn enumerate_reduced(&self, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == self.num_positive_roots() {
            out.push(cur.clone());
            return;
        }
        for i in 1..=self.rank() {
            if self.extends_reduced(cur, i) {
                cur.push(i);
                self.enumerate_reduced(cur, out);
                cur.pop();
            }
        }
    }

    /// `varpi_i` in weight coordinates.
    pub fn fundamental_weight(&self, i: usize) -> WeightVector {
        let mut v = vec![0; self.rank()];
        v[i - 1] = 1;
        WeightVector(v)
    }

    /// `(Id - w)(varpi_i)` in root coordinates, for a word `w`.
    pub fn minor_weight(&self, word: &[usize], i: usize) -> Vec<i64> {
        // (Id - s_j) x = <x, alpha_j^vee> alpha_j, accumulated along the word
        let mut lam = self.fundamental_weight(i).0;
        let mut out = vec![0; self.rank()];
        for &j in word.iter().rev() {
            let c = lam[j - 1];
            out[j - 1] += c;
            self.reflect_weight(j, &mut lam);
        }
        out
    }

    /// Root-coordinate form `<x, varpi_i>` = `x_i d_i`.
    pub fn form_with_fundamental(&self, x: &[i64], i: usize) -> i64 {
        x[i - 1] * self.d[i - 1]
    }
}

/// A reduced word with its convex root sequence `beta_1, ..., beta_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReducedWord {
    word: Vec<usize>,
    betas: Vec<Vec<i64>>,
}

impl ReducedWord {
    pub fn new(datum: &CartanDatum, word: Vec<usize>) -> Result<Self> {
        let betas = beta_sequence(datum, &word)?;
        Ok(Self { word, betas })
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// `beta_k` for 1-based `k`.
    pub fn beta(&self, k: usize) -> &[i64] {
        &self.betas[k - 1]
    }

    pub fn betas(&self) -> &[Vec<i64>] {
        &self.betas
    }

    /// `i_k` for 1-based `k`.
    pub fn letter(&self, k: usize) -> usize {
        self.word[k - 1]
    }

    pub fn is_longest(&self, datum: &CartanDatum) -> bool {
        self.len() == datum.num_positive_roots()
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.word.iter().map(|i| i.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// `beta_k = s_{i_1} ... s_{i_{k-1}}(alpha_{i_k})`; fails on non-reduced words.
pub fn beta_sequence(datum: &CartanDatum, word: &[usize]) -> Result<Vec<Vec<i64>>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(word.len());
    for (k, &i) in word.iter().enumerate() {
        datum.check_index(i)?;
        let b = datum.act_root(&word[..k], &datum.simple_root(i));
        if b.iter().any(|&c| c < 0) || !seen.insert(b.clone()) {
            return Err(Error::NotReduced(k + 1));
        }
        out.push(b);
    }
    Ok(out)
}

/// Parses "1,2,1".
pub fn parse_word(s: &str) -> Result<Vec<usize>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidArgument(format!("bad word letter `{t}`")))
        })
        .collect()
}

/// Parses "1,1" into a vector of integers.
pub fn parse_int_vec(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .trim_matches(|c| c == '[' || c == ']')
                .parse::<i64>()
                .map_err(|_| Error::InvalidArgument(format!("bad integer `{t}`")))
        })
        .collect()
}

/// All nonzero non-negative weights `sum k_i alpha_i` of height at most `h`.
pub fn weights_up_to(rank: usize, h: i64) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..rank {
        let mut next = Vec::new();
        for w in &out {
            let s: i64 = w.iter().sum();
            for k in 0..=(h - s) {
                let mut v = w.clone();
                v.push(k);
                next.push(v);
            }
        }
        out = next;
    }
    out.retain(|w| w.iter().any(|&x| x != 0));
    out.sort_by_key(|w| (w.iter().sum::<i64>(), w.clone()));
    out
}
