//! Dynkin quiver orientations, sink-adapted reduced words, the AR translate,
//! Hom and Ext dimensions through the Euler form, and the identities relating
//! them to the forms `d` and `c`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::pbw::PbwBasis;
use crate::rootdata::{render_vec, weights_up_to, CartanDatum, ReducedWord};

/// An orientation of a simply-laced Dynkin graph; `(v, w)` is the arrow `v -> w`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Orientation {
    rank: usize,
    arrows: Vec<(usize, usize)>,
}

fn graph_edges(datum: &CartanDatum) -> Vec<(usize, usize)> {
    let n = datum.rank();
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if datum.cartan(i, j) != 0 {
                out.push((i, j));
            }
        }
    }
    out
}

impl Orientation {
    /// Checks that the arrows orient every edge of the Dynkin graph exactly once.
    pub fn new(datum: &CartanDatum, arrows: Vec<(usize, usize)>) -> Result<Self> {
        if !datum.cartan_type().is_simply_laced() {
            return Err(Error::InvalidArgument(format!("type {} is not simply laced", datum.cartan_type())));
        }
        let mut seen: Vec<(usize, usize)> = arrows.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        seen.sort();
        if seen != graph_edges(datum) {
            return Err(Error::InvalidArgument("arrows do not orient the Dynkin graph".into()));
        }
        let mut arrows = arrows;
        arrows.sort();
        Ok(Orientation { rank: datum.rank(), arrows })
    }

    /// Parses `"2>1,2>3"`.
    pub fn parse(datum: &CartanDatum, s: &str) -> Result<Self> {
        let mut arrows = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (a, b) = part
                .split_once('>')
                .ok_or_else(|| Error::InvalidArgument(format!("bad arrow `{part}`, expected `v>w`")))?;
            let parse = |x: &str| {
                usize::from_str(x.trim()).map_err(|_| Error::InvalidArgument(format!("bad vertex `{x}`")))
            };
            arrows.push((parse(a)?, parse(b)?));
        }
        Self::new(datum, arrows)
    }

    /// All `2^edges` orientations, in a fixed order.
    pub fn all(datum: &CartanDatum) -> Result<Vec<Orientation>> {
        let edges = graph_edges(datum);
        (0..1usize << edges.len())
            .map(|mask| {
                let arrows = edges
                    .iter()
                    .enumerate()
                    .map(|(b, &(i, j))| if mask >> b & 1 == 1 { (i, j) } else { (j, i) })
                    .collect();
                Self::new(datum, arrows)
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn is_sink(&self, i: usize) -> bool {
        self.arrows.iter().all(|&(v, _)| v != i)
    }

    pub fn sinks(&self) -> Vec<usize> {
        (1..=self.rank).filter(|&i| self.is_sink(i)).collect()
    }

    /// Reverses every arrow at the sink `i`.
    pub fn reflect_at_sink(&self, i: usize) -> Result<Orientation> {
        if i == 0 || i > self.rank {
            return Err(Error::IndexOutOfRange(i));
        }
        if !self.is_sink(i) {
            return Err(Error::NotASink(i));
        }
        let mut arrows: Vec<(usize, usize)> =
            self.arrows.iter().map(|&(v, w)| if w == i { (w, v) } else { (v, w) }).collect();
        arrows.sort();
        Ok(Orientation { rank: self.rank, arrows })
    }

    /// `<a, b> = sum a_v b_v - sum_{v -> w} a_v b_w`.
    pub fn euler_form(&self, a: &[i64], b: &[i64]) -> i64 {
        let diag: i64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
        let off: i64 = self.arrows.iter().map(|&(v, w)| a[v - 1] * b[w - 1]).sum();
        diag - off
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.arrows.iter().map(|(v, w)| format!("{v}>{w}")).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// The lexicographically first adapted word: sinks are chosen smallest first,
/// backtracking when the word stops being reduced.
pub fn adapted_word(datum: &CartanDatum, o: &Orientation) -> Result<ReducedWord> {
    fn dfs(datum: &CartanDatum, o: &Orientation, cur: &mut Vec<usize>) -> bool {
        if cur.len() == datum.num_positive_roots() {
            return true;
        }
        for i in o.sinks() {
            if datum.extends_reduced(cur, i) {
                cur.push(i);
                if dfs(datum, &o.reflect_at_sink(i).expect("sink"), cur) {
                    return true;
                }
                cur.pop();
            }
        }
        false
    }
    let mut cur = Vec::new();
    if !dfs(datum, o, &mut cur) {
        return Err(Error::InvalidArgument(format!("no adapted word for {o}")));
    }
    ReducedWord::new(datum, cur)
}

/// Every reduced word of `w_0` adapted to `o`.
pub fn all_adapted_words(datum: &CartanDatum, o: &Orientation) -> Vec<Vec<usize>> {
    fn dfs(datum: &CartanDatum, o: &Orientation, cur: &mut Vec<usize>, out: &mut BTreeSet<Vec<usize>>) {
        if cur.len() == datum.num_positive_roots() {
            out.insert(cur.clone());
            return;
        }
        for i in o.sinks() {
            if datum.extends_reduced(cur, i) {
                cur.push(i);
                dfs(datum, &o.reflect_at_sink(i).expect("sink"), cur, out);
                cur.pop();
            }
        }
    }
    let mut out = BTreeSet::new();
    dfs(datum, o, &mut Vec::new(), &mut out);
    out.into_iter().collect()
}

/// `word` is adapted to `o`: each letter is a sink after the previous reflections.
pub fn is_adapted(o: &Orientation, word: &[usize]) -> bool {
    let mut cur = o.clone();
    for &i in word {
        match cur.reflect_at_sink(i) {
            Ok(next) => cur = next,
            Err(_) => return false,
        }
    }
    true
}

/// The orientations to which `word` is adapted.
pub fn adapted_orientations(datum: &CartanDatum, word: &[usize]) -> Result<Vec<Orientation>> {
    Ok(Orientation::all(datum)?.into_iter().filter(|o| is_adapted(o, word)).collect())
}

/// `tau(M_k) = M_k'` with `k' < k` maximal such that `i_k' = i_k`; `None` for projectives.
pub fn tau(word: &ReducedWord, k: usize) -> Result<Option<usize>> {
    if k == 0 || k > word.len() {
        return Err(Error::IndexOutOfRange(k));
    }
    let ik = word.letter(k);
    Ok((1..k).rev().find(|&l| word.letter(l) == ik))
}

/// Hom and Ext dimensions between the indecomposables `M_1..M_N` of an adapted word.
#[derive(Clone, Debug)]
pub struct QuiverData {
    pub orientation: Orientation,
    pub word: ReducedWord,
    taus: Vec<Option<usize>>,
    /// `hom[k][l] = dim Hom(M_k, M_l)`, 0-based.
    hom: Vec<Vec<i64>>,
}

impl QuiverData {
    pub fn new(datum: &CartanDatum, o: &Orientation, word: ReducedWord) -> Result<Self> {
        if !is_adapted(o, word.word()) || !word.is_longest(datum) {
            return Err(Error::InvalidArgument(format!("word {word} is not adapted to {o}")));
        }
        let n = word.len();
        let taus = (1..=n).map(|k| tau(&word, k)).collect::<Result<Vec<_>>>()?;
        let mut memo: HashMap<(usize, usize), i64> = HashMap::new();
        let mut hom = vec![vec![0; n]; n];
        for k in 1..=n {
            for l in 1..=n {
                hom[k - 1][l - 1] = eps_rec(o, &word, &taus, k, l, &mut memo);
            }
        }
        Ok(QuiverData { orientation: o.clone(), word, taus, hom })
    }

    pub fn adapted(datum: &CartanDatum, o: &Orientation) -> Result<Self> {
        Self::new(datum, o, adapted_word(datum, o)?)
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn tau(&self, k: usize) -> Option<usize> {
        self.taus[k - 1]
    }

    /// `dim M = sum m_k beta_k`.
    pub fn dim_vector(&self, m: &[i64]) -> Vec<i64> {
        let mut d = vec![0; self.orientation.rank()];
        for (k, &mk) in m.iter().enumerate() {
            for (x, b) in d.iter_mut().zip(self.word.beta(k + 1)) {
                *x += mk * b;
            }
        }
        d
    }

    /// `epsilon(M, N) = dim Hom(M, N)` for `M = iota^{-1}(m)`, `N = iota^{-1}(n)`.
    pub fn hom_dim(&self, m: &[i64], n: &[i64]) -> i64 {
        let mut s = 0;
        for (k, &mk) in m.iter().enumerate() {
            if mk == 0 {
                continue;
            }
            for (l, &nl) in n.iter().enumerate() {
                if nl != 0 {
                    s += mk * nl * self.hom[k][l];
                }
            }
        }
        s
    }

    /// `zeta(M, N) = dim Ext^1(M, N) = epsilon(N, tau M)`.
    pub fn ext_dim(&self, m: &[i64], n: &[i64]) -> i64 {
        let mut s = 0;
        for (k, &mk) in m.iter().enumerate() {
            if mk == 0 {
                continue;
            }
            if let Some(t) = self.taus[k] {
                for (l, &nl) in n.iter().enumerate() {
                    if nl != 0 {
                        s += mk * nl * self.hom[l][t - 1];
                    }
                }
            }
        }
        s
    }

    /// `epsilon(M_k, M_l)`, 1-based.
    pub fn hom_indec(&self, k: usize, l: usize) -> i64 {
        self.hom[k - 1][l - 1]
    }

    /// `zeta(M_k, M_l)`, 1-based.
    pub fn ext_indec(&self, k: usize, l: usize) -> i64 {
        self.taus[k - 1].map_or(0, |t| self.hom[l - 1][t - 1])
    }

    pub fn unit(&self, k: usize) -> Vec<i64> {
        let mut v = vec![0; self.len()];
        v[k - 1] = 1;
        v
    }
}

fn eps_rec(
    o: &Orientation,
    w: &ReducedWord,
    taus: &[Option<usize>],
    k: usize,
    l: usize,
    memo: &mut HashMap<(usize, usize), i64>,
) -> i64 {
    if let Some(&v) = memo.get(&(k, l)) {
        return v;
    }
    let mut v = o.euler_form(w.beta(k), w.beta(l));
    if let Some(t) = taus[k - 1] {
        v += eps_rec(o, w, taus, l, t, memo);
    }
    memo.insert((k, l), v);
    v
}

/// The word `s_{i_1-1}..s_1 s_{i_2-1}..s_2 ... s_{i_k-1}..s_k`
/// whose flag minor in type `A_n` is the minor on rows `I` and columns `1..k`.
pub fn type_a_flag_prefix(rank: usize, rows: &[usize]) -> Result<Vec<usize>> {
    let mut sorted = rows.to_vec();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != rows.len() || rows.iter().any(|&r| r == 0 || r > rank + 1) || rows.len() > rank {
        return Err(Error::InvalidArgument(format!("row set {} does not fit A{rank}", render_vec(rows))));
    }
    let mut word = Vec::new();
    for (j, &r) in sorted.iter().enumerate() {
        let j = j + 1;
        word.extend((j..r).rev());
    }
    Ok(word)
}

/// A type-A flag word: the prefix and, when one exists, an adapted completion.
#[derive(Clone, Debug)]
pub struct FlagWord {
    pub rows: Vec<usize>,
    pub prefix: Vec<usize>,
    pub completion: Option<(Orientation, Vec<usize>)>,
}

/// The prefix for rows `I` together with an orientation-adapted word of `w_0`
/// starting with it, searching orientations in their fixed order.
pub fn type_a_flag_word(datum: &CartanDatum, rows: &[usize]) -> Result<FlagWord> {
    if !matches!(datum.cartan_type(), crate::rootdata::CartanType::A(_)) {
        return Err(Error::InvalidArgument("flag words are defined in type A".into()));
    }
    let prefix = type_a_flag_prefix(datum.rank(), rows)?;
    let mut completion = None;
    'outer: for o in Orientation::all(datum)? {
        for w in all_adapted_words(datum, &o) {
            if w.starts_with(&prefix) {
                completion = Some((o, w));
                break 'outer;
            }
        }
    }
    Ok(FlagWord { rows: rows.to_vec(), prefix, completion })
}

/// A failing pair of a check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub m: Vec<i64>,
    pub n: Vec<i64>,
    pub lhs: i64,
    pub rhs: i64,
}

/// `d(iota M, iota N) = epsilon(N, M) - zeta(M, N)` on all indecomposable pairs.
pub fn check_d_identity(q: &QuiverData, d_form: impl Fn(&[i64], &[i64]) -> i64) -> Vec<Failure> {
    let n = q.len();
    let mut out = Vec::new();
    for k in 1..=n {
        for l in 1..=n {
            let (ek, el) = (q.unit(k), q.unit(l));
            let lhs = d_form(&ek, &el);
            let rhs = q.hom_indec(l, k) - q.ext_indec(k, l);
            if lhs != rhs {
                out.push(Failure { m: ek, n: el, lhs, rhs });
            }
        }
    }
    out
}

/// `n_w = sum e_l` over `l <= k` with `i_l = i_k`.
pub fn flag_datum(word: &ReducedWord, k: usize) -> Vec<i64> {
    let ik = word.letter(k);
    (1..=word.len()).map(|l| i64::from(l <= k && word.letter(l) == ik)).collect()
}

/// For the prefix of length `k`: `d(n_w, m) = epsilon(iota^{-1} m, M_k)` for all `m`
/// up to the height bound, and `d(n_w, m) <= d(n_w, n)` along every generating
/// pair `m < n` of the Ext order.
pub fn check_monotone(q: &QuiverData, pbw: &PbwBasis, k: usize, max_height: i64) -> Result<Vec<Failure>> {
    if k == 0 || k > q.len() {
        return Err(Error::IndexOutOfRange(k));
    }
    let nw = flag_datum(&q.word, k);
    let mk = q.unit(k);
    let mut out = Vec::new();
    for mu in weights_up_to(q.orientation.rank(), max_height) {
        for m in pbw.data_of_weight(&mu) {
            let lhs = pbw.d_form(&nw, &m);
            let rhs = q.hom_dim(&m, &mk);
            if lhs != rhs {
                out.push(Failure { m: nw.clone(), n: m.clone(), lhs, rhs });
            }
        }
        for (m, n) in pbw.ext_order(&mu)?.generating_pairs() {
            let (a, b) = (pbw.d_form(&nw, &m), pbw.d_form(&nw, &n));
            if a > b {
                out.push(Failure { m, n, lhs: a, rhs: b });
            }
        }
    }
    Ok(out)
}
