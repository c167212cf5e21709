use std::collections::BTreeMap;
use std::fmt;

use crate::exactq::{qbinom, RatFunc};
use crate::rootdata::{CartanDatum, RootDatum};

/// `E_i^{(n)}` or `F_i^{(n)}` with `n >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    E(usize, u32),
    F(usize, u32),
}

impl Letter {
    pub fn node(self) -> usize {
        match self {
            Letter::E(i, _) | Letter::F(i, _) => i,
        }
    }

    pub fn power(self) -> u32 {
        match self {
            Letter::E(_, n) | Letter::F(_, n) => n,
        }
    }

    /// Signed multiple of `alpha_i` this letter shifts weights by.
    pub fn degree(self) -> i64 {
        match self {
            Letter::E(_, n) => n as i64,
            Letter::F(_, n) => -(n as i64),
        }
    }

    fn same_kind(self, other: Letter) -> bool {
        matches!((self, other), (Letter::E(i, _), Letter::E(j, _)) | (Letter::F(i, _), Letter::F(j, _)) if i == j)
    }

    fn with_power(self, n: u32) -> Letter {
        match self {
            Letter::E(i, _) => Letter::E(i, n),
            Letter::F(i, _) => Letter::F(i, n),
        }
    }
}

/// Right end of a word: a torus element `K_mu` (`mu = 0` is the unit) or an
/// idempotent `1_lambda`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tail {
    K(Vec<i64>),
    Idem(Vec<i64>),
}

/// `letters` followed by `tail`. Torus elements and idempotents are always
/// moved to the right end; adjacent divided powers of one generator are merged.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    pub letters: Vec<Letter>,
    pub tail: Tail,
}

impl Word {
    pub fn unit(rank_y: usize) -> Self {
        Word {
            letters: Vec::new(),
            tail: Tail::K(vec![0; rank_y]),
        }
    }

    /// Weight shift in `X`.
    pub fn weight(&self, datum: &RootDatum) -> Vec<i64> {
        let mut w = vec![0i64; datum.rank_x()];
        for l in &self.letters {
            for (x, a) in w.iter_mut().zip(datum.root(l.node())) {
                *x += l.degree() * a;
            }
        }
        w
    }

    /// Degree in `Z[I]`.
    pub fn degree(&self, rank: usize) -> Vec<i64> {
        let mut d = vec![0i64; rank];
        for l in &self.letters {
            d[l.node()] += l.degree();
        }
        d
    }
}

/// A finite `Q(q)`-combination of words. The normal form is only a
/// bookkeeping device; equality in the algebra is decided on modules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    rank_y: usize,
    terms: BTreeMap<Word, RatFunc>,
}

fn add_vec(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub_vec(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Product of two normal-form words as `(coefficient, word)`; `None` when zero.
fn mul_words(datum: &RootDatum, a: &Word, b: &Word) -> Option<(RatFunc, Word)> {
    let wt_b = b.weight(datum);
    let mut coef = 0i64;
    // push a's tail through b's letters, then fuse it with b's tail
    let tail = match (&a.tail, &b.tail) {
        (Tail::K(nu), Tail::K(mu)) => {
            coef += datum.pair(nu, &wt_b);
            Tail::K(add_vec(nu, mu))
        }
        (Tail::K(nu), Tail::Idem(lam)) => {
            coef += datum.pair(nu, &wt_b) + datum.pair(nu, lam);
            Tail::Idem(lam.clone())
        }
        (Tail::Idem(lam), Tail::K(mu)) => {
            let l = sub_vec(lam, &wt_b);
            coef += datum.pair(mu, &l);
            Tail::Idem(l)
        }
        (Tail::Idem(lam), Tail::Idem(mu)) => {
            let l = sub_vec(lam, &wt_b);
            if &l != mu {
                return None;
            }
            Tail::Idem(l)
        }
    };
    let mut scalar = RatFunc::q_pow(coef);
    let mut letters = a.letters.clone();
    let mut rest = b.letters.iter().copied();
    if let (Some(&last), Some(first)) = (letters.last(), b.letters.first().copied()) {
        if last.same_kind(first) {
            rest.next();
            let (x, y) = (last.power() as i64, first.power() as i64);
            let eps = datum.cartan().eps(last.node());
            let binom = qbinom(x + y, x, eps).expect("nonnegative");
            scalar = scalar.mul(&RatFunc::from_laurent(binom));
            *letters.last_mut().expect("nonempty") = last.with_power((x + y) as u32);
        }
    }
    letters.extend(rest);
    Some((scalar, Word { letters, tail }))
}

impl AlgebraElement {
    pub fn zero(datum: &RootDatum) -> Self {
        AlgebraElement {
            rank_y: datum.rank_x(),
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(datum: &RootDatum, c: RatFunc) -> Self {
        Self::from_word(datum, c, Word::unit(datum.rank_x()))
    }

    pub fn one(datum: &RootDatum) -> Self {
        Self::scalar(datum, RatFunc::one())
    }

    pub fn from_word(datum: &RootDatum, c: RatFunc, w: Word) -> Self {
        let mut x = Self::zero(datum);
        x.add_term(w, c);
        x
    }

    fn letter(datum: &RootDatum, l: Letter) -> Self {
        if l.power() == 0 {
            return Self::one(datum);
        }
        Self::from_word(
            datum,
            RatFunc::one(),
            Word {
                letters: vec![l],
                tail: Tail::K(vec![0; datum.rank_x()]),
            },
        )
    }

    /// `E_i^{(n)}`.
    pub fn e(datum: &RootDatum, i: usize, n: u32) -> Self {
        Self::letter(datum, Letter::E(i, n))
    }

    /// `F_i^{(n)}`.
    pub fn f(datum: &RootDatum, i: usize, n: u32) -> Self {
        Self::letter(datum, Letter::F(i, n))
    }

    /// `K_mu`, `mu` in `Y`.
    pub fn k(datum: &RootDatum, mu: &[i64]) -> Self {
        Self::from_word(
            datum,
            RatFunc::one(),
            Word {
                letters: Vec::new(),
                tail: Tail::K(mu.to_vec()),
            },
        )
    }

    /// `K_i^{power} = K_{power eps_i alpha_i^vee}`.
    pub fn k_i(datum: &RootDatum, i: usize, power: i64) -> Self {
        let eps = datum.cartan().eps(i);
        let mu: Vec<i64> = datum.coroot(i).iter().map(|c| c * eps * power).collect();
        Self::k(datum, &mu)
    }

    /// `1_lambda`, `lambda` in `X`.
    pub fn idem(datum: &RootDatum, lambda: &[i64]) -> Self {
        Self::from_word(
            datum,
            RatFunc::one(),
            Word {
                letters: Vec::new(),
                tail: Tail::Idem(lambda.to_vec()),
            },
        )
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &RatFunc)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Word, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(x) => {
                *x = x.add(&c);
                if x.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        let mut out = AlgebraElement {
            rank_y: self.rank_y,
            terms: BTreeMap::new(),
        };
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x.mul(c));
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&RatFunc::from_int(-1))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self, datum: &RootDatum) -> Self {
        let mut out = Self::zero(datum);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                if let Some((s, w)) = mul_words(datum, wa, wb) {
                    out.add_term(w, ca.mul(cb).mul(&s));
                }
            }
        }
        out
    }

    /// Product of a list of factors, left to right.
    pub fn product(datum: &RootDatum, factors: &[AlgebraElement]) -> Self {
        factors.iter().fold(Self::one(datum), |acc, x| acc.mul(x, datum))
    }

    /// `x 1_lambda`.
    pub fn project(&self, datum: &RootDatum, lambda: &[i64]) -> Self {
        self.mul(&Self::idem(datum, lambda), datum)
    }

    /// Applies a per-word rewrite and re-sums.
    pub fn map_terms(&self, datum: &RootDatum, f: impl Fn(&Word, &RatFunc) -> AlgebraElement) -> Self {
        self.terms.iter().fold(Self::zero(datum), |acc, (w, c)| acc.add(&f(w, c)))
    }

    /// Renders with node labels from `cartan`.
    pub fn render(&self, cartan: &CartanDatum) -> String {
        self.render_with(|i| cartan.label(i).to_string())
    }

    fn render_with(&self, label: impl Fn(usize) -> String) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let mut s: Vec<String> = w
                    .letters
                    .iter()
                    .map(|l| {
                        let name = if matches!(l, Letter::E(..)) { "E" } else { "F" };
                        match l.power() {
                            1 => format!("{name}{}", label(l.node())),
                            n => format!("{name}{}^({n})", label(l.node())),
                        }
                    })
                    .collect();
                match &w.tail {
                    Tail::K(mu) if mu.iter().any(|&x| x != 0) => s.push(format!("K{mu:?}")),
                    Tail::K(_) => {}
                    Tail::Idem(lam) => s.push(format!("1{lam:?}")),
                }
                let word = if s.is_empty() { "1".to_string() } else { s.join(" ") };
                if c.is_one() {
                    word
                } else {
                    format!("({c})*{word}")
                }
            })
            .collect();
        parts.join(" + ")
    }
}

/// Nodes are printed 1-based.
impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with(|i| (i + 1).to_string()))
    }
}
