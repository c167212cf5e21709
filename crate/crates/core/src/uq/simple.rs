use std::collections::{BTreeSet, HashMap};

use crate::exactq::{qfactorial, qint, Scalar};
use crate::linalg::{dense, vec_axpy, SparseMatrix, SparseVec};
use crate::rootdata::RootDatum;

use super::{UqError, WeightModule};

/// A vector `F_i^{(n)} b` with `b` a basis vector `n` levels below along `alpha_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Cand {
    i: usize,
    n: u32,
    b: usize,
}

struct Level<S> {
    beta: Vec<i64>,
    weight: Vec<i64>,
    basis: Vec<Cand>,
    gram: Vec<Vec<S>>,
    // e_out[j][b]: E_j b in the basis of level beta - alpha_j
    e_out: Vec<Vec<SparseVec<S>>>,
    // f_in[(i, n)][b]: F_i^{(n)} b (b in level beta - n alpha_i) in this level's basis
    f_in: HashMap<(usize, u32), Vec<SparseVec<S>>>,
}

struct Builder<'a, S> {
    datum: &'a RootDatum,
    levels: Vec<Level<S>>,
    index: HashMap<Vec<i64>, usize>,
}

fn shifted(beta: &[i64], i: usize, by: i64) -> Vec<i64> {
    let mut b = beta.to_vec();
    b[i] += by;
    b
}

impl<'a, S: Scalar> Builder<'a, S> {
    fn level(&self, beta: &[i64]) -> Option<&Level<S>> {
        if beta.iter().any(|&x| x < 0) {
            return None;
        }
        self.index.get(beta).map(|&k| &self.levels[k])
    }

    /// `F_i^{(n)}` applied to a vector of level `target - n alpha_i`.
    fn apply_f(&self, target: &[i64], i: usize, n: u32, v: &SparseVec<S>) -> SparseVec<S> {
        if n == 0 {
            return v.clone();
        }
        let Some(t) = self.level(target) else { return Vec::new() };
        let Some(cols) = t.f_in.get(&(i, n)) else { return Vec::new() };
        let mut out = Vec::new();
        for (b, c) in v {
            out = vec_axpy(&out, c, &cols[*b]);
        }
        out
    }

    /// `E_j` applied to a vector of level `src`.
    fn apply_e(&self, src: &[i64], j: usize, v: &SparseVec<S>) -> SparseVec<S> {
        let Some(s) = self.level(src) else { return Vec::new() };
        let mut out = Vec::new();
        for (b, c) in v {
            out = vec_axpy(&out, c, &s.e_out[j][*b]);
        }
        out
    }

    /// `E_j F_i^{(n)} b` in the basis of level `beta - alpha_j`.
    fn cand_e(&self, beta: &[i64], j: usize, c: Cand) -> SparseVec<S> {
        let gamma = shifted(beta, c.i, -(c.n as i64));
        let g = self.level(&gamma).expect("candidate source exists");
        let eb = &g.e_out[j][c.b];
        let target = shifted(beta, j, -1);
        let mut out = self.apply_f(&target, c.i, c.n, eb);
        if j == c.i {
            let eps = self.datum.cartan().eps(j);
            let m = self.datum.coroot_pairing(j, &g.weight) + 1 - c.n as i64;
            let coef = S::from_laurent(&qint(m, eps));
            if !coef.is_zero() {
                let fb = self.apply_f(&target, c.i, c.n - 1, &vec![(c.b, S::one())]);
                out = vec_axpy(&out, &coef, &fb);
            }
        }
        out
    }

    /// `E_i^{(n)} c` in the basis of level `beta - n alpha_i`.
    fn cand_e_div(&self, beta: &[i64], i: usize, n: u32, c: Cand) -> Result<SparseVec<S>, UqError> {
        let mut v = self.cand_e(beta, i, c);
        for k in 2..=n {
            v = self.apply_e(&shifted(beta, i, -(k as i64 - 1)), i, &v);
        }
        let eps = self.datum.cartan().eps(i);
        let d = S::from_laurent(&qfactorial(n, eps)).inv().ok_or(UqError::PoleAtOne)?;
        Ok(v.into_iter().map(|(k, x)| (k, x.mul(&d))).collect())
    }

    fn build_level(&mut self, beta: Vec<i64>, lambda: &[i64]) -> Result<Option<Level<S>>, UqError> {
        let r = self.datum.rank();
        let mut cands = Vec::new();
        for i in 0..r {
            for n in 1..=beta[i] as u32 {
                if let Some(g) = self.level(&shifted(&beta, i, -(n as i64))) {
                    for b in 0..g.basis.len().max(usize::from(g.beta.iter().all(|&x| x == 0))) {
                        cands.push(Cand { i, n, b });
                    }
                }
            }
        }
        if cands.is_empty() {
            return Ok(None);
        }
        cands.sort_by(|a, b| b.n.cmp(&a.n).then(a.i.cmp(&b.i)).then(a.b.cmp(&b.b)));

        // E_i^{(n)} of every candidate, for every (i, n) type present
        let types: BTreeSet<(usize, u32)> = cands.iter().map(|c| (c.i, c.n)).collect();
        let mut lowered: HashMap<(usize, u32), Vec<SparseVec<S>>> = HashMap::new();
        for &(i, n) in &types {
            let v = cands
                .iter()
                .map(|&c| self.cand_e_div(&beta, i, n, c))
                .collect::<Result<Vec<_>, _>>()?;
            lowered.insert((i, n), v);
        }
        let form = |c1: Cand, k2: usize| -> S {
            let g = self.level(&shifted(&beta, c1.i, -(c1.n as i64))).expect("source level");
            let v = &lowered[&(c1.i, c1.n)][k2];
            let row = &g.gram[c1.b];
            v.iter().fold(S::zero(), |acc, (k, x)| acc.add(&row[*k].mul(x)))
        };

        let mut chosen: Vec<usize> = Vec::new();
        let mut gram: Vec<Vec<S>> = Vec::new();
        for (k, &c) in cands.iter().enumerate() {
            let g: Vec<S> = chosen.iter().map(|&b| form(cands[b], k)).collect();
            let cc = form(c, k);
            let schur = if chosen.is_empty() {
                cc.clone()
            } else {
                let x = dense::solve(&gram, &g).expect("gram of a basis is nonsingular");
                cc.sub(&g.iter().zip(&x).fold(S::zero(), |a, (p, q)| a.add(&p.mul(q))))
            };
            if !schur.is_zero() {
                for (row, gi) in gram.iter_mut().zip(&g) {
                    row.push(gi.clone());
                }
                let mut last = g.clone();
                last.push(cc);
                gram.push(last);
                chosen.push(k);
            }
        }
        if chosen.is_empty() {
            return Ok(None);
        }
        let ginv = dense::inverse(&gram).expect("nonsingular");
        let mut f_in: HashMap<(usize, u32), Vec<SparseVec<S>>> = HashMap::new();
        for &(i, n) in &types {
            let src = self.level(&shifted(&beta, i, -(n as i64))).expect("source level");
            f_in.insert((i, n), vec![Vec::new(); src.basis.len().max(1)]);
        }
        for (k, &c) in cands.iter().enumerate() {
            let g: Vec<S> = chosen.iter().map(|&b| form(cands[b], k)).collect();
            let coords: SparseVec<S> = ginv
                .iter()
                .enumerate()
                .filter_map(|(a, row)| {
                    let x = row.iter().zip(&g).fold(S::zero(), |acc, (p, q)| acc.add(&p.mul(q)));
                    (!x.is_zero()).then_some((a, x))
                })
                .collect();
            f_in.get_mut(&(c.i, c.n)).expect("type present")[c.b] = coords;
        }
        let basis: Vec<Cand> = chosen.iter().map(|&k| cands[k]).collect();
        let e_out = (0..r).map(|j| basis.iter().map(|&c| self.cand_e(&beta, j, c)).collect()).collect();
        let weight = level_weight(self.datum, lambda, &beta);
        Ok(Some(Level {
            beta,
            weight,
            basis,
            gram,
            e_out,
            f_in,
        }))
    }
}

fn level_weight(datum: &RootDatum, lambda: &[i64], beta: &[i64]) -> Vec<i64> {
    let mut w = lambda.to_vec();
    for (i, &b) in beta.iter().enumerate() {
        for (x, a) in w.iter_mut().zip(datum.root(i)) {
            *x -= b * a;
        }
    }
    w
}

/// Dynkin-label name `L(a,b,...)`.
pub fn simple_label(datum: &RootDatum, lambda: &[i64]) -> String {
    let c: Vec<String> = datum.coroot_pairings(lambda).iter().map(|x| x.to_string()).collect();
    format!("L({})", c.join(","))
}

/// The simple module `L(lambda)`, built level by level below a highest-weight
/// vector as the quotient of the span of lowering monomials by the radical of
/// the contravariant form (`E_i <-> F_i`, `K` fixed).
pub fn build_simple<S: Scalar>(datum: &RootDatum, lambda: &[i64], dim_bound: usize) -> Result<WeightModule<S>, UqError> {
    if lambda.len() != datum.rank_x() {
        return Err(UqError::Shape(format!(
            "weight has length {}, expected {}",
            lambda.len(),
            datum.rank_x()
        )));
    }
    if !datum.dominant(lambda) {
        return Err(UqError::NotDominant(lambda.to_vec()));
    }
    let r = datum.rank();
    let zero = vec![0i64; r];
    let top = Level {
        beta: zero.clone(),
        weight: lambda.to_vec(),
        basis: vec![Cand { i: 0, n: 0, b: 0 }],
        gram: vec![vec![S::one()]],
        e_out: (0..r).map(|_| vec![Vec::new()]).collect(),
        f_in: HashMap::new(),
    };
    let mut b = Builder {
        datum,
        levels: vec![top],
        index: HashMap::from([(zero, 0)]),
    };
    let mut total = 1;
    let mut frontier = vec![0usize];
    while !frontier.is_empty() {
        let next: BTreeSet<Vec<i64>> = frontier
            .iter()
            .flat_map(|&k| (0..r).map(move |i| (k, i)))
            .map(|(k, i)| shifted(&b.levels[k].beta, i, 1))
            .collect();
        frontier.clear();
        for beta in next {
            if let Some(level) = b.build_level(beta.clone(), lambda)? {
                total += level.basis.len();
                if total > dim_bound {
                    return Err(UqError::DimensionBound { bound: dim_bound });
                }
                b.index.insert(beta, b.levels.len());
                frontier.push(b.levels.len());
                b.levels.push(level);
            }
        }
    }

    let mut offset = Vec::with_capacity(b.levels.len());
    let mut weights = Vec::new();
    for l in &b.levels {
        offset.push(weights.len());
        weights.extend(std::iter::repeat_n(l.weight.clone(), l.basis.len()));
    }
    let dim = weights.len();
    let mut e1 = Vec::new();
    let mut f1 = Vec::new();
    for i in 0..r {
        let mut e = SparseMatrix::zeros(dim, dim);
        let mut f = SparseMatrix::zeros(dim, dim);
        for (li, l) in b.levels.iter().enumerate() {
            if let Some(&lo) = b.index.get(&shifted(&l.beta, i, -1)) {
                for (col, v) in l.e_out[i].iter().enumerate() {
                    for (row, x) in v {
                        e.add_entry(offset[lo] + row, offset[li] + col, x);
                    }
                }
            }
            if let Some(cols) = l.f_in.get(&(i, 1)) {
                let lo = b.index[&shifted(&l.beta, i, -1)];
                for (col, v) in cols.iter().enumerate() {
                    for (row, x) in v {
                        f.add_entry(offset[li] + row, offset[lo] + col, x);
                    }
                }
            }
        }
        e1.push(e);
        f1.push(f);
    }
    WeightModule::from_generators(simple_label(datum, lambda), datum, weights, e1, f1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::{Rat, RatFunc};
    use crate::rootdata::{positive_roots, CartanDatum, DEFAULT_RANK_BOUND};

    fn weyl_dim(d: &RootDatum, lambda: &[i64]) -> i64 {
        let a = d.coroot_pairings(lambda);
        let all: Vec<usize> = (0..d.rank()).collect();
        let mut num = 1i64;
        let mut den = 1i64;
        for r in positive_roots(d, &all, DEFAULT_RANK_BOUND).unwrap() {
            let h: i64 = r.coroot.iter().sum();
            let p: i64 = r.coroot.iter().zip(&a).map(|(g, x)| g * x).sum();
            num *= p + h;
            den *= h;
        }
        num / den
    }

    #[test]
    fn trivial_module() {
        let d = RootDatum::simply_connected(CartanDatum::of_type('A', 2));
        let m = build_simple::<RatFunc>(&d, &[0, 0], 200).unwrap();
        assert_eq!(m.dim(), 1);
        assert!(m.e_div(0, 1).is_zero() && m.f_div(1, 1).is_zero());
    }

    #[test]
    fn dimensions_match_weyl_formula() {
        for (k, n) in [('A', 1), ('A', 2), ('B', 2), ('C', 2)] {
            let d = RootDatum::simply_connected(CartanDatum::of_type(k, n));
            for a in 0..=2 {
                for b in 0..=if n > 1 { 2 } else { 0 } {
                    let lam: Vec<i64> = if n == 1 { vec![a] } else { vec![a, b] };
                    let m = build_simple::<Rat>(&d, &lam, 500).unwrap();
                    assert_eq!(m.dim() as i64, weyl_dim(&d, &lam), "{k}{n} {lam:?}");
                }
            }
        }
    }

    #[test]
    fn sl2_fundamental_by_hand() {
        let d = RootDatum::simply_connected(CartanDatum::of_type('A', 1));
        let m = build_simple::<RatFunc>(&d, &[1], 200).unwrap();
        assert_eq!(m.weights(), &[vec![1], vec![-1]]);
        assert_eq!(m.f_div(0, 1).get(1, 0), RatFunc::one());
        assert_eq!(m.e_div(0, 1).get(0, 1), RatFunc::one());
    }

    #[test]
    fn rejects_non_dominant() {
        let d = RootDatum::simply_connected(CartanDatum::of_type('A', 1));
        assert!(matches!(build_simple::<Rat>(&d, &[-1], 200), Err(UqError::NotDominant(_))));
        assert!(matches!(build_simple::<Rat>(&d, &[9], 5), Err(UqError::DimensionBound { .. })));
    }
}
