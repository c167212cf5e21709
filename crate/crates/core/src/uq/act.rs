use std::collections::HashMap;

use crate::exactq::Scalar;
use crate::linalg::{Span, SparseMatrix, SparseVec};
use crate::rootdata::RootDatum;

use super::{braid_t, AlgebraElement, Letter, Tail, UqError, WeightModule};

/// The matrix by which `x` acts on `m`.
pub fn act<S: Scalar>(x: &AlgebraElement, m: &WeightModule<S>) -> Result<SparseMatrix<S>, UqError> {
    let dim = m.dim();
    let mut out = SparseMatrix::zeros(dim, dim);
    'terms: for (w, c) in x.terms() {
        let c = S::from_ratfunc(c).ok_or(UqError::PoleAtOne)?;
        let mut mat = match &w.tail {
            Tail::K(mu) => SparseMatrix::diagonal(m.k_diag(mu).into_iter().map(|d| d.mul(&c)).collect()),
            Tail::Idem(lam) => {
                let mask = m.weight_mask(lam);
                if !mask.iter().any(|&b| b) {
                    continue;
                }
                SparseMatrix::diagonal(mask.iter().map(|&b| if b { c.clone() } else { S::zero() }).collect())
            }
        };
        for l in w.letters.iter().rev() {
            match m.letter(*l) {
                Some(a) => mat = a.mul(&mat),
                None => continue 'terms,
            }
            if mat.is_zero() {
                continue 'terms;
            }
        }
        out = out.add(&mat);
    }
    Ok(out)
}

/// `act(braid_tw(datum, word, x), m)`, evaluated through the letter images
/// `T_i(l)` one level at a time instead of expanding the composite.
pub fn act_braid<S: Scalar>(
    datum: &RootDatum,
    word: &[usize],
    x: &AlgebraElement,
    m: &WeightModule<S>,
) -> Result<SparseMatrix<S>, UqError> {
    BraidCache::new(datum, m).eval(word, x)
}

/// Memoized images `act(T_w(l))` on one module, shared across words with a
/// common prefix.
pub struct BraidCache<'a, S> {
    datum: &'a RootDatum,
    m: &'a WeightModule<S>,
    letters: HashMap<(Vec<usize>, Letter), SparseMatrix<S>>,
}

impl<'a, S: Scalar> BraidCache<'a, S> {
    pub fn new(datum: &'a RootDatum, m: &'a WeightModule<S>) -> Self {
        BraidCache {
            datum,
            m,
            letters: HashMap::new(),
        }
    }

    pub fn module(&self) -> &WeightModule<S> {
        self.m
    }

    /// `act(T_word(x))`.
    pub fn eval(&mut self, word: &[usize], x: &AlgebraElement) -> Result<SparseMatrix<S>, UqError> {
        if word.is_empty() {
            return act(x, self.m);
        }
        let dim = self.m.dim();
        let mut out = SparseMatrix::zeros(dim, dim);
        for (w, c) in x.terms() {
            let c = S::from_ratfunc(c).ok_or(UqError::PoleAtOne)?;
            let tail = match &w.tail {
                Tail::K(mu) => {
                    let mu = word.iter().rev().fold(mu.clone(), |v, &i| self.datum.reflect_y(i, &v));
                    SparseMatrix::diagonal(self.m.k_diag(&mu).into_iter().map(|d| d.mul(&c)).collect())
                }
                Tail::Idem(lam) => {
                    let lam = word.iter().rev().fold(lam.clone(), |v, &i| self.datum.reflect_x(i, &v));
                    SparseMatrix::diagonal(
                        self.m
                            .weight_mask(&lam)
                            .iter()
                            .map(|&b| if b { c.clone() } else { S::zero() })
                            .collect(),
                    )
                }
            };
            let mut mat = tail;
            for l in w.letters.iter().rev() {
                if mat.is_zero() {
                    break;
                }
                mat = self.letter(word, *l)?.mul(&mat);
            }
            out = out.add(&mat);
        }
        Ok(out)
    }

    fn letter(&mut self, word: &[usize], l: Letter) -> Result<SparseMatrix<S>, UqError> {
        let key = (word.to_vec(), l);
        if let Some(a) = self.letters.get(&key) {
            return Ok(a.clone());
        }
        let single = match l {
            Letter::E(i, n) => AlgebraElement::e(self.datum, i, n),
            Letter::F(i, n) => AlgebraElement::f(self.datum, i, n),
        };
        let (last, prefix) = word.split_last().expect("nonempty word");
        let inner = braid_t(self.datum, *last, &single);
        let a = self.eval(prefix, &inner)?;
        self.letters.insert(key, a.clone());
        Ok(a)
    }
}

/// First module of the battery on which `x` and `y` act differently, with
/// one differing entry.
pub fn battery_witness<S: Scalar>(x: &AlgebraElement, y: &AlgebraElement, battery: &[WeightModule<S>]) -> Result<Option<String>, UqError> {
    if battery.is_empty() {
        return Err(UqError::EmptyBattery);
    }
    let diff = x.sub(y);
    for m in battery {
        let a = act(&diff, m)?;
        if let Some((r, c, v)) = a.first_nonzero() {
            return Ok(Some(format!("on {}: entry ({r},{c}) of the difference is {v}", m.label())));
        }
    }
    Ok(None)
}

/// `act(x, M) = act(y, M)` for every `M` in the battery. Evidence of equality
/// in the algebra, not a proof.
pub fn eq_mod_battery<S: Scalar>(x: &AlgebraElement, y: &AlgebraElement, battery: &[WeightModule<S>]) -> Result<bool, UqError> {
    Ok(battery_witness(x, y, battery)?.is_none())
}

/// Basis of the smallest subspace containing `v` and stable under all
/// `E_i`, `F_i` and weight projections.
pub fn generate_submodule<S: Scalar>(m: &WeightModule<S>, v: &SparseVec<S>) -> Vec<SparseVec<S>> {
    let mut span = Span::new();
    let mut basis = Vec::new();
    let mut queue: Vec<SparseVec<S>> = m
        .blocks()
        .values()
        .map(|idx| {
            v.iter()
                .filter(|(k, _)| idx.binary_search(k).is_ok())
                .cloned()
                .collect::<SparseVec<S>>()
        })
        .filter(|p| !p.is_empty())
        .collect();
    while let Some(u) = queue.pop() {
        if !span.insert(&u) {
            continue;
        }
        for i in 0..m.datum().rank() {
            for l in [Letter::E(i, 1), Letter::F(i, 1)] {
                if let Some(a) = m.letter(l) {
                    let w = a.apply(&u);
                    if !w.is_empty() {
                        queue.push(w);
                    }
                }
            }
        }
        basis.push(u);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::RatFunc;
    use crate::rootdata::CartanDatum;
    use crate::uq::{braid_tw, build_simple};

    #[test]
    fn act_braid_matches_expansion() {
        let d = RootDatum::simply_connected(CartanDatum::of_type('A', 2));
        let m = build_simple::<RatFunc>(&d, &[1, 1], 50).unwrap();
        let x = AlgebraElement::e(&d, 1, 1)
            .mul(&AlgebraElement::f(&d, 0, 1), &d)
            .add(&AlgebraElement::k(&d, &[1, 0]));
        for word in [vec![0], vec![0, 1], vec![1, 0, 1]] {
            assert_eq!(act_braid(&d, &word, &x, &m).unwrap(), act(&braid_tw(&d, &word, &x), &m).unwrap());
        }
        let idem = AlgebraElement::idem(&d, &[1, 1]);
        assert_eq!(
            act_braid(&d, &[0, 1], &idem, &m).unwrap(),
            act(&braid_tw(&d, &[0, 1], &idem), &m).unwrap()
        );
    }
}
