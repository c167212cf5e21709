use std::collections::BTreeMap;

use crate::exactq::{qint, Scalar};
use crate::linalg::SparseMatrix;
use crate::rootdata::RootDatum;

use super::{Letter, UqError};

/// A finite-dimensional `X`-graded module with exact actions of
/// `E_i^{(n)}` and `F_i^{(n)}`; `K_mu` and `1_lambda` act through the grading.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightModule<S> {
    label: String,
    datum: RootDatum,
    weights: Vec<Vec<i64>>,
    blocks: BTreeMap<Vec<i64>, Vec<usize>>,
    e: Vec<Vec<SparseMatrix<S>>>,
    f: Vec<Vec<SparseMatrix<S>>>,
}

/// `[D_1, D_2, ...]` with `D_n = D_{n-1} X / [n]_i`, stopping before the first zero.
pub(crate) fn divided_powers<S: Scalar>(x: &SparseMatrix<S>, eps: i64) -> Result<Vec<SparseMatrix<S>>, UqError> {
    let mut out = Vec::new();
    let mut cur = x.clone();
    let mut n = 1;
    while !cur.is_zero() {
        out.push(cur.clone());
        n += 1;
        if n > cur.nrows() + 1 {
            return Err(UqError::NotNilpotent);
        }
        let d = S::from_laurent(&qint(n as i64, eps)).inv().ok_or(UqError::PoleAtOne)?;
        cur = cur.mul(x).scale(&d);
    }
    Ok(out)
}

impl<S: Scalar> WeightModule<S> {
    /// Assembles a module from per-vector weights and the actions of `E_i`
    /// and `F_i`; divided powers are derived by exact division.
    pub fn from_generators(
        label: impl Into<String>,
        datum: &RootDatum,
        weights: Vec<Vec<i64>>,
        e1: Vec<SparseMatrix<S>>,
        f1: Vec<SparseMatrix<S>>,
    ) -> Result<Self, UqError> {
        let mut blocks: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
        for (k, w) in weights.iter().enumerate() {
            blocks.entry(w.clone()).or_default().push(k);
        }
        let mut e = Vec::new();
        let mut f = Vec::new();
        for i in 0..datum.rank() {
            let eps = datum.cartan().eps(i);
            e.push(divided_powers(&e1[i], eps)?);
            f.push(divided_powers(&f1[i], eps)?);
        }
        Ok(WeightModule {
            label: label.into(),
            datum: datum.clone(),
            weights,
            blocks,
            e,
            f,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weight(&self, k: usize) -> &[i64] {
        &self.weights[k]
    }

    pub fn weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    /// Distinct weights with the basis indices of each weight space.
    pub fn blocks(&self) -> &BTreeMap<Vec<i64>, Vec<usize>> {
        &self.blocks
    }

    /// Weights with multiplicities, sorted.
    pub fn weight_multiset(&self) -> Vec<Vec<i64>> {
        let mut w = self.weights.clone();
        w.sort();
        w
    }

    /// `E_i^{(n)}`; `n = 0` is the identity.
    pub fn e_div(&self, i: usize, n: u32) -> SparseMatrix<S> {
        self.div_power(&self.e[i], n)
    }

    pub fn f_div(&self, i: usize, n: u32) -> SparseMatrix<S> {
        self.div_power(&self.f[i], n)
    }

    /// Largest `n` with `E_i^{(n)} != 0`.
    pub fn e_nilpotency(&self, i: usize) -> u32 {
        self.e[i].len() as u32
    }

    pub fn f_nilpotency(&self, i: usize) -> u32 {
        self.f[i].len() as u32
    }

    /// Matrix of one letter, `None` when it acts by zero.
    pub fn letter(&self, l: Letter) -> Option<&SparseMatrix<S>> {
        match l {
            Letter::E(i, n) => self.e[i].get(n as usize - 1),
            Letter::F(i, n) => self.f[i].get(n as usize - 1),
        }
    }

    fn div_power(&self, list: &[SparseMatrix<S>], n: u32) -> SparseMatrix<S> {
        match n {
            0 => SparseMatrix::identity(self.dim()),
            n if (n as usize) <= list.len() => list[n as usize - 1].clone(),
            _ => SparseMatrix::zeros(self.dim(), self.dim()),
        }
    }

    /// Diagonal of `K_mu`: `q^{<mu, wt>}`.
    pub fn k_diag(&self, mu: &[i64]) -> Vec<S> {
        self.weights.iter().map(|w| S::q_pow(self.datum.pair(mu, w))).collect()
    }

    pub fn k(&self, mu: &[i64]) -> SparseMatrix<S> {
        SparseMatrix::diagonal(self.k_diag(mu))
    }

    /// `K_i = K_{eps_i alpha_i^vee}`.
    pub fn k_i(&self, i: usize, power: i64) -> SparseMatrix<S> {
        let eps = self.datum.cartan().eps(i);
        let mu: Vec<i64> = self.datum.coroot(i).iter().map(|c| c * eps * power).collect();
        self.k(&mu)
    }

    /// Mask of basis vectors of weight `lambda`.
    pub fn weight_mask(&self, lambda: &[i64]) -> Vec<bool> {
        self.weights.iter().map(|w| w.as_slice() == lambda).collect()
    }

    pub fn projection(&self, lambda: &[i64]) -> SparseMatrix<S> {
        SparseMatrix::diagonal(
            self.weights
                .iter()
                .map(|w| if w.as_slice() == lambda { S::one() } else { S::zero() })
                .collect(),
        )
    }

    /// `^omega M`: weights negated, `E` and `F` exchanged.
    pub fn twist_omega(&self) -> Self {
        let label = match self.label.strip_prefix("^w") {
            Some(rest) => rest.to_string(),
            None => format!("^w{}", self.label),
        };
        let weights: Vec<Vec<i64>> = self.weights.iter().map(|w| w.iter().map(|x| -x).collect()).collect();
        let mut blocks: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
        for (k, w) in weights.iter().enumerate() {
            blocks.entry(w.clone()).or_default().push(k);
        }
        WeightModule {
            label,
            datum: self.datum.clone(),
            weights,
            blocks,
            e: self.f.clone(),
            f: self.e.clone(),
        }
    }

    /// `M ⊗ N` through `Delta(E_i) = E_i ⊗ 1 + K_i ⊗ E_i`,
    /// `Delta(F_i) = F_i ⊗ K_i^{-1} + 1 ⊗ F_i`.
    pub fn tensor(&self, other: &Self) -> Result<Self, UqError> {
        let weights: Vec<Vec<i64>> = self
            .weights
            .iter()
            .flat_map(|a| other.weights.iter().map(move |b| a.iter().zip(b).map(|(x, y)| x + y).collect()))
            .collect();
        let id_m = SparseMatrix::identity(self.dim());
        let id_n = SparseMatrix::identity(other.dim());
        let mut e1 = Vec::new();
        let mut f1 = Vec::new();
        for i in 0..self.datum.rank() {
            let (ce, cf) = coproduct(self, other, i, &id_m, &id_n);
            e1.push(ce);
            f1.push(cf);
        }
        Self::from_generators(format!("{} (x) {}", self.label, other.label), &self.datum, weights, e1, f1)
    }

    /// Entrywise image under a coefficient map (e.g. `q -> 1`).
    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> Option<T> + Copy) -> Result<WeightModule<T>, UqError> {
        let conv = |v: &Vec<SparseMatrix<S>>| -> Result<Vec<SparseMatrix<T>>, UqError> {
            v.iter().map(|m| m.map(f).ok_or(UqError::PoleAtOne)).collect()
        };
        Ok(WeightModule {
            label: self.label.clone(),
            datum: self.datum.clone(),
            weights: self.weights.clone(),
            blocks: self.blocks.clone(),
            e: self.e.iter().map(conv).collect::<Result<_, _>>()?,
            f: self.f.iter().map(conv).collect::<Result<_, _>>()?,
        })
    }
}

// the one place the coproduct convention lives
fn coproduct<S: Scalar>(
    m: &WeightModule<S>,
    n: &WeightModule<S>,
    i: usize,
    id_m: &SparseMatrix<S>,
    id_n: &SparseMatrix<S>,
) -> (SparseMatrix<S>, SparseMatrix<S>) {
    let e = m.e_div(i, 1).kron(id_n).add(&m.k_i(i, 1).kron(&n.e_div(i, 1)));
    let f = m.f_div(i, 1).kron(&n.k_i(i, -1)).add(&id_m.kron(&n.f_div(i, 1)));
    (e, f)
}
