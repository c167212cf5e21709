//! Cartan data, root data, Weyl groups and their actions on `X` and `Y`.

mod weyl;

pub use weyl::{braid_order, longest_element, positive_roots, reduced_words, two_rho_coroot, weyl_enumerate, PositiveRoot, WeylElement};

use num_traits::{One, Signed};
use serde::Serialize;
use thiserror::Error;

use crate::linalg::IntMatrix;

/// Default cap on the rank of a parabolic subgroup we are willing to enumerate.
pub const DEFAULT_RANK_BOUND: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootDataError {
    #[error("unknown node {0}")]
    UnknownNode(i64),
    #[error("malformed datum: {0}")]
    Shape(String),
    #[error("subset of rank {rank} exceeds the configured bound {bound}")]
    RankBound { rank: usize, bound: usize },
    #[error("datum violates axiom `{0}`")]
    Invalid(String),
}

/// Outcome of one axiom test, with a witness when it fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: String,
    pub holds: bool,
    /// Passed because nothing was there to test.
    pub vacuous: bool,
    pub witness: Option<String>,
}

impl AxiomCheck {
    pub fn pass(axiom: impl Into<String>) -> Self {
        AxiomCheck {
            axiom: axiom.into(),
            holds: true,
            vacuous: false,
            witness: None,
        }
    }

    pub fn vacuous(axiom: impl Into<String>) -> Self {
        AxiomCheck {
            vacuous: true,
            ..Self::pass(axiom)
        }
    }

    pub fn fail(axiom: impl Into<String>, witness: impl Into<String>) -> Self {
        AxiomCheck {
            axiom: axiom.into(),
            holds: false,
            vacuous: false,
            witness: Some(witness.into()),
        }
    }

    /// Passes unless some witness was found.
    pub fn from_witness(axiom: impl Into<String>, witness: Option<String>) -> Self {
        match witness {
            None => Self::pass(axiom),
            Some(w) => Self::fail(axiom, w),
        }
    }
}

pub fn all_hold(checks: &[AxiomCheck]) -> bool {
    checks.iter().all(|c| c.holds)
}

/// Node set `I` with the symmetric bilinear form `i . j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanDatum {
    labels: Vec<i64>,
    form: IntMatrix,
}

impl CartanDatum {
    pub fn new(labels: Vec<i64>, form: IntMatrix) -> Result<Self, RootDataError> {
        if form.rows() != labels.len() || form.cols() != labels.len() {
            return Err(RootDataError::Shape(format!(
                "form is {}x{} but there are {} nodes",
                form.rows(),
                form.cols(),
                labels.len()
            )));
        }
        let mut sorted = labels.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != labels.len() {
            return Err(RootDataError::Shape("node labels are not distinct".into()));
        }
        Ok(CartanDatum { labels, form })
    }

    /// Cartan datum of a Cartan matrix given by type letter and rank, nodes labelled 1..n.
    /// For B and C the short/long convention follows Bourbaki numbering.
    pub fn of_type(kind: char, n: usize) -> Self {
        let mut f = IntMatrix::zeros(n, n);
        for i in 0..n {
            f[(i, i)] = 2;
            if i + 1 < n {
                f[(i, i + 1)] = -1;
                f[(i + 1, i)] = -1;
            }
        }
        match (kind, n) {
            ('A', _) => {}
            ('B', _) if n >= 2 => {
                // long roots 1..n-1 (length 4), short root n
                for i in 0..n {
                    for j in 0..n {
                        f[(i, j)] *= 2;
                    }
                }
                f[(n - 1, n - 1)] = 2;
            }
            ('C', _) if n >= 2 => {
                // short roots 1..n-1, long root n
                f[(n - 1, n - 1)] = 4;
                f[(n - 2, n - 1)] = -2;
                f[(n - 1, n - 2)] = -2;
            }
            ('G', 2) => {
                f[(0, 0)] = 2;
                f[(1, 1)] = 6;
                f[(0, 1)] = -3;
                f[(1, 0)] = -3;
            }
            _ => panic!("unsupported type {kind}{n}"),
        }
        CartanDatum {
            labels: (1..=n as i64).collect(),
            form: f,
        }
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> i64 {
        self.labels[i]
    }

    pub fn index_of(&self, label: i64) -> Result<usize, RootDataError> {
        self.labels
            .iter()
            .position(|&l| l == label)
            .ok_or(RootDataError::UnknownNode(label))
    }

    pub fn form(&self) -> &IntMatrix {
        &self.form
    }

    pub fn dot(&self, i: usize, j: usize) -> i64 {
        self.form[(i, j)]
    }

    /// `epsilon_i = (i . i) / 2`, the exponent in `q_i = q^epsilon_i`.
    pub fn eps(&self, i: usize) -> i64 {
        self.form[(i, i)] / 2
    }

    /// `c_ij = 2 (i . j) / (i . i)`.
    pub fn c(&self, i: usize, j: usize) -> i64 {
        2 * self.form[(i, j)] / self.form[(i, i)]
    }

    pub fn cartan_matrix(&self) -> IntMatrix {
        let n = self.rank();
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = self.c(i, j);
            }
        }
        m
    }

    pub fn validate(&self) -> Vec<AxiomCheck> {
        let n = self.rank();
        let mut out = Vec::new();
        let asym = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| self.form[(i, j)] != self.form[(j, i)]);
        out.push(AxiomCheck::from_witness(
            "form is symmetric",
            asym.map(|(i, j)| {
                format!(
                    "{}.{} = {} but {}.{} = {}",
                    self.labels[i],
                    self.labels[j],
                    self.form[(i, j)],
                    self.labels[j],
                    self.labels[i],
                    self.form[(j, i)]
                )
            }),
        ));
        let bad_diag = (0..n).find(|&i| ![2, 4, 6].contains(&self.form[(i, i)]));
        out.push(AxiomCheck::from_witness(
            "i.i in {2,4,6}",
            bad_diag.map(|i| format!("{0}.{0} = {1}", self.labels[i], self.form[(i, i)])),
        ));
        let mut off = None;
        if bad_diag.is_none() {
            'outer: for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    let num = 2 * self.form[(i, j)];
                    let den = self.form[(i, i)];
                    if num % den != 0 || ![0, -1, -2, -3].contains(&(num / den)) {
                        off = Some(format!(
                            "2({}.{})/({}.{}) = {}/{}",
                            self.labels[i], self.labels[j], self.labels[i], self.labels[i], num, den
                        ));
                        break 'outer;
                    }
                }
            }
        }
        out.push(AxiomCheck::from_witness("2(i.j)/(i.i) in {0,-1,-2,-3} for i != j", off));
        let minors = self.form.leading_minors();
        let bad_minor = minors.iter().position(|m| !m.is_positive());
        out.push(AxiomCheck::from_witness(
            "form is positive definite",
            bad_minor.map(|k| format!("leading principal minor of size {} is {}", k + 1, minors[k])),
        ));
        out
    }
}

/// `(Y, X, alpha_i^vee, alpha_i)` with `X = Z^n` (columns), `Y = Z^n`, and the
/// pairing `<y, x> = y^T P x` for an explicit integer matrix `P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootDatum {
    cartan: CartanDatum,
    rank_x: usize,
    roots: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
    pairing: IntMatrix,
}

impl RootDatum {
    /// Shape-checked constructor; the axioms are checked by [`RootDatum::validate`].
    pub fn new(
        cartan: CartanDatum,
        rank_x: usize,
        roots: Vec<Vec<i64>>,
        coroots: Vec<Vec<i64>>,
        pairing: IntMatrix,
    ) -> Result<Self, RootDataError> {
        let n = cartan.rank();
        if rank_x == 0 {
            return Err(RootDataError::Shape("rankX must be positive".into()));
        }
        if roots.len() != n || coroots.len() != n {
            return Err(RootDataError::Shape(format!(
                "expected {n} roots and coroots, got {} and {}",
                roots.len(),
                coroots.len()
            )));
        }
        if roots.iter().chain(&coroots).any(|v| v.len() != rank_x) {
            return Err(RootDataError::Shape(format!("roots and coroots must have length rankX = {rank_x}")));
        }
        if pairing.rows() != rank_x || pairing.cols() != rank_x {
            return Err(RootDataError::Shape(format!("pairing must be {rank_x}x{rank_x}")));
        }
        Ok(RootDatum {
            cartan,
            rank_x,
            roots,
            coroots,
            pairing,
        })
    }

    /// Shape-checked and axiom-checked.
    pub fn checked(
        cartan: CartanDatum,
        rank_x: usize,
        roots: Vec<Vec<i64>>,
        coroots: Vec<Vec<i64>>,
        pairing: IntMatrix,
    ) -> Result<Self, RootDataError> {
        let d = Self::new(cartan, rank_x, roots, coroots, pairing)?;
        if let Some(bad) = d.validate().into_iter().find(|c| !c.holds) {
            return Err(RootDataError::Invalid(bad.axiom));
        }
        Ok(d)
    }

    /// Simply connected datum: `X` in the fundamental weight basis.
    pub fn simply_connected(cartan: CartanDatum) -> Self {
        let n = cartan.rank();
        let c = cartan.cartan_matrix();
        let roots = (0..n).map(|j| c.column(j)).collect();
        let coroots = (0..n).map(|i| unit(n, i)).collect();
        Self::new(cartan, n, roots, coroots, IntMatrix::identity(n)).expect("well-shaped")
    }

    /// Adjoint datum: `X` is the root lattice.
    pub fn adjoint(cartan: CartanDatum) -> Self {
        let n = cartan.rank();
        let c = cartan.cartan_matrix();
        let roots = (0..n).map(|i| unit(n, i)).collect();
        let coroots = (0..n).map(|i| c.row(i)).collect();
        Self::new(cartan, n, roots, coroots, IntMatrix::identity(n)).expect("well-shaped")
    }

    pub fn cartan(&self) -> &CartanDatum {
        &self.cartan
    }

    pub fn rank(&self) -> usize {
        self.cartan.rank()
    }

    pub fn rank_x(&self) -> usize {
        self.rank_x
    }

    pub fn root(&self, i: usize) -> &[i64] {
        &self.roots[i]
    }

    pub fn coroot(&self, i: usize) -> &[i64] {
        &self.coroots[i]
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn coroots(&self) -> &[Vec<i64>] {
        &self.coroots
    }

    pub fn pairing(&self) -> &IntMatrix {
        &self.pairing
    }

    /// `<mu, lambda>` for `mu` in `Y`, `lambda` in `X`.
    pub fn pair(&self, mu: &[i64], lambda: &[i64]) -> i64 {
        let pl = self.pairing.apply(lambda);
        mu.iter().zip(&pl).map(|(a, b)| a * b).sum()
    }

    /// `<alpha_i^vee, lambda>`.
    pub fn coroot_pairing(&self, i: usize, lambda: &[i64]) -> i64 {
        self.pair(&self.coroots[i], lambda)
    }

    /// `(<alpha_i^vee, lambda>)_i`.
    pub fn coroot_pairings(&self, lambda: &[i64]) -> Vec<i64> {
        (0..self.rank()).map(|i| self.coroot_pairing(i, lambda)).collect()
    }

    pub fn validate(&self) -> Vec<AxiomCheck> {
        let mut out = self.cartan.validate();
        let det = self.pairing.det();
        out.push(AxiomCheck::from_witness(
            "pairing is perfect",
            (!det.abs().is_one()).then(|| format!("det of pairing matrix is {det}")),
        ));
        let n = self.rank();
        let mut bad = None;
        'outer: for i in 0..n {
            for j in 0..n {
                let lhs = self.pair(&self.coroots[i], &self.roots[j]);
                let rhs = 2 * self.cartan.form[(i, j)];
                let ii = self.cartan.form[(i, i)];
                if ii == 0 || lhs * ii != rhs {
                    bad = Some(format!(
                        "<alpha_{}^vee, alpha_{}> = {} but 2(i.j)/(i.i) = {}/{}",
                        self.cartan.labels[i], self.cartan.labels[j], lhs, rhs, ii
                    ));
                    break 'outer;
                }
            }
        }
        out.push(AxiomCheck::from_witness("<alpha_i^vee, alpha_j> = 2(i.j)/(i.i)", bad));
        out
    }

    pub fn is_valid(&self) -> bool {
        all_hold(&self.validate())
    }

    /// `s_i(lambda) = lambda - <alpha_i^vee, lambda> alpha_i`.
    pub fn reflect_x(&self, i: usize, lambda: &[i64]) -> Vec<i64> {
        let c = self.coroot_pairing(i, lambda);
        lambda.iter().zip(&self.roots[i]).map(|(l, a)| l - c * a).collect()
    }

    /// `s_i(mu) = mu - <mu, alpha_i> alpha_i^vee`.
    pub fn reflect_y(&self, i: usize, mu: &[i64]) -> Vec<i64> {
        let c = self.pair(mu, &self.roots[i]);
        mu.iter().zip(&self.coroots[i]).map(|(m, a)| m - c * a).collect()
    }

    pub fn reflection_x(&self, i: usize) -> IntMatrix {
        let n = self.rank_x;
        let cols: Vec<Vec<i64>> = (0..n).map(|k| self.reflect_x(i, &unit(n, k))).collect();
        IntMatrix::from_columns(&cols, n)
    }

    pub fn reflection_y(&self, i: usize) -> IntMatrix {
        let n = self.rank_x;
        let cols: Vec<Vec<i64>> = (0..n).map(|k| self.reflect_y(i, &unit(n, k))).collect();
        IntMatrix::from_columns(&cols, n)
    }

    /// The matrix of a linear map on `Y` dual to `m` on `X` through the pairing:
    /// `<m^T(mu), lambda> = <mu, m(lambda)>`.
    pub fn dual_on_y(&self, m: &IntMatrix) -> IntMatrix {
        // P^T-adjoint: want A with (A mu)^T P = mu^T P m, so A = (P m P^-1)^T
        let pinv = self.pairing.inverse().expect("perfect pairing");
        self.pairing.mul(m).mul(&pinv).transpose()
    }

    pub fn dominant(&self, lambda: &[i64]) -> bool {
        (0..self.rank()).all(|i| self.coroot_pairing(i, lambda) >= 0)
    }

    /// Integer solutions of `<alpha_i^vee, lambda> = c_i`: one particular
    /// solution (if any) plus a basis of the homogeneous solutions.
    pub fn solve_pairings(&self, c: &[i64]) -> Option<(Vec<i64>, Vec<Vec<i64>>)> {
        let pt = self.pairing.transpose();
        let rows: Vec<Vec<i64>> = self.coroots.iter().map(|y| pt.apply(y)).collect();
        let a = IntMatrix::from_rows(&rows).expect("rectangular");
        let s = a.smith();
        let uc = s.u.apply(c);
        let r = s.rank();
        let d = s.invariant_factors();
        let mut y = vec![0; self.rank_x];
        for k in 0..uc.len() {
            if k < r {
                if uc[k] % d[k] != 0 {
                    return None;
                }
                y[k] = uc[k] / d[k];
            } else if uc[k] != 0 {
                return None;
            }
        }
        let lambda = s.v.apply(&y);
        let kernel = (r..self.rank_x).map(|j| s.v.column(j)).collect();
        Some((lambda, kernel))
    }
}

pub fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_datum_validates() {
        let d = RootDatum::simply_connected(CartanDatum::of_type('A', 2));
        assert!(d.is_valid());
    }

    #[test]
    fn bad_diagonal_is_reported() {
        let c = CartanDatum::new(vec![1], IntMatrix::from(vec![vec![3]])).unwrap();
        let checks = c.validate();
        let bad: Vec<_> = checks.iter().filter(|c| !c.holds).collect();
        assert_eq!(bad[0].axiom, "i.i in {2,4,6}");
    }

    #[test]
    fn sl2_by_hand() {
        let c = CartanDatum::of_type('A', 1);
        let d = RootDatum::new(c, 1, vec![vec![2]], vec![vec![1]], IntMatrix::identity(1)).unwrap();
        assert!(d.is_valid());
        assert_eq!(d.coroot_pairing(0, &[2]), 2);
    }

    #[test]
    fn imperfect_pairing_fails() {
        let c = CartanDatum::of_type('A', 1);
        let d = RootDatum::new(c, 1, vec![vec![1]], vec![vec![1]], IntMatrix::from(vec![vec![2]])).unwrap();
        let bad: Vec<_> = d.validate().into_iter().filter(|c| !c.holds).map(|c| c.axiom).collect();
        assert!(bad.contains(&"pairing is perfect".to_string()));
    }

    #[test]
    fn reflections() {
        let d = RootDatum::simply_connected(CartanDatum::of_type('A', 2));
        assert_eq!(d.reflect_x(0, d.root(0)), vec![-2, 1]);
        assert_eq!(d.reflect_x(0, &[1, 0]), vec![-1, 1]);
        assert_eq!(d.reflect_x(0, &[0, 1]), vec![0, 1]);
        assert!(d.reflection_x(1).mul(&d.reflection_x(1)).is_identity());
    }

    #[test]
    fn dominance() {
        let d = RootDatum::simply_connected(CartanDatum::of_type('A', 2));
        assert!(d.dominant(&[0, 0]));
        assert!(!d.dominant(d.root(0)));
    }

    #[test]
    fn solving_pairings_in_adjoint_type() {
        let d = RootDatum::adjoint(CartanDatum::of_type('A', 1));
        assert_eq!(d.solve_pairings(&[2]).map(|s| s.0), Some(vec![1]));
        assert!(d.solve_pairings(&[1]).is_none());
    }

    #[test]
    fn type_c_and_b_forms() {
        let c2 = CartanDatum::of_type('C', 2);
        assert_eq!(c2.cartan_matrix().to_rows(), vec![vec![2, -2], vec![-1, 2]]);
        let b2 = CartanDatum::of_type('B', 2);
        assert_eq!(b2.cartan_matrix().to_rows(), vec![vec![2, -1], vec![-2, 2]]);
        assert!(c2.validate().iter().all(|c| c.holds));
        assert!(b2.validate().iter().all(|c| c.holds));
    }
}
