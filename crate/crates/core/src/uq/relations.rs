use crate::exactq::{qint, Scalar};
use crate::linalg::SparseMatrix;
use crate::parallel::{map_ordered, ExecMode};
use crate::rootdata::{unit, AxiomCheck, RootDatum};

use super::{Letter, WeightModule};

/// Right-hand side used for `E_i F_j - F_j E_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rhs4 {
    /// `delta_ij (K_i - K_i^{-1}) / (q_i - q_i^{-1})`.
    Standard,
    /// `delta_ij K_i`; a deliberately wrong identity.
    Mutated,
}

pub const FAMILIES: [&str; 6] = [
    "K_0 = 1, K_mu K_mu' = K_{mu+mu'}",
    "K_mu E_i = q^{<mu,alpha_i>} E_i K_mu",
    "K_mu F_i = q^{-<mu,alpha_i>} F_i K_mu",
    "E_i F_j - F_j E_i = delta_ij (K_i - K_i^{-1})/(q_i - q_i^{-1})",
    "sum_n (-1)^n E_i^{(n)} E_j E_i^{(1-c_ij-n)} = 0",
    "sum_n (-1)^n F_i^{(n)} F_j F_i^{(1-c_ij-n)} = 0",
];

fn letter<S: Scalar>(m: &WeightModule<S>, l: Letter) -> SparseMatrix<S> {
    m.letter(l).cloned().unwrap_or_else(|| SparseMatrix::zeros(m.dim(), m.dim()))
}

fn witness<S: Scalar>(m: &WeightModule<S>, what: String, lhs: &SparseMatrix<S>, rhs: &SparseMatrix<S>) -> Option<String> {
    lhs.sub(rhs)
        .first_nonzero()
        .map(|(r, c, v)| format!("{what} on {}: entry ({r},{c}) of lhs - rhs is {v}", m.label()))
}

fn check_module<S: Scalar>(datum: &RootDatum, m: &WeightModule<S>, rhs4: Rhs4) -> [Option<String>; 6] {
    let n = m.dim();
    let r = datum.rank();
    let ry = datum.rank_x();
    let lab = |i: usize| datum.cartan().label(i);
    let id = SparseMatrix::identity(n);
    let mut out: [Option<String>; 6] = Default::default();

    let ys: Vec<Vec<i64>> = (0..ry).map(|k| unit(ry, k)).collect();
    let mut w = witness(m, "K_0".into(), &m.k(&vec![0; ry]), &id);
    for a in &ys {
        for b in &ys {
            let s: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            w = w.or_else(|| witness(m, format!("K_{a:?} K_{b:?}"), &m.k(a).mul(&m.k(b)), &m.k(&s)));
        }
    }
    out[0] = w;

    for (slot, sign) in [(1usize, 1i64), (2, -1)] {
        let mut w = None;
        for i in 0..r {
            let x = letter(m, if sign > 0 { Letter::E(i, 1) } else { Letter::F(i, 1) });
            for mu in &ys {
                let q = S::q_pow(sign * datum.pair(mu, datum.root(i)));
                let lhs = m.k(mu).mul(&x);
                let rhs = x.mul(&m.k(mu)).scale(&q);
                w = w.or_else(|| witness(m, format!("node {}, mu = {mu:?}", lab(i)), &lhs, &rhs));
            }
        }
        out[slot] = w;
    }

    let mut w = None;
    for i in 0..r {
        let eps = datum.cartan().eps(i);
        for j in 0..r {
            let e = letter(m, Letter::E(i, 1));
            let f = letter(m, Letter::F(j, 1));
            let lhs = e.mul(&f).sub(&f.mul(&e));
            let rhs = if i != j {
                SparseMatrix::zeros(n, n)
            } else {
                match rhs4 {
                    Rhs4::Mutated => m.k_i(i, 1),
                    Rhs4::Standard if S::is_classical() => SparseMatrix::diagonal(
                        m.weights()
                            .iter()
                            .map(|wt| S::from_laurent(&qint(datum.coroot_pairing(i, wt), eps)))
                            .collect(),
                    ),
                    Rhs4::Standard => {
                        let d = S::q_pow(eps).sub(&S::q_pow(-eps)).inv().expect("q is generic");
                        m.k_i(i, 1).sub(&m.k_i(i, -1)).scale(&d)
                    }
                }
            };
            w = w.or_else(|| witness(m, format!("i = {}, j = {}", lab(i), lab(j)), &lhs, &rhs));
        }
    }
    out[3] = w;

    for (slot, make) in [(4usize, Letter::E as fn(usize, u32) -> Letter), (5, Letter::F)] {
        let mut w = None;
        for i in 0..r {
            for j in 0..r {
                if i == j {
                    continue;
                }
                let top = (1 - datum.cartan().c(i, j)) as u32;
                let xj = letter(m, make(j, 1));
                let mut sum = SparseMatrix::zeros(n, n);
                for k in 0..=top {
                    let a = if k == 0 { id.clone() } else { letter(m, make(i, k)) };
                    let b = if k == top { id.clone() } else { letter(m, make(i, top - k)) };
                    let term = a.mul(&xj).mul(&b);
                    sum = if k % 2 == 0 { sum.add(&term) } else { sum.sub(&term) };
                }
                w = w.or_else(|| witness(m, format!("i = {}, j = {}", lab(i), lab(j)), &sum, &SparseMatrix::zeros(n, n)));
            }
        }
        out[slot] = w;
    }
    out
}

/// All six relation families on every battery module, one check per family.
pub fn check_serre<S: Scalar>(datum: &RootDatum, battery: &[WeightModule<S>]) -> Vec<AxiomCheck> {
    check_serre_with(datum, battery, Rhs4::Standard, ExecMode::default())
}

pub fn check_serre_with<S: Scalar>(datum: &RootDatum, battery: &[WeightModule<S>], rhs4: Rhs4, mode: ExecMode) -> Vec<AxiomCheck> {
    let per_module = map_ordered(mode, battery, |m| check_module(datum, m, rhs4));
    (0..6)
        .map(|k| {
            let w = per_module.iter().find_map(|ws| ws[k].clone());
            AxiomCheck::from_witness(FAMILIES[k], w)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::{Rat, RatFunc};
    use crate::rootdata::{all_hold, CartanDatum};
    use crate::uq::{build_simple, default_battery};

    #[test]
    fn a2_default_battery_passes() {
        let d = RootDatum::simply_connected(CartanDatum::of_type('A', 2));
        let b = default_battery::<RatFunc>(&d, 1).unwrap().modules;
        assert!(all_hold(&check_serre(&d, &b)));
    }

    #[test]
    fn mutated_relation_fails() {
        let d = RootDatum::simply_connected(CartanDatum::of_type('A', 1));
        let b = default_battery::<RatFunc>(&d, 2).unwrap().modules;
        let c = check_serre_with(&d, &b, Rhs4::Mutated, ExecMode::Sequential);
        assert!(!c[3].holds);
        assert!(c[3].witness.as_ref().unwrap().contains("on L("));
        assert!(c.iter().enumerate().all(|(k, x)| k == 3 || x.holds));
    }

    #[test]
    fn classical_modules_satisfy_relations() {
        let d = RootDatum::simply_connected(CartanDatum::of_type('B', 2));
        let m = build_simple::<Rat>(&d, &[1, 1], 200).unwrap();
        let t = m.twist_omega().tensor(&m).unwrap();
        assert!(all_hold(&check_serre(&d, &[m, t])));
    }
}
