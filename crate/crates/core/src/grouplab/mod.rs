//! Rank-1 group points over `F_p`: `SL_2(F_p)` realized on a small faithful
//! battery, the involution on points, fixed subgroups and the conic count.

mod conic;
mod field;

pub use conic::{char2_nonreduced_witness, conic_count, conic_param_count, Char2Witness};
pub use field::{Fp, FpMatrix};

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::exactq::Rat;
use crate::iqg::{IParameters, IqgError};
use crate::parallel::{map_ordered, ExecMode};
use crate::qone::ThetaA;
use crate::satake::IRootDatum;
use crate::uq::{act, build_simple, AlgebraElement, UqError, WeightModule};

pub const MAX_PRIME: u64 = 13;

#[derive(Debug, Error)]
pub enum GroupLabError {
    #[error("p = {0} is not an odd prime <= 13")]
    BadPrime(u64),
    #[error("unsupported datum: {0}")]
    Unsupported(String),
    #[error("{0} is not a unit")]
    NotUnit(u64),
    #[error("entry {0} does not reduce mod p")]
    NotIntegral(String),
    #[error(transparent)]
    Uq(#[from] UqError),
    #[error(transparent)]
    Iqg(#[from] IqgError),
}

pub fn check_prime(p: u64) -> Result<Fp, GroupLabError> {
    let prime = p > 2 && (2..p).all(|k| !p.is_multiple_of(k));
    if prime && p <= MAX_PRIME {
        Ok(Fp::new(p))
    } else {
        Err(GroupLabError::BadPrime(p))
    }
}

/// One matrix per battery module.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupPoint {
    pub realization: Vec<FpMatrix>,
}

impl GroupPoint {
    /// The realization on `L(varpi)`.
    pub fn matrix(&self) -> &FpMatrix {
        &self.realization[0]
    }
}

#[derive(Debug, Clone)]
pub struct FiniteFieldGroup {
    pub p: u64,
    pub elements: Vec<GroupPoint>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootSign {
    Positive,
    Negative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Factor {
    X(u64),
    Y(u64),
    H(u64),
    S,
}

struct Realized {
    weights: Vec<Vec<i64>>,
    // index n - 1 holds the divided power n
    e: Vec<FpMatrix>,
    f: Vec<FpMatrix>,
    theta_e: Vec<FpMatrix>,
    theta_f: Vec<FpMatrix>,
}

/// `SL_2(F_p)` on `L(varpi)`, `L(2 varpi)` and `L(varpi) (x) L(varpi)`.
pub struct Sl2Lab {
    field: Fp,
    d: IRootDatum,
    labels: Vec<String>,
    modules: Vec<Realized>,
}

fn reduce(f: &Fp, m: &crate::linalg::SparseMatrix<Rat>, what: &str) -> Result<FpMatrix, GroupLabError> {
    FpMatrix::reduce(f, m).ok_or_else(|| GroupLabError::NotIntegral(what.to_string()))
}

impl Sl2Lab {
    pub fn new(d: &IRootDatum, params: &IParameters, p: u64) -> Result<Self, GroupLabError> {
        let field = check_prime(p)?;
        let datum = d.datum();
        if datum.rank() != 1 {
            return Err(GroupLabError::Unsupported(format!("rank {} (rank 1 only)", datum.rank())));
        }
        let Some((varpi, _)) = datum.solve_pairings(&[1]) else {
            return Err(GroupLabError::Unsupported("no weight with <alpha^vee, lambda> = 1".into()));
        };
        let two: Vec<i64> = varpi.iter().map(|x| 2 * x).collect();
        let l1 = build_simple::<Rat>(datum, &varpi, 10)?;
        let l2 = build_simple::<Rat>(datum, &two, 10)?;
        let t = l1.tensor(&l1)?;
        let theta = ThetaA::new(d, params);
        let mut modules = Vec::new();
        let mut labels = Vec::new();
        for m in [&l1, &l2, &t] {
            modules.push(Self::realize_module(&field, &theta, m)?);
            labels.push(m.label().to_string());
        }
        Ok(Sl2Lab {
            field,
            d: d.clone(),
            labels,
            modules,
        })
    }

    fn realize_module(f: &Fp, theta: &ThetaA, m: &WeightModule<Rat>) -> Result<Realized, GroupLabError> {
        let datum = m.datum();
        let mut r = Realized {
            weights: m.weights().to_vec(),
            e: vec![],
            f: vec![],
            theta_e: vec![],
            theta_f: vec![],
        };
        for n in 1..=m.e_nilpotency(0) {
            let te = act(&theta.apply(&AlgebraElement::e(datum, 0, n)), m)?;
            let tf = act(&theta.apply(&AlgebraElement::f(datum, 0, n)), m)?;
            r.e.push(reduce(f, &m.e_div(0, n), "E")?);
            r.f.push(reduce(f, &m.f_div(0, n), "F")?);
            r.theta_e.push(reduce(f, &te, "theta(E)")?);
            r.theta_f.push(reduce(f, &tf, "theta(F)")?);
        }
        Ok(r)
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn p(&self) -> u64 {
        self.field.p
    }

    /// Module labels of the battery, in realization order.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn identity(&self) -> GroupPoint {
        GroupPoint {
            realization: self.modules.iter().map(|m| FpMatrix::identity(m.weights.len())).collect(),
        }
    }

    pub fn mul(&self, g: &GroupPoint, h: &GroupPoint) -> GroupPoint {
        let f = &self.field;
        GroupPoint {
            realization: g.realization.iter().zip(&h.realization).map(|(a, b)| a.mul(f, b)).collect(),
        }
    }

    fn exp_sum(&self, pick: impl Fn(&Realized) -> &[FpMatrix], a: u64) -> GroupPoint {
        let f = &self.field;
        let realization = self
            .modules
            .iter()
            .map(|m| {
                let mut out = FpMatrix::identity(m.weights.len());
                let mut pow = 1;
                for x in pick(m) {
                    pow = f.mul(pow, a);
                    out = out.add(f, &x.scale(f, pow));
                }
                out
            })
            .collect();
        GroupPoint { realization }
    }

    /// `x(a) = sum a^n E^{(n)}` or `y(a) = sum a^n F^{(n)}`.
    pub fn one_param(&self, a: u64, sign: RootSign) -> GroupPoint {
        match sign {
            RootSign::Positive => self.exp_sum(|m| &m.e, a),
            RootSign::Negative => self.exp_sum(|m| &m.f, a),
        }
    }

    /// `t` gives the value on each basis vector of `X`; weight `lambda` acts by `prod t_k^{lambda_k}`.
    pub fn torus_point(&self, t: &[u64]) -> Result<GroupPoint, GroupLabError> {
        let f = &self.field;
        if let Some(&bad) = t.iter().find(|&&x| f.inv(x).is_none()) {
            return Err(GroupLabError::NotUnit(bad));
        }
        let value = |w: &[i64]| w.iter().zip(t).fold(1, |acc, (&e, &x)| f.mul(acc, f.pow(x, e).expect("unit")));
        let realization = self
            .modules
            .iter()
            .map(|m| FpMatrix::diagonal(m.weights.iter().map(|w| value(w)).collect()))
            .collect();
        Ok(GroupPoint { realization })
    }

    /// `h(t)`: the cocharacter `alpha^vee` at `t`, realized as a torus point.
    fn h(&self, t: u64) -> GroupPoint {
        let f = &self.field;
        let cor = &self.d.datum().coroots()[0];
        let realization = self
            .modules
            .iter()
            .map(|m| {
                FpMatrix::diagonal(
                    m.weights
                        .iter()
                        .map(|w| f.pow(t, self.d.datum().pair(cor, w)).expect("unit"))
                        .collect(),
                )
            })
            .collect();
        GroupPoint { realization }
    }

    /// `sbar = x(1) y(-1) x(1)`.
    pub fn sbar(&self) -> GroupPoint {
        let m1 = self.field.neg(1);
        let x = self.one_param(1, RootSign::Positive);
        self.mul(&self.mul(&x, &self.one_param(m1, RootSign::Negative)), &x)
    }

    fn factor(&self, g: &FpMatrix) -> Vec<Factor> {
        let f = &self.field;
        let (b, c, d) = (g.get(0, 1), g.get(1, 0), g.get(1, 1));
        match f.inv(d) {
            Some(di) => vec![Factor::X(f.mul(b, di)), Factor::H(di), Factor::Y(f.mul(c, di))],
            None => {
                // sbar^{-1} g = [[-c, -d], [a, b]] has nonzero lower-right entry
                let s_inv = FpMatrix::from_rows(&[vec![0, f.neg(1)], vec![1, 0]]);
                let mut out = vec![Factor::S];
                out.extend(self.factor(&s_inv.mul(f, g)));
                out
            }
        }
    }

    fn assemble(&self, fs: &[Factor], theta: bool) -> GroupPoint {
        fs.iter().fold(self.identity(), |acc, &fac| {
            let x = match (fac, theta) {
                (Factor::X(a), false) => self.one_param(a, RootSign::Positive),
                (Factor::Y(a), false) => self.one_param(a, RootSign::Negative),
                (Factor::H(t), false) => self.h(t),
                (Factor::S, false) => self.sbar(),
                (Factor::X(a), true) => self.exp_sum(|m| &m.theta_e, a),
                (Factor::Y(a), true) => self.exp_sum(|m| &m.theta_f, a),
                (Factor::H(t), true) => self.theta_h(t),
                (Factor::S, true) => {
                    let m1 = self.field.neg(1);
                    self.assemble(&[Factor::X(1), Factor::Y(m1), Factor::X(1)], true)
                }
            };
            self.mul(&acc, &x)
        })
    }

    fn theta_h(&self, t: u64) -> GroupPoint {
        // theta(1_lambda) = 1_{theta_X lambda}, so weight lambda picks up t at theta_X lambda
        let f = &self.field;
        let cor = &self.d.datum().coroots()[0];
        let realization = self
            .modules
            .iter()
            .map(|m| {
                FpMatrix::diagonal(
                    m.weights
                        .iter()
                        .map(|w| f.pow(t, self.d.datum().pair(cor, &self.d.theta(w))).expect("unit"))
                        .collect(),
                )
            })
            .collect();
        GroupPoint { realization }
    }

    /// The point with `L(varpi)`-matrix `g`; `None` unless `det g = 1`.
    pub fn point(&self, g: &FpMatrix) -> Option<GroupPoint> {
        (g.dim() == 2 && g.det2(&self.field) == 1).then(|| self.assemble(&self.factor(g), false))
    }

    /// The involution on points, transported from `theta_A` factor by factor.
    pub fn theta(&self, g: &GroupPoint) -> GroupPoint {
        self.assemble(&self.factor(g.matrix()), true)
    }

    /// Realization on the tensor module equals the Kronecker square.
    pub fn tensor_compatible(&self, g: &GroupPoint) -> bool {
        g.realization[2] == g.realization[0].kron(&self.field, &g.realization[0])
    }

    /// All `p (p^2 - 1)` points, from every determinant-one `2 x 2` matrix.
    pub fn enumerate(&self, mode: ExecMode) -> FiniteFieldGroup {
        let f = &self.field;
        let mats: Vec<FpMatrix> = (0..f.p.pow(4))
            .map(|k| {
                let q = f.p;
                FpMatrix::from_rows(&[vec![k % q, k / q % q], vec![k / q / q % q, k / q / q / q]])
            })
            .filter(|m| m.det2(f) == 1)
            .collect();
        let elements = map_ordered(mode, &mats, |m| self.point(m).expect("det 1"));
        FiniteFieldGroup { p: f.p, elements }
    }

    pub fn fixed_points(&self, group: &FiniteFieldGroup, mode: ExecMode) -> FiniteFieldGroup {
        let keep = map_ordered(mode, &group.elements, |g| self.theta(g) == *g);
        let elements = group
            .elements
            .iter()
            .zip(keep)
            .filter(|(_, k)| *k)
            .map(|(g, _)| g.clone())
            .collect();
        FiniteFieldGroup { p: group.p, elements }
    }

    /// Identity, inverses and all products stay in `set`.
    pub fn is_subgroup(&self, set: &[GroupPoint]) -> bool {
        let members: BTreeSet<&FpMatrix> = set.iter().map(GroupPoint::matrix).collect();
        let f = &self.field;
        members.contains(&FpMatrix::identity(2))
            && set.iter().all(|g| g.matrix().inverse2(f).is_some_and(|i| members.contains(&i)))
            && set
                .iter()
                .all(|g| set.iter().all(|h| members.contains(&g.matrix().mul(f, h.matrix()))))
    }

    /// `theta(g) = D g^{-T} D^{-1}` with `D = diag(1, -sbar)` on `L(varpi)`, for split `SL_2`.
    pub fn split_oracle(&self, g: &FpMatrix, sbar: i64) -> FpMatrix {
        let f = &self.field;
        let dd = FpMatrix::diagonal(vec![1, f.from_int(-sbar)]);
        let di = dd.inverse2(f).expect("unit");
        dd.mul(f, &g.inverse2(f).expect("det 1").transpose()).mul(f, &di)
    }

    /// Realization on `L(varpi)` of `k`'s generators: `f + theta(f)` (white)
    /// or `e`, `f` (black).
    fn k_generators(&self) -> Vec<FpMatrix> {
        let f = &self.field;
        let m = &self.modules[0];
        if self.d.diagram().is_black(0) {
            vec![m.e[0].clone(), m.f[0].clone()]
        } else {
            vec![m.f[0].add(f, &m.theta_f[0])]
        }
    }

    /// Fixed points against the subgroup generated by `theta`-fixed torus
    /// points and Cayley transforms `(1 + a k)(1 - a k)^{-1}` of `k`.
    pub fn tk_check(&self, group: &FiniteFieldGroup, fixed: &FiniteFieldGroup) -> TkReport {
        let f = &self.field;
        let torus: Vec<FpMatrix> = f
            .units()
            .map(|t| self.h(t))
            .filter(|h| self.theta(h) == *h)
            .map(|h| h.matrix().clone())
            .collect();
        let one = FpMatrix::identity(2);
        let mut gens: BTreeSet<FpMatrix> = torus.iter().cloned().collect();
        for k in self.k_generators() {
            for a in f.elements() {
                let ak = k.scale(f, a);
                let minus = one.add(f, &ak.scale(f, f.neg(1)));
                if let Some(inv) = minus.inverse2(f) {
                    gens.insert(one.add(f, &ak).mul(f, &inv));
                }
            }
        }
        let mut generated: BTreeSet<FpMatrix> = BTreeSet::from([one]);
        let mut frontier: Vec<FpMatrix> = generated.iter().cloned().collect();
        while let Some(x) = frontier.pop() {
            for g in &gens {
                let y = x.mul(f, g);
                if generated.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        let fixed_set: BTreeSet<&FpMatrix> = fixed.elements.iter().map(GroupPoint::matrix).collect();
        let control = group.elements.iter().map(GroupPoint::matrix).find(|m| !fixed_set.contains(m));
        TkReport {
            p: f.p,
            fixed_torus: torus.len(),
            generators: gens.len(),
            generated: generated.len(),
            fixed: fixed_set.len(),
            generated_in_fixed: generated.iter().all(|m| fixed_set.contains(m)),
            fixed_in_generated: fixed_set.iter().all(|m| generated.contains(*m)),
            control_excluded: control.map(|m| !generated.contains(m)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TkReport {
    pub p: u64,
    pub fixed_torus: usize,
    pub generators: usize,
    pub generated: usize,
    pub fixed: usize,
    pub generated_in_fixed: bool,
    pub fixed_in_generated: bool,
    /// A non-fixed point lies outside the generated group; `None` if every point is fixed.
    pub control_excluded: Option<bool>,
}

impl TkReport {
    pub fn holds(&self) -> bool {
        self.generated_in_fixed && self.fixed_in_generated && self.control_excluded != Some(false)
    }
}

/// One row of the rank-1 table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sl2Row {
    pub p: u64,
    pub sign: i64,
    /// Only the default sign is asserted; other signs are informational.
    pub normative: bool,
    pub group_order: usize,
    pub expected_group_order: u64,
    pub fixed: usize,
    pub conic: usize,
    pub conic_param: usize,
    pub tensor_compatible: bool,
    pub theta_involutive: bool,
    pub theta_multiplicative: bool,
    pub realization_multiplicative: bool,
    pub fixed_is_subgroup: bool,
    /// Agreement with `D g^{-T} D^{-1}`; `None` off the split entry.
    pub oracle_agrees: Option<bool>,
    pub tk: TkReport,
}

impl Sl2Row {
    pub fn fixed_matches_conic(&self) -> bool {
        self.fixed == self.conic
    }

    pub fn structure_holds(&self) -> bool {
        self.group_order as u64 == self.expected_group_order
            && self.tensor_compatible
            && self.theta_involutive
            && self.theta_multiplicative
            && self.realization_multiplicative
            && self.fixed_is_subgroup
            && self.oracle_agrees != Some(false)
            && self.tk.holds()
    }
}

pub const SAMPLE_PAIRS: usize = 200;

pub fn sl2_row(d: &IRootDatum, params: &IParameters, p: u64, seed: u64, mode: ExecMode) -> Result<Sl2Row, GroupLabError> {
    let lab = Sl2Lab::new(d, params, p)?;
    let default = IParameters::default_for(d);
    let sign = params.sbar(0);
    let group = lab.enumerate(mode);
    let fixed = lab.fixed_points(&group, mode);
    let els = &group.elements;
    let per_point = map_ordered(mode, els, |g| {
        let t = lab.theta(g);
        (lab.tensor_compatible(g), lab.theta(&t) == *g)
    });
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(&GroupPoint, &GroupPoint)> = (0..SAMPLE_PAIRS)
        .map(|_| (els.choose(&mut rng).expect("nonempty"), els.choose(&mut rng).expect("nonempty")))
        .collect();
    let split = d.diagram().black().is_empty();
    Ok(Sl2Row {
        p,
        sign,
        normative: sign == default.sbar(0),
        group_order: els.len(),
        expected_group_order: p * (p * p - 1),
        fixed: fixed.elements.len(),
        conic: conic_count(p),
        conic_param: conic_param_count(p),
        tensor_compatible: per_point.iter().all(|x| x.0),
        theta_involutive: per_point.iter().all(|x| x.1),
        theta_multiplicative: pairs
            .iter()
            .all(|(g, h)| lab.theta(&lab.mul(g, h)) == lab.mul(&lab.theta(g), &lab.theta(h))),
        realization_multiplicative: pairs
            .iter()
            .all(|(g, h)| lab.point(&g.matrix().mul(&lab.field, h.matrix())) == Some(lab.mul(g, h))),
        fixed_is_subgroup: lab.is_subgroup(&fixed.elements),
        oracle_agrees: split.then(|| els.iter().all(|g| lab.theta(g).matrix() == &lab.split_oracle(g.matrix(), sign))),
        tk: lab.tk_check(&group, &fixed),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::satake::catalog_entry;

    fn lab(p: u64) -> Sl2Lab {
        let d = catalog_entry("SL2-split").unwrap();
        Sl2Lab::new(&d, &IParameters::default_for(&d), p).unwrap()
    }

    fn m(rows: [[u64; 2]; 2]) -> FpMatrix {
        FpMatrix::from_rows(&[rows[0].to_vec(), rows[1].to_vec()])
    }

    #[test]
    fn primes() {
        assert!(check_prime(2).is_err());
        assert!(check_prime(9).is_err());
        assert!(check_prime(17).is_err());
        assert!(check_prime(13).is_ok());
    }

    #[test]
    fn one_parameter_subgroups() {
        let l = lab(7);
        assert_eq!(l.one_param(0, RootSign::Positive), l.identity());
        assert_eq!(l.one_param(3, RootSign::Positive).matrix(), &m([[1, 3], [0, 1]]));
        for (a, b) in [(1, 2), (3, 5), (6, 6)] {
            let s = l.mul(&l.one_param(a, RootSign::Positive), &l.one_param(b, RootSign::Positive));
            assert_eq!(s, l.one_param((a + b) % 7, RootSign::Positive));
        }
        assert_eq!(l.sbar().matrix(), &m([[0, 1], [6, 0]]));
    }

    #[test]
    fn torus_points() {
        let l = lab(3);
        assert_eq!(l.torus_point(&[1]).unwrap(), l.identity());
        assert_eq!(l.torus_point(&[2]).unwrap().matrix(), &m([[2, 0], [0, 2]]));
        assert!(matches!(l.torus_point(&[0]), Err(GroupLabError::NotUnit(0))));
        let t = l.torus_point(&[2]).unwrap();
        assert_eq!(l.theta(&t), l.torus_point(&[l.field().inv(2).unwrap()]).unwrap());
    }

    #[test]
    fn theta_on_x_is_y() {
        let l = lab(3);
        assert_eq!(l.theta(&l.identity()), l.identity());
        for a in 0..3 {
            assert_eq!(l.theta(&l.one_param(a, RootSign::Positive)), l.one_param(a, RootSign::Negative));
        }
    }

    #[test]
    fn small_groups() {
        let l = lab(3);
        let g = l.enumerate(ExecMode::Sequential);
        assert_eq!(g.elements.len(), 24);
        assert!(g.elements.iter().all(|x| l.tensor_compatible(x)));
        let k = l.fixed_points(&g, ExecMode::Sequential);
        assert_eq!(k.elements.len(), 2);
        assert!(k.elements.contains(&l.identity()));
        let l7 = lab(7);
        let g7 = l7.enumerate(ExecMode::Parallel);
        assert_eq!(g7.elements.len(), 336);
        let k7 = l7.fixed_points(&g7, ExecMode::Parallel);
        assert_eq!(k7.elements.len(), 6);
        assert!(l7.is_subgroup(&k7.elements));
        let tk = l7.tk_check(&g7, &k7);
        assert!(tk.holds(), "{tk:?}");
        assert_eq!(tk.control_excluded, Some(true));
    }

    #[test]
    fn rows_for_small_primes() {
        let d = catalog_entry("SL2-split").unwrap();
        let p = IParameters::default_for(&d);
        for q in [3, 5] {
            let r = sl2_row(&d, &p, q, 7, ExecMode::Sequential).unwrap();
            assert!(r.normative && r.structure_holds() && r.fixed_matches_conic(), "{r:?}");
        }
        let other = p.with_signs(&[(0, -1)].into());
        let r = sl2_row(&d, &other, 3, 7, ExecMode::Sequential).unwrap();
        assert!(!r.normative && r.structure_holds());
        assert_eq!(r.fixed, 4);
    }

    #[test]
    fn compact_form_fixes_everything() {
        let d = catalog_entry("SL2-compact").unwrap();
        let r = sl2_row(&d, &IParameters::default_for(&d), 5, 1, ExecMode::Sequential).unwrap();
        assert_eq!(r.fixed, r.group_order);
        assert!(r.structure_holds(), "{r:?}");
    }

    #[test]
    fn rejects_higher_rank() {
        let d = catalog_entry("A2-split").unwrap();
        assert!(matches!(
            Sl2Lab::new(&d, &IParameters::default_for(&d), 3),
            Err(GroupLabError::Unsupported(_))
        ));
    }
}
