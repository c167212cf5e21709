//! The `q = 1` specialization: the involution `theta_A`, its generator
//! checks, `sbar_i`, and the Lie algebras `g` and `k`.

mod lie;

pub use lie::{fixed_lie_algebra, LieReport};

use serde::Serialize;

use crate::exactq::{Rat, RatFunc, Scalar};
use crate::iqg::{black_parity, igens, IParameters, IqgError};
use crate::linalg::SparseMatrix;
use crate::parallel::{map_ordered, ExecMode};
use crate::rootdata::{AxiomCheck, RootDatum};
use crate::satake::IRootDatum;
use crate::uq::{act, battery_witness, braid_t, braid_tw, omega, tau_tilde, xi_grading, AlgebraElement, Letter, UqError, WeightModule};

/// `M` with every matrix entry evaluated at `q = 1`.
pub fn specialize(m: &WeightModule<RatFunc>) -> Result<WeightModule<Rat>, UqError> {
    m.map_scalars(|x: &RatFunc| Rat::from_ratfunc(x))
}

/// `theta_A = T_{w_black} o tau~ o omega o Xi(eps)`.
#[derive(Debug, Clone)]
pub struct ThetaA {
    d: IRootDatum,
    eps: Vec<i64>,
}

impl ThetaA {
    /// `eps(i) = sbar_i` on white nodes and `-1` on black ones.
    pub fn new(d: &IRootDatum, p: &IParameters) -> Self {
        Self::with_black_eps(d, p, -1)
    }

    /// Same, with `eps(i) = black` on black nodes (`+1` is the negative control).
    pub fn with_black_eps(d: &IRootDatum, p: &IParameters, black: i64) -> Self {
        let eps = (0..d.datum().rank())
            .map(|i| if d.diagram().is_black(i) { black } else { p.sbar(i) })
            .collect();
        ThetaA { d: d.clone(), eps }
    }

    pub fn eps(&self) -> &[i64] {
        &self.eps
    }

    pub fn datum(&self) -> &IRootDatum {
        &self.d
    }

    pub fn apply(&self, x: &AlgebraElement) -> AlgebraElement {
        let datum = self.d.datum();
        let t: Vec<RatFunc> = self.eps.iter().map(|&e| RatFunc::from_int(e)).collect();
        let y = xi_grading(datum, &t, x);
        let y = omega(datum, &y);
        let y = tau_tilde(&self.d, &y);
        braid_tw(datum, &self.d.w_black().word, &y)
    }
}

/// Weights with every `|<alpha_i^vee, lambda>| <= bound` that exist in `X`.
pub fn window(datum: &RootDatum, bound: i64) -> Vec<Vec<i64>> {
    let r = datum.rank();
    let mut out = Vec::new();
    let mut c = vec![-bound; r];
    loop {
        if let Some((lam, _)) = datum.solve_pairings(&c) {
            out.push(lam);
        }
        let Some(pos) = (0..r).rev().find(|&j| c[j] < bound) else { break };
        c[pos] += 1;
        for v in c.iter_mut().skip(pos + 1) {
            *v = -bound;
        }
    }
    out
}

/// One row of the sign bookkeeping `sbar_i sbar_{tau i} (-1)^{<2rho_black^vee, alpha_i>} = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignRow {
    pub node: i64,
    pub sbar: i64,
    pub sbar_tau: i64,
    pub parity: i64,
    pub product: i64,
}

pub fn sign_table(d: &IRootDatum, p: &IParameters) -> Vec<SignRow> {
    let tau = d.diagram().tau_map();
    d.diagram()
        .white()
        .into_iter()
        .map(|i| {
            let (a, b, c) = (p.sbar(i), p.sbar(tau[i]), black_parity(d, i));
            SignRow {
                node: d.datum().cartan().label(i),
                sbar: a,
                sbar_tau: b,
                parity: c,
                product: a * b * c,
            }
        })
        .collect()
}

fn first_witness(found: Vec<Option<String>>) -> Option<String> {
    found.into_iter().flatten().next()
}

/// `theta_A(theta_A(g)) = g` at `q = 1` on the battery for `g` in
/// `{1_lambda, E_i 1_lambda, F_i 1_lambda}`, `lambda` in the window.
pub fn verify_involution(
    theta: &ThetaA,
    p: &IParameters,
    window: &[Vec<i64>],
    battery: &[WeightModule<Rat>],
    mode: ExecMode,
) -> Result<Vec<AxiomCheck>, UqError> {
    let d = theta.datum();
    let datum = d.datum();
    let lab = |i: usize| datum.cartan().label(i);
    let mut out = Vec::new();
    type Make = fn(&RootDatum, usize, u32) -> AlgebraElement;
    let kinds: [(&str, Option<(&str, Make)>); 3] = [
        ("1_lambda", None),
        ("E_i 1_lambda", Some(("E", AlgebraElement::e))),
        ("F_i 1_lambda", Some(("F", AlgebraElement::f))),
    ];
    for (name, make) in kinds {
        let mut gens: Vec<(String, AlgebraElement)> = Vec::new();
        for lam in window {
            let idem = AlgebraElement::idem(datum, lam);
            match make {
                None => gens.push((format!("1{lam:?}"), idem)),
                Some((sym, mk)) => {
                    for i in 0..datum.rank() {
                        gens.push((format!("{sym}{} 1{lam:?}", lab(i)), mk(datum, i, 1).mul(&idem, datum)));
                    }
                }
            }
        }
        let found = map_ordered(mode, &gens, |(label, g)| {
            let back = theta.apply(&theta.apply(g));
            battery_witness(&back, g, battery).map(|w| w.map(|w| format!("{label}: {w}")))
        })
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
        out.push(AxiomCheck::from_witness(format!("theta_A^2 = id on {name}"), first_witness(found)));
    }
    let bad = sign_table(d, p).into_iter().find(|r| r.product != 1);
    out.push(AxiomCheck::from_witness(
        "sbar_i sbar_{tau i} (-1)^{<2rho_black^vee, alpha_i>} = 1",
        bad.map(|r| format!("node {}: product {}", r.node, r.product)),
    ));
    Ok(out)
}

/// `theta_A` fixes every ι-generator at `q = 1` on the battery.
pub fn theta_fixes_igens(theta: &ThetaA, p: &IParameters, battery: &[WeightModule<Rat>]) -> Result<Vec<AxiomCheck>, IqgError> {
    let gens = igens(theta.datum(), p)?;
    gens.all()
        .map(|g| {
            let w = battery_witness(&theta.apply(&g.element), &g.element, battery)?;
            Ok(AxiomCheck::from_witness(format!("theta_A({0}) = {0} at q = 1", g.name), w))
        })
        .collect()
}

fn exp_sum(m: &WeightModule<Rat>, l: fn(usize, u32) -> Letter, i: usize, a: &Rat) -> SparseMatrix<Rat> {
    let mut out = SparseMatrix::identity(m.dim());
    let mut n = 1;
    let mut pow = a.clone();
    while let Some(x) = m.letter(l(i, n)) {
        out = out.add(&x.scale(&pow));
        pow = pow.mul(a);
        n += 1;
    }
    out
}

/// `x_i(a) = sum_n a^n E_i^{(n)}`.
pub fn x_i(m: &WeightModule<Rat>, i: usize, a: &Rat) -> SparseMatrix<Rat> {
    exp_sum(m, Letter::E, i, a)
}

/// `y_i(a) = sum_n a^n F_i^{(n)}`.
pub fn y_i(m: &WeightModule<Rat>, i: usize, a: &Rat) -> SparseMatrix<Rat> {
    exp_sum(m, Letter::F, i, a)
}

/// `sbar_i = x_i(1) y_i(-1) x_i(1)`.
pub fn sbar(m: &WeightModule<Rat>, i: usize) -> SparseMatrix<Rat> {
    let one = <Rat as Scalar>::one();
    let minus = -<Rat as Scalar>::one();
    x_i(m, i, &one).mul(&y_i(m, i, &minus)).mul(&x_i(m, i, &one))
}

/// `T_i(u) sbar_i = sbar_i u` for `u` in `{E_j, F_j}` and
/// `sbar_i = y_i(-1) x_i(1) y_i(-1)`, at `q = 1` on the battery.
pub fn sbar_checks(datum: &RootDatum, battery: &[WeightModule<Rat>]) -> Result<Vec<AxiomCheck>, UqError> {
    let lab = |i: usize| datum.cartan().label(i);
    let one = <Rat as Scalar>::one();
    let minus = -<Rat as Scalar>::one();
    let mut conj = None;
    let mut sym = None;
    for m in battery {
        for i in 0..datum.rank() {
            let s = sbar(m, i);
            if sym.is_none() {
                let alt = y_i(m, i, &minus).mul(&x_i(m, i, &one)).mul(&y_i(m, i, &minus));
                if let Some((r, c, _)) = alt.sub(&s).first_nonzero() {
                    sym = Some(format!("node {} on {}: entry ({r},{c})", lab(i), m.label()));
                }
            }
            for j in 0..datum.rank() {
                for u in [AlgebraElement::e(datum, j, 1), AlgebraElement::f(datum, j, 1)] {
                    if conj.is_some() {
                        continue;
                    }
                    let lhs = act(&braid_t(datum, i, &u), m)?.mul(&s);
                    let rhs = s.mul(&act(&u, m)?);
                    if let Some((r, c, _)) = lhs.sub(&rhs).first_nonzero() {
                        conj = Some(format!("T_{}({u}) on {}: entry ({r},{c})", lab(i), m.label()));
                    }
                }
            }
        }
    }
    Ok(vec![
        AxiomCheck::from_witness("T_i(u) = sbar_i u sbar_i^{-1} at q = 1", conj),
        AxiomCheck::from_witness("sbar_i = y_i(-1) x_i(1) y_i(-1)", sym),
    ])
}

/// `T_{w_black}^2(u) = (-1)^{<2rho_black^vee, deg u>} u` for `u = E_i, F_i`,
/// at `q = 1` on the battery. Vacuous when there are no black nodes.
pub fn theta_prime_square_check(d: &IRootDatum, battery: &[WeightModule<Rat>]) -> Result<AxiomCheck, UqError> {
    let name = "T_{w_black}^2 = Xi((-1)^{<2rho_black^vee, .>}) on E_i, F_i";
    if d.diagram().black().is_empty() {
        return Ok(AxiomCheck::vacuous(name));
    }
    let datum = d.datum();
    let word = &d.w_black().word;
    for i in 0..datum.rank() {
        let sign = RatFunc::from_int(black_parity(d, i));
        for u in [AlgebraElement::e(datum, i, 1), AlgebraElement::f(datum, i, 1)] {
            let lhs = braid_tw(datum, word, &braid_tw(datum, word, &u));
            if let Some(w) = battery_witness(&lhs, &u.scale(&sign), battery)? {
                return Ok(AxiomCheck::fail(name, format!("{}: {w}", u.render(datum.cartan()))));
            }
        }
    }
    Ok(AxiomCheck::pass(name))
}

/// True when all entries are integers.
pub fn is_integral(m: &SparseMatrix<Rat>) -> bool {
    m.entries()
        .all(|(_, _, x)| num_traits::One::is_one(x.denom()) || Scalar::is_zero(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{all_hold, CartanDatum};
    use crate::satake::catalog_entry;
    use crate::uq::{build_simple, default_battery};

    fn rat(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    #[test]
    fn specialize_sl2_fundamental() {
        let d = RootDatum::simply_connected(CartanDatum::of_type('A', 1));
        let m = specialize(&build_simple::<RatFunc>(&d, &[1], 200).unwrap()).unwrap();
        assert_eq!(m.e_div(0, 1).to_dense(), vec![vec![rat(0), rat(1)], vec![rat(0), rat(0)]]);
        assert_eq!(m.f_div(0, 1).to_dense(), vec![vec![rat(0), rat(0)], vec![rat(1), rat(0)]]);
        assert_eq!(m.k(&[5]), SparseMatrix::identity(2));
    }

    #[test]
    fn specialized_divided_powers_are_integral() {
        let d = RootDatum::simply_connected(CartanDatum::of_type('B', 2));
        let m = specialize(&build_simple::<RatFunc>(&d, &[2, 1], 200).unwrap()).unwrap();
        for i in 0..2 {
            for n in 1..=m.e_nilpotency(i) {
                assert!(is_integral(&m.e_div(i, n)) && is_integral(&m.f_div(i, n)));
            }
        }
    }

    #[test]
    fn theta_on_idempotent_and_sl2_e() {
        let d = catalog_entry("A3-AIII").unwrap();
        let p = IParameters::default_for(&d);
        let th = ThetaA::new(&d, &p);
        let dat = d.datum();
        let lam = vec![1, 0, 2];
        let img = d.tau_on_x(&d.w_black().apply_x(&lam)).iter().map(|x| -x).collect::<Vec<_>>();
        assert_eq!(th.apply(&AlgebraElement::idem(dat, &lam)), AlgebraElement::idem(dat, &img));

        let s = catalog_entry("SL2-split").unwrap();
        for sign in [1, -1] {
            let p = IParameters::default_for(&s).with_signs(&[(0, sign)].into());
            let th = ThetaA::new(&s, &p);
            let sd = s.datum();
            let x = AlgebraElement::e(sd, 0, 1).mul(&AlgebraElement::idem(sd, &[3]), sd);
            let y = AlgebraElement::f(sd, 0, 1)
                .mul(&AlgebraElement::idem(sd, &[-3]), sd)
                .scale(&RatFunc::from_int(sign));
            assert_eq!(th.apply(&x), y);
        }
    }

    #[test]
    fn sl2_sbar_matrix() {
        let d = RootDatum::simply_connected(CartanDatum::of_type('A', 1));
        let m = build_simple::<Rat>(&d, &[1], 200).unwrap();
        assert_eq!(sbar(&m, 0).to_dense(), vec![vec![rat(0), rat(1)], vec![rat(-1), rat(0)]]);
        assert_eq!(x_i(&m, 0, &rat(5)).to_dense(), vec![vec![rat(1), rat(5)], vec![rat(0), rat(1)]]);
        let b = default_battery::<Rat>(&d, 2).unwrap().modules;
        assert!(all_hold(&sbar_checks(&d, &b).unwrap()));
    }

    #[test]
    fn involution_on_small_entries() {
        for name in ["SL2-split", "A2-quasi-split", "C2-CII"] {
            let d = catalog_entry(name).unwrap();
            let p = IParameters::default_for(&d);
            let b = default_battery::<Rat>(d.datum(), 1).unwrap().modules;
            let w = window(d.datum(), 2);
            let c = verify_involution(&ThetaA::new(&d, &p), &p, &w, &b, ExecMode::Sequential).unwrap();
            assert!(all_hold(&c), "{name}: {c:?}");
            assert!(all_hold(&theta_fixes_igens(&ThetaA::new(&d, &p), &p, &b).unwrap()), "{name}");
        }
    }

    #[test]
    fn epsilon_black_control() {
        let run = |name: &str| {
            let d = catalog_entry(name).unwrap();
            let p = IParameters::default_for(&d);
            let b = default_battery::<Rat>(d.datum(), 1).unwrap().modules;
            let w = window(d.datum(), 1);
            all_hold(&verify_involution(&ThetaA::with_black_eps(&d, &p, 1), &p, &w, &b, ExecMode::Sequential).unwrap())
        };
        assert!(!run("A3-AIII"));
        // every white node has even <2rho_black^vee, alpha_i>, so the sign cancels
        assert!(run("C2-CII"));
    }

    #[test]
    fn square_of_t_w_black() {
        let d = catalog_entry("A3-AIII").unwrap();
        let b = default_battery::<Rat>(d.datum(), 1).unwrap().modules;
        assert!(theta_prime_square_check(&d, &b).unwrap().holds);
        let s = catalog_entry("SL2-split").unwrap();
        assert!(theta_prime_square_check(&s, &[]).unwrap().vacuous);
    }
}
