use std::sync::OnceLock;

use proptest::prelude::*;

use isym::exactq::{binomial, qbinom, LaurentPoly, Rat, RatFunc};
use isym::iqg::IParameters;
use isym::qone::{fixed_lie_algebra, ThetaA};
use isym::satake::{catalog_entry, IRootDatum};
use isym::uq::{battery_witness, default_battery, omega, tau_tilde, xi_grading, AlgebraElement, WeightModule};

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-4i64..=4, -6i64..=6), 0..5).prop_map(LaurentPoly::from_terms)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn laurent_ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.sub(&a), LaurentPoly::zero());
        prop_assert_eq!(a.mul(&LaurentPoly::one()), a.clone());
        prop_assert_eq!(a.mul(&b).eval_at_one(), a.eval_at_one() * b.eval_at_one());
        prop_assert_eq!(a.bar().bar(), a);
    }

    #[test]
    fn exact_division_inverts_multiplication(a in laurent(), b in laurent()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!(a.mul(&b).div_exact(&b).unwrap(), a);
    }

    #[test]
    fn qbinom_symmetry_and_pascal(n in 1i64..=24, d in 0i64..=24, eps in 1i64..=3) {
        prop_assume!(d <= n);
        let b = qbinom(n, d, eps).unwrap();
        prop_assert_eq!(&b, &qbinom(n, n - d, eps).unwrap());
        prop_assert_eq!(b.eval_at_one(), binomial(n, d));
        prop_assert_eq!(b.bar(), b.clone());
        if d >= 1 {
            let lhs = qbinom(n - 1, d, eps).unwrap().shift(-eps * d).add(&qbinom(n - 1, d - 1, eps).unwrap().shift(eps * (n - d)));
            prop_assert_eq!(b, lhs);
        }
    }
}

type Fixture = (IRootDatum, Vec<WeightModule<RatFunc>>, Vec<WeightModule<Rat>>);
type Map<'a> = Box<dyn Fn(&AlgebraElement) -> AlgebraElement + 'a>;

fn entry() -> &'static Fixture {
    static E: OnceLock<Fixture> = OnceLock::new();
    E.get_or_init(|| {
        let d = catalog_entry("A2-quasi-split").unwrap();
        let q = default_battery::<RatFunc>(d.datum(), 1).unwrap().modules;
        let one = default_battery::<Rat>(d.datum(), 1).unwrap().modules;
        (d, q, one)
    })
}

fn word() -> impl Strategy<Value = Vec<(u8, usize, u32)>> {
    prop::collection::vec((0u8..4, 0usize..2, 1u32..=2), 1..=3)
}

fn element(d: &IRootDatum, w: &[(u8, usize, u32)]) -> AlgebraElement {
    let datum = d.datum();
    let letters: Vec<AlgebraElement> = w
        .iter()
        .map(|&(kind, i, n)| match kind {
            0 => AlgebraElement::e(datum, i, n),
            1 => AlgebraElement::f(datum, i, n),
            2 => AlgebraElement::k_i(datum, i, 1),
            _ => AlgebraElement::k_i(datum, i, -1),
        })
        .collect();
    AlgebraElement::product(datum, &letters)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn symmetries_are_algebra_maps(x in word(), y in word(), t in prop::collection::vec(-2i64..=2, 2)) {
        let (d, q, _) = entry();
        let datum = d.datum();
        let (x, y) = (element(d, &x), element(d, &y));
        let xy = x.mul(&y, datum);
        let t: Vec<RatFunc> = t.iter().map(|&e| RatFunc::q_pow(e)).collect();
        let maps: [(&str, Map); 3] = [
            ("omega", Box::new(|u| omega(datum, u))),
            ("tau", Box::new(|u| tau_tilde(d, u))),
            ("Xi", Box::new(|u| xi_grading(datum, &t, u))),
        ];
        for (name, f) in &maps {
            let w = battery_witness(&f(&xy), &f(&x).mul(&f(&y), datum), q).unwrap();
            prop_assert!(w.is_none(), "{} not multiplicative: {:?}", name, w);
        }
        let w = battery_witness(&omega(datum, &omega(datum, &x)), &x, q).unwrap();
        prop_assert!(w.is_none(), "omega^2: {:?}", w);
    }

    #[test]
    fn theta_a_is_an_involutive_algebra_map(x in word(), y in word()) {
        let (d, _, one) = entry();
        let datum = d.datum();
        let theta = ThetaA::new(d, &IParameters::default_for(d));
        let (x, y) = (element(d, &x), element(d, &y));
        let lhs = theta.apply(&x.mul(&y, datum));
        let rhs = theta.apply(&x).mul(&theta.apply(&y), datum);
        prop_assert!(battery_witness(&lhs, &rhs, one).unwrap().is_none());
        prop_assert!(battery_witness(&theta.apply(&theta.apply(&x)), &x, one).unwrap().is_none());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn k_closure_is_independent_of_the_sign(k in 0usize..4, sign in prop::sample::select(vec![1i64, -1])) {
        let name = ["SL2-split", "PGL2-split", "A2-split", "C2-split"][k];
        let d = catalog_entry(name).unwrap();
        let battery = default_battery::<Rat>(d.datum(), 2).unwrap().modules;
        let p = IParameters::default_for(&d);
        let signs = (0..d.datum().rank()).map(|i| (i, sign)).collect();
        let base = fixed_lie_algebra(&ThetaA::new(&d, &p), &battery).unwrap();
        let r = fixed_lie_algebra(&ThetaA::new(&d, &p.with_signs(&signs)), &battery).unwrap();
        prop_assert!(r.checks.iter().all(|c| c.holds), "{:?}", r.checks);
        prop_assert_eq!(r.dim_k, base.dim_k);
        prop_assert_eq!(r.dim_k + r.dim_minus, r.dim_g);
    }
}
