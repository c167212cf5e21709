use crate::exactq::{qfactorial, RatFunc};
use crate::rootdata::RootDatum;
use crate::satake::IRootDatum;

use super::{AlgebraElement, Letter, Tail, Word};

/// `omega`: `E_i <-> F_i`, `K_mu -> K_{-mu}`, `1_lambda -> 1_{-lambda}`.
pub fn omega(datum: &RootDatum, x: &AlgebraElement) -> AlgebraElement {
    x.map_terms(datum, |w, c| {
        let letters = w
            .letters
            .iter()
            .map(|l| match *l {
                Letter::E(i, n) => Letter::F(i, n),
                Letter::F(i, n) => Letter::E(i, n),
            })
            .collect();
        let tail = match &w.tail {
            Tail::K(mu) => Tail::K(mu.iter().map(|v| -v).collect()),
            Tail::Idem(lam) => Tail::Idem(lam.iter().map(|v| -v).collect()),
        };
        AlgebraElement::from_word(datum, c.clone(), Word { letters, tail })
    })
}

/// `Xi(t)`: scales a word of degree `nu` in `Z[I]` by `prod_i t_i^{nu_i}`.
pub fn xi_grading(datum: &RootDatum, t: &[RatFunc], x: &AlgebraElement) -> AlgebraElement {
    x.map_terms(datum, |w, c| {
        let s = w
            .degree(datum.rank())
            .iter()
            .zip(t)
            .fold(c.clone(), |acc, (&d, ti)| acc.mul(&ti.pow(d)));
        AlgebraElement::from_word(datum, s, w.clone())
    })
}

/// `tau~`: nodes relabelled by `tau`, lattice vectors moved by `tau` on `X` and `Y`.
pub fn tau_tilde(d: &IRootDatum, x: &AlgebraElement) -> AlgebraElement {
    let datum = d.datum();
    let tau = d.diagram().tau_map();
    let tx = d.tau_x_matrix();
    let ty = d.tau_y_matrix();
    x.map_terms(datum, |w, c| {
        let letters = w
            .letters
            .iter()
            .map(|l| match *l {
                Letter::E(i, n) => Letter::E(tau[i], n),
                Letter::F(i, n) => Letter::F(tau[i], n),
            })
            .collect();
        let tail = match &w.tail {
            Tail::K(mu) => Tail::K(ty.apply(mu)),
            Tail::Idem(lam) => Tail::Idem(tx.apply(lam)),
        };
        AlgebraElement::from_word(datum, c.clone(), Word { letters, tail })
    })
}

fn t_generator(datum: &RootDatum, i: usize, l: Letter) -> AlgebraElement {
    let eps = datum.cartan().eps(i);
    let e = |k: usize, n: u32| AlgebraElement::e(datum, k, n);
    let f = |k: usize, n: u32| AlgebraElement::f(datum, k, n);
    let minus = RatFunc::from_int(-1);
    match l {
        Letter::E(j, 1) if j == i => f(i, 1).mul(&AlgebraElement::k_i(datum, i, 1), datum).scale(&minus),
        Letter::F(j, 1) if j == i => AlgebraElement::k_i(datum, i, -1).mul(&e(i, 1), datum).scale(&minus),
        Letter::E(j, 1) => {
            let a = -datum.cartan().c(i, j);
            (0..=a).fold(AlgebraElement::zero(datum), |acc, r| {
                let c = RatFunc::q_pow(-eps * r).scale_int(&(if r % 2 == 0 { 1 } else { -1 }).into());
                let term = AlgebraElement::product(datum, &[e(i, (a - r) as u32), e(j, 1), e(i, r as u32)]);
                acc.add(&term.scale(&c))
            })
        }
        Letter::F(j, 1) => {
            let a = -datum.cartan().c(i, j);
            (0..=a).fold(AlgebraElement::zero(datum), |acc, r| {
                let c = RatFunc::q_pow(eps * r).scale_int(&(if r % 2 == 0 { 1 } else { -1 }).into());
                let term = AlgebraElement::product(datum, &[f(i, r as u32), f(j, 1), f(i, (a - r) as u32)]);
                acc.add(&term.scale(&c))
            })
        }
        Letter::E(j, n) | Letter::F(j, n) => {
            let one = t_generator(
                datum,
                i,
                if matches!(l, Letter::E(..)) {
                    Letter::E(j, 1)
                } else {
                    Letter::F(j, 1)
                },
            );
            let pow = (0..n).fold(AlgebraElement::one(datum), |acc, _| acc.mul(&one, datum));
            let d = RatFunc::from_laurent(qfactorial(n, datum.cartan().eps(j)));
            pow.scale(&d.inv().expect("nonzero"))
        }
    }
}

/// Lusztig's `T_i = T''_{i,+1}`, applied letter by letter and multiplied out.
pub fn braid_t(datum: &RootDatum, i: usize, x: &AlgebraElement) -> AlgebraElement {
    x.map_terms(datum, |w, c| {
        let tail = match &w.tail {
            Tail::K(mu) => AlgebraElement::k(datum, &datum.reflect_y(i, mu)),
            Tail::Idem(lam) => AlgebraElement::idem(datum, &datum.reflect_x(i, lam)),
        };
        let mut acc = AlgebraElement::scalar(datum, c.clone());
        for &l in &w.letters {
            acc = acc.mul(&t_generator(datum, i, l), datum);
            if acc.is_zero() {
                return acc;
            }
        }
        acc.mul(&tail, datum)
    })
}

/// `T_w = T_{i_1} ... T_{i_k}` along the word `[i_1, ..., i_k]`.
pub fn braid_tw(datum: &RootDatum, word: &[usize], x: &AlgebraElement) -> AlgebraElement {
    word.iter().rev().fold(x.clone(), |acc, &i| braid_t(datum, i, &acc))
}

/// `x_c = E_{i_1}^{(c_1)} T_{i_1}(E_{i_2}^{(c_2)}) T_{i_1}T_{i_2}(E_{i_3}^{(c_3)}) ...`
/// for every `c` in `{0..=cmax}^k`, in lexicographic order of `c`.
pub fn pbw_vectors(datum: &RootDatum, word: &[usize], cmax: u32) -> Vec<(Vec<u32>, AlgebraElement)> {
    let k = word.len();
    // factor[j][c] = T_{i_1..i_{j-1}}(E_{i_j}^{(c)})
    let factors: Vec<Vec<AlgebraElement>> = (0..k)
        .map(|j| {
            (0..=cmax)
                .map(|c| braid_tw(datum, &word[..j], &AlgebraElement::e(datum, word[j], c)))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut c = vec![0u32; k];
    loop {
        let x = (0..k).fold(AlgebraElement::one(datum), |acc, j| acc.mul(&factors[j][c[j] as usize], datum));
        out.push((c.clone(), x));
        let Some(pos) = (0..k).rev().find(|&j| c[j] < cmax) else { break };
        c[pos] += 1;
        for v in c.iter_mut().skip(pos + 1) {
            *v = 0;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::LaurentPoly;
    use crate::rootdata::CartanDatum;
    use crate::satake::catalog_entry;

    fn a2() -> RootDatum {
        RootDatum::simply_connected(CartanDatum::of_type('A', 2))
    }

    #[test]
    fn omega_on_generators() {
        let d = a2();
        assert_eq!(omega(&d, &AlgebraElement::e(&d, 0, 3)), AlgebraElement::f(&d, 0, 3));
        assert_eq!(omega(&d, &AlgebraElement::k(&d, &[1, -2])), AlgebraElement::k(&d, &[-1, 2]));
        let x = AlgebraElement::product(
            &d,
            &[
                AlgebraElement::e(&d, 0, 1),
                AlgebraElement::f(&d, 1, 2),
                AlgebraElement::idem(&d, &[1, 1]),
            ],
        );
        assert_eq!(omega(&d, &omega(&d, &x)), x);
    }

    #[test]
    fn xi_scales_by_degree() {
        let d = a2();
        let t = [RatFunc::from_int(-1), RatFunc::from_int(3)];
        assert_eq!(
            xi_grading(&d, &t, &AlgebraElement::e(&d, 0, 1)),
            AlgebraElement::e(&d, 0, 1).scale(&t[0])
        );
        let f = AlgebraElement::f(&d, 1, 2);
        assert_eq!(xi_grading(&d, &t, &f), f.scale(&RatFunc::from_int(9).inv().unwrap()));
        let one = [RatFunc::one(), RatFunc::one()];
        assert_eq!(xi_grading(&d, &one, &f), f);
    }

    #[test]
    fn tau_tilde_on_quasi_split() {
        let d = catalog_entry("A2-quasi-split").unwrap();
        let dat = d.datum();
        let x = AlgebraElement::e(dat, 0, 2).mul(&AlgebraElement::idem(dat, &[1, 0]), dat);
        let y = AlgebraElement::e(dat, 1, 2).mul(&AlgebraElement::idem(dat, &[0, 1]), dat);
        assert_eq!(tau_tilde(&d, &x), y);
        assert_eq!(tau_tilde(&d, &y), x);
        let s = catalog_entry("A2-split").unwrap();
        assert_eq!(tau_tilde(&s, &x), x);
    }

    #[test]
    fn t_i_on_e_i_and_k() {
        let d = a2();
        let t = braid_t(&d, 0, &AlgebraElement::e(&d, 0, 1));
        let expect = AlgebraElement::f(&d, 0, 1).mul(&AlgebraElement::k_i(&d, 0, 1), &d).neg();
        assert_eq!(t, expect);
        assert_eq!(braid_t(&d, 0, &AlgebraElement::k(&d, &[0, 1])), AlgebraElement::k(&d, &[1, 1]));
    }

    #[test]
    fn t_1_on_e_2_in_a2() {
        let d = a2();
        let e1 = AlgebraElement::e(&d, 0, 1);
        let e2 = AlgebraElement::e(&d, 1, 1);
        let expect = e1.mul(&e2, &d).sub(&e2.mul(&e1, &d).scale(&RatFunc::q_pow(-1)));
        assert_eq!(braid_t(&d, 0, &e2), expect);
    }

    #[test]
    fn pbw_single_letter() {
        let d = RootDatum::simply_connected(CartanDatum::of_type('A', 1));
        let v = pbw_vectors(&d, &[0], 2);
        let xs: Vec<_> = v.into_iter().map(|(_, x)| x).collect();
        assert_eq!(
            xs,
            vec![AlgebraElement::one(&d), AlgebraElement::e(&d, 0, 1), AlgebraElement::e(&d, 0, 2)]
        );
    }

    #[test]
    fn t_on_divided_power_is_laurent() {
        let d = a2();
        // word coefficients may be fractions; the action on a module is integral
        let t = braid_t(&d, 0, &AlgebraElement::e(&d, 1, 2));
        let m = crate::uq::build_simple::<RatFunc>(&d, &[2, 2], 200).unwrap();
        let a = crate::uq::act(&t, &m).unwrap();
        assert!(!a.is_zero());
        assert!(a.entries().all(|(_, _, c)| c.as_laurent().is_some()));
        let t = braid_t(&d, 0, &AlgebraElement::e(&d, 0, 2));
        let (_, c) = t.terms().next().unwrap();
        assert_eq!(c.as_laurent(), Some(&LaurentPoly::q_pow(-2)));
    }
}
