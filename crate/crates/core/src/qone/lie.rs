use serde::Serialize;

use crate::exactq::{Rat, Scalar};
use crate::linalg::{dense, Span, SparseMatrix, SparseVec};
use crate::rootdata::{positive_roots, AxiomCheck, DEFAULT_RANK_BOUND};
use crate::satake::ylattice_fixed;
use crate::uq::{act, AlgebraElement, UqError, WeightModule};

use super::ThetaA;

/// A Lie algebra element realized on every module of a battery.
type Realized = Vec<SparseMatrix<Rat>>;

fn bracket(a: &Realized, b: &Realized) -> Realized {
    a.iter().zip(b).map(|(x, y)| x.mul(y).sub(&y.mul(x))).collect()
}

fn flatten(a: &Realized) -> SparseVec<Rat> {
    let mut out = Vec::new();
    let mut off = 0;
    for m in a {
        let n = m.ncols();
        out.extend(m.entries().map(|(r, c, v)| (off + r * n + c, v.clone())));
        off += m.nrows() * n;
    }
    out
}

fn h(battery: &[WeightModule<Rat>], mu: &[i64]) -> Realized {
    battery
        .iter()
        .map(|m| SparseMatrix::diagonal(m.weights().iter().map(|w| Rat::from_int(m.datum().pair(mu, w))).collect()))
        .collect()
}

fn realize(x: &AlgebraElement, battery: &[WeightModule<Rat>]) -> Result<Realized, UqError> {
    battery.iter().map(|m| act(x, m)).collect()
}

/// Bracket closure of `gens`; each basis element is either a generator
/// (`Err(k)`) or the bracket of two earlier basis elements (`Ok((a, b))`).
struct Closure {
    span: Span<Rat>,
    basis: Vec<Realized>,
    origin: Vec<Result<(usize, usize), usize>>,
}

fn close(gens: &[Realized]) -> Closure {
    let mut c = Closure {
        span: Span::new(),
        basis: Vec::new(),
        origin: Vec::new(),
    };
    for (k, g) in gens.iter().enumerate() {
        if c.span.insert(&flatten(g)) {
            c.basis.push(g.clone());
            c.origin.push(Err(k));
        }
    }
    let mut k = 0;
    while k < c.basis.len() {
        for j in 0..k {
            let b = bracket(&c.basis[j], &c.basis[k]);
            if c.span.insert(&flatten(&b)) {
                c.basis.push(b);
                c.origin.push(Ok((j, k)));
            }
        }
        k += 1;
    }
    c
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LieReport {
    pub dim_g: usize,
    pub expected_dim_g: usize,
    /// `dim k` by bracket closure of its generators.
    pub dim_k: usize,
    /// `dim` of the `+1` eigenspace of `theta` on `g`.
    pub dim_fixed: usize,
    pub dim_minus: usize,
    pub checks: Vec<AxiomCheck>,
}

/// `k` two ways: the closure of `f_i + theta(f_i)`, `e_j, f_j` (black) and
/// `h_mu` (`mu` in `Y^ι`), and the fixed space of `theta` on `g`.
pub fn fixed_lie_algebra(theta: &ThetaA, battery: &[WeightModule<Rat>]) -> Result<LieReport, UqError> {
    let d = theta.datum();
    let datum = d.datum();
    let r = datum.rank();
    let ry = datum.rank_x();
    let all: Vec<usize> = (0..r).collect();
    let nroots = 2 * positive_roots(datum, &all, DEFAULT_RANK_BOUND)
        .map_err(|e| UqError::Shape(e.to_string()))?
        .len();
    let expected_dim_g = ry + nroots;

    let e: Vec<Realized> = (0..r)
        .map(|i| realize(&AlgebraElement::e(datum, i, 1), battery))
        .collect::<Result<_, _>>()?;
    let f: Vec<Realized> = (0..r)
        .map(|i| realize(&AlgebraElement::f(datum, i, 1), battery))
        .collect::<Result<_, _>>()?;
    let ys: Vec<Vec<i64>> = (0..ry).map(|k| crate::rootdata::unit(ry, k)).collect();

    let mut gens = Vec::new();
    let mut theta_gens = Vec::new();
    for i in 0..r {
        gens.push(e[i].clone());
        theta_gens.push(realize(&theta.apply(&AlgebraElement::e(datum, i, 1)), battery)?);
        gens.push(f[i].clone());
        theta_gens.push(realize(&theta.apply(&AlgebraElement::f(datum, i, 1)), battery)?);
    }
    for mu in &ys {
        gens.push(h(battery, mu));
        theta_gens.push(h(battery, &d.theta_y().apply(mu)));
    }
    let g = close(&gens);
    let n = g.basis.len();

    // theta along the bracket trees of the basis
    let mut images: Vec<Realized> = Vec::with_capacity(n);
    for o in &g.origin {
        let img = match *o {
            Err(k) => theta_gens[k].clone(),
            Ok((a, b)) => bracket(&images[a], &images[b]),
        };
        images.push(img);
    }
    let mut theta_mat = vec![vec![<Rat as Scalar>::zero(); n]; n];
    let mut preserved = true;
    for (col, img) in images.iter().enumerate() {
        match g.span.coordinates(&flatten(img)) {
            Some(c) => {
                for (row, x) in c.into_iter().enumerate() {
                    theta_mat[row][col] = x;
                }
            }
            None => preserved = false,
        }
    }
    let shifted = |s: i64| -> Vec<Vec<Rat>> {
        let mut m = theta_mat.clone();
        for (k, row) in m.iter_mut().enumerate() {
            row[k] = row[k].sub(&Rat::from_int(s));
        }
        m
    };
    let fixed = dense::kernel(&shifted(1), n);
    let minus = dense::kernel(&shifted(-1), n);
    let square = dense::mat_mul(&theta_mat, &theta_mat) == dense::identity(n);

    let mut kgens = Vec::new();
    for i in d.diagram().white() {
        kgens.push(f[i].iter().zip(&theta_gens[2 * i + 1]).map(|(a, b)| a.add(b)).collect::<Realized>());
    }
    for &j in d.diagram().black() {
        kgens.push(e[j].clone());
        kgens.push(f[j].clone());
    }
    for mu in ylattice_fixed(d) {
        kgens.push(h(battery, &mu));
    }
    let k = close(&kgens);
    let k_in_fixed = k.basis.iter().all(|x| match g.span.coordinates(&flatten(x)) {
        Some(c) => {
            let tc: Vec<Rat> = theta_mat
                .iter()
                .map(|row| row.iter().zip(&c).fold(<Rat as Scalar>::zero(), |a, (p, q)| a.add(&p.mul(q))))
                .collect();
            tc == c
        }
        None => false,
    });

    let checks = vec![
        AxiomCheck::from_witness(
            "battery is faithful for g",
            (n != expected_dim_g).then(|| format!("realized dim {n}, expected {expected_dim_g}")),
        ),
        AxiomCheck::from_witness("theta preserves g", (!preserved).then(|| "an image left the span".to_string())),
        AxiomCheck::from_witness(
            "theta^2 = id on g",
            (!square).then(|| "theta^2 differs from the identity".to_string()),
        ),
        AxiomCheck::from_witness(
            "dim k + dim g^{-theta} = dim g",
            (fixed.len() + minus.len() != n).then(|| format!("{} + {} != {n}", fixed.len(), minus.len())),
        ),
        AxiomCheck::from_witness(
            "generated k = g^theta",
            (!k_in_fixed || k.basis.len() != fixed.len())
                .then(|| format!("closure dim {}, fixed dim {}, contained {k_in_fixed}", k.basis.len(), fixed.len())),
        ),
    ];
    Ok(LieReport {
        dim_g: n,
        expected_dim_g,
        dim_k: k.basis.len(),
        dim_fixed: fixed.len(),
        dim_minus: minus.len(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::RatFunc;
    use crate::iqg::IParameters;
    use crate::rootdata::all_hold;
    use crate::satake::catalog_entry;
    use crate::uq::default_battery;

    fn report(name: &str) -> LieReport {
        let d = catalog_entry(name).unwrap();
        let p = IParameters::default_for(&d);
        let b = default_battery::<Rat>(d.datum(), 2).unwrap().simples();
        fixed_lie_algebra(&ThetaA::new(&d, &p), &b).unwrap()
    }

    #[test]
    fn sl2_split_k_is_a_line() {
        let r = report("SL2-split");
        assert_eq!((r.dim_g, r.dim_k, r.dim_fixed, r.dim_minus), (3, 1, 1, 2));
        assert!(all_hold(&r.checks));
    }

    #[test]
    fn sl2_split_k_spanned_by_f_plus_sbar_e() {
        let d = catalog_entry("SL2-split").unwrap();
        for sign in [1i64, -1] {
            let p = IParameters::default_for(&d).with_signs(&[(0, sign)].into());
            let th = ThetaA::new(&d, &p);
            let dat = d.datum();
            let x = AlgebraElement::f(dat, 0, 1).add(&AlgebraElement::e(dat, 0, 1).scale(&RatFunc::from_int(sign)));
            let m = crate::uq::build_simple::<Rat>(dat, &[1], 10).unwrap();
            assert_eq!(act(&th.apply(&x), &m).unwrap(), act(&x, &m).unwrap());
        }
    }

    #[test]
    fn a2_dimensions() {
        let s = report("A2-split");
        assert_eq!((s.dim_g, s.dim_k), (8, 3));
        let q = report("A2-quasi-split");
        assert_eq!((q.dim_g, q.dim_k), (8, 4));
        assert!(all_hold(&s.checks) && all_hold(&q.checks));
    }

    #[test]
    fn catalog_dimensions() {
        let expect = [
            ("SL2-split", 3, 1),
            ("PGL2-split", 3, 1),
            ("SL2xSL2-swap", 6, 3),
            ("A2-split", 8, 3),
            ("A2-quasi-split", 8, 4),
            ("C2-split", 10, 4),
            ("C2-CII", 10, 6),
            ("B2-split", 10, 4),
            ("SL2-compact", 3, 3),
            ("A3-AIII", 15, 9),
        ];
        for (name, g, k) in expect {
            let r = report(name);
            assert_eq!((r.dim_g, r.dim_k, r.dim_fixed), (g, k, k), "{name}");
            assert_eq!(r.dim_k + r.dim_minus, r.dim_g);
            assert!(all_hold(&r.checks), "{name}");
        }
    }
}
