use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::Fp;

/// `#{(u, v) in F_p^2 : u^2 - v^2 = 1}` by exhaustive enumeration.
pub fn conic_count(p: u64) -> usize {
    let f = Fp::new(p);
    f.elements()
        .flat_map(|u| f.elements().map(move |v| (u, v)))
        .filter(|&(u, v)| f.sub(f.mul(u, u), f.mul(v, v)) == 1)
        .count()
}

/// Size of the image of `t -> ((t + 1/t)/2, (t - 1/t)/2)` on `F_p^*`.
pub fn conic_param_count(p: u64) -> usize {
    let f = Fp::new(p);
    let half = f.inv(2).expect("p odd");
    f.units()
        .map(|t| {
            let ti = f.inv(t).expect("unit");
            (f.mul(f.add(t, ti), half), f.mul(f.sub(t, ti), half))
        })
        .collect::<BTreeSet<_>>()
        .len()
}

type Poly = BTreeMap<(u32, u32), i64>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (&(i, j), x) in a {
        for (&(k, l), y) in b {
            *out.entry((i + k, j + l)).or_insert(0) += x * y;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn poly_sub(a: &Poly, b: &Poly) -> Poly {
    let mut out = a.clone();
    for (&m, y) in b {
        *out.entry(m).or_insert(0) -= y;
    }
    out.retain(|_, c| *c != 0);
    out
}

fn render(p: &Poly) -> String {
    if p.is_empty() {
        return "0".into();
    }
    let mono = |i: u32, j: u32| {
        let var = |s: &str, e: u32| match e {
            0 => String::new(),
            1 => s.to_string(),
            _ => format!("{s}^{e}"),
        };
        [var("u", i), var("v", j)]
            .into_iter()
            .filter(|s| !s.is_empty())
            .collect::<Vec<_>>()
            .join("*")
    };
    let mut out = String::new();
    for (k, (&(i, j), &c)) in p.iter().rev().enumerate() {
        let m = mono(i, j);
        let sign = if c < 0 {
            "-"
        } else if k > 0 {
            "+"
        } else {
            ""
        };
        let body = match (c.abs(), m.is_empty()) {
            (a, true) => a.to_string(),
            (1, false) => m,
            (a, false) => format!("{a}*{m}"),
        };
        if k > 0 {
            out.push(' ');
        }
        out.push_str(sign);
        if k > 0 && !sign.is_empty() {
            out.push(' ');
        }
        out.push_str(&body);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Char2Witness {
    /// `(u + v + 1)^2 - (u^2 - v^2 - 1)` over `Z`.
    pub difference: String,
    pub vanishes_mod_2: bool,
    pub vanishes_mod_3: bool,
}

/// `u + v + 1` is nilpotent modulo `u^2 - v^2 - 1` in characteristic 2.
pub fn char2_nonreduced_witness() -> Char2Witness {
    let p = |t: &[((u32, u32), i64)]| t.iter().copied().collect::<Poly>();
    let l = p(&[((1, 0), 1), ((0, 1), 1), ((0, 0), 1)]);
    let conic = p(&[((2, 0), 1), ((0, 2), -1), ((0, 0), -1)]);
    let diff = poly_sub(&poly_mul(&l, &l), &conic);
    Char2Witness {
        difference: render(&diff),
        vanishes_mod_2: diff.values().all(|c| c % 2 == 0),
        vanishes_mod_3: diff.values().all(|c| c % 3 == 0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(conic_count(3), 2);
        assert_eq!(conic_count(5), 4);
        assert_eq!(conic_count(7), 6);
        for p in [3, 5, 7, 11, 13] {
            assert_eq!(conic_count(p), (p - 1) as usize);
            assert_eq!(conic_param_count(p), conic_count(p));
        }
    }

    #[test]
    fn char2() {
        let w = char2_nonreduced_witness();
        assert_eq!(w.difference, "2*u*v + 2*u + 2*v^2 + 2*v + 2");
        assert!(w.vanishes_mod_2);
        assert!(!w.vanishes_mod_3);
    }
}
