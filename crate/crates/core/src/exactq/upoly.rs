//! Dense univariate polynomials over `Z`, ascending coefficients.
//! Only what `RatFunc` normalization and exact Laurent division need.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) fn is_zero(a: &[BigInt]) -> bool {
    a.iter().all(|c| c.is_zero())
}

pub(crate) fn trim(mut a: Vec<BigInt>) -> Vec<BigInt> {
    while a.last().map(|c| c.is_zero()).unwrap_or(false) {
        a.pop();
    }
    a
}

fn degree(a: &[BigInt]) -> Option<usize> {
    a.iter().rposition(|c| !c.is_zero())
}

/// Long division where every step's leading-coefficient quotient must be an
/// integer. `None` signals a non-integral step.
pub(crate) fn div_rem_exact_coeffs(a: &[BigInt], b: &[BigInt]) -> Option<(Vec<BigInt>, Vec<BigInt>)> {
    let db = degree(b)?;
    let lb = &b[db];
    let support: Vec<(usize, &BigInt)> = b[..=db].iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
    let mut r = trim(a.to_vec());
    let mut quot = vec![BigInt::zero(); r.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let (qc, rem) = r[dr].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        let shift = dr - db;
        for &(k, bc) in &support {
            r[k + shift] -= &qc * bc;
        }
        quot[shift] = qc;
        r = trim(r);
    }
    Some((trim(quot), r))
}

fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = degree(b).expect("pseudo_rem by zero");
    let lb = b[db].clone();
    let mut r = trim(a.to_vec());
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (k, bc) in b.iter().enumerate().take(db + 1) {
            r[k + shift] -= &lr * bc;
        }
        r = trim(r);
    }
    r
}

pub(crate) fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive(a: &[BigInt]) -> Vec<BigInt> {
    let c = content(a);
    if c.is_zero() || c.is_one() {
        return trim(a.to_vec());
    }
    trim(a.iter().map(|x| x / &c).collect())
}

/// Greatest common divisor in `Z[q]`, normalized to a positive leading coefficient.
pub(crate) fn gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if is_zero(a) {
        return normalize_sign(trim(b.to_vec()));
    }
    if is_zero(b) {
        return normalize_sign(trim(a.to_vec()));
    }
    let cg = content(a).gcd(&content(b));
    let mut x = primitive(a);
    let mut y = primitive(b);
    if degree(&x) < degree(&y) {
        std::mem::swap(&mut x, &mut y);
    }
    while !is_zero(&y) {
        if degree(&y) == Some(0) {
            x = vec![BigInt::one()];
            break;
        }
        let r = pseudo_rem(&x, &y);
        x = y;
        y = primitive(&r);
    }
    let g = primitive(&x);
    normalize_sign(g.into_iter().map(|c| c * &cg).collect())
}

fn normalize_sign(a: Vec<BigInt>) -> Vec<BigInt> {
    match degree(&a) {
        Some(d) if a[d].is_negative() => a.into_iter().map(|c| -c).collect(),
        _ => a,
    }
}

#[cfg(test)]
fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}
