use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::upoly;
use super::ExactqError;

/// An element of `Z[q, q^-1]`.
///
/// Stored as a list of `(exponent, coefficient)` pairs sorted by exponent with
/// every coefficient nonzero, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: Vec<(i64, BigInt)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// `c * q^e`.
    pub fn monomial(e: i64, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: vec![(e, c)] }
    }

    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    pub fn q_pow(e: i64) -> Self {
        Self::monomial(e, 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(0, c)
    }

    /// Builds from arbitrary `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut v: Vec<(i64, BigInt)> = terms.into_iter().map(|(e, c)| (e, c.into())).collect();
        v.sort_by_key(|t| t.0);
        Self::from_sorted(v)
    }

    fn from_sorted(v: Vec<(i64, BigInt)>) -> Self {
        let mut out: Vec<(i64, BigInt)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        LaurentPoly { terms: out }
    }

    pub fn terms(&self) -> &[(i64, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// `Some((sign, e))` when `self = sign * q^e`.
    pub fn as_unit(&self) -> Option<(i64, i64)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = &self.terms[0];
        if c.is_one() {
            Some((1, *e))
        } else if (-c).is_one() {
            Some((-1, *e))
        } else {
            None
        }
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        match self.terms.binary_search_by_key(&e, |t| t.0) {
            Ok(k) => self.terms[k].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.first().map(|t| t.0)
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.last().map(|t| t.0)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &a[i].1 + &b[j].1;
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        LaurentPoly { terms: out }
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if other.terms.len() == 1 {
            let (e, c) = &other.terms[0];
            return LaurentPoly {
                terms: self.terms.iter().map(|(e2, c2)| (e + e2, c * c2)).collect(),
            };
        }
        if self.terms.len() == 1 {
            return other.mul(self);
        }
        if let Some(p) = self.mul_small(other) {
            return p;
        }
        let lo = self.terms[0].0 + other.terms[0].0;
        let hi = self.max_exp().unwrap() + other.max_exp().unwrap();
        let width = (hi - lo + 1) as usize;
        if width <= 4 * (self.terms.len() * other.terms.len()) + 16 {
            let mut dense = vec![BigInt::zero(); width];
            for (e1, c1) in &self.terms {
                for (e2, c2) in &other.terms {
                    dense[(e1 + e2 - lo) as usize] += c1 * c2;
                }
            }
            let terms = dense
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (lo + k as i64, c))
                .collect();
            return LaurentPoly { terms };
        }
        let mut v = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                v.push((e1 + e2, c1 * c2));
            }
        }
        v.sort_by_key(|t| t.0);
        Self::from_sorted(v)
    }

    fn small(&self) -> Option<Vec<(i64, i128)>> {
        self.terms.iter().map(|(e, c)| c.to_i64().map(|c| (*e, c as i128))).collect()
    }

    fn from_small_dense(lo: i64, d: &[i128]) -> Self {
        let terms = d
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(k, c)| (lo + k as i64, BigInt::from(*c)))
            .collect();
        LaurentPoly { terms }
    }

    /// Machine-integer product; `None` on overflow or when a coefficient is large.
    fn mul_small(&self, other: &Self) -> Option<Self> {
        let (a, b) = (self.small()?, other.small()?);
        let lo = a[0].0 + b[0].0;
        let width = (a.last()?.0 + b.last()?.0 - lo + 1) as usize;
        if width > 4 * a.len() * b.len() + 16 {
            return None;
        }
        let mut dense = vec![0i128; width];
        for (e1, c1) in &a {
            for (e2, c2) in &b {
                let slot = &mut dense[(e1 + e2 - lo) as usize];
                *slot = slot.checked_add(c1 * c2)?;
            }
        }
        Some(Self::from_small_dense(lo, &dense))
    }

    /// Machine-integer exact division; `None` on overflow or large coefficients.
    fn div_exact_small(&self, divisor: &Self) -> Option<Result<Self, ExactqError>> {
        let (a, b) = (self.small()?, divisor.small()?);
        let (lo_a, lo_b) = (a[0].0, b[0].0);
        let mut r = vec![0i128; (a.last()?.0 - lo_a + 1) as usize];
        for (e, c) in &a {
            r[(e - lo_a) as usize] = *c;
        }
        let support: Vec<(usize, i128)> = b.iter().map(|(e, c)| ((e - lo_b) as usize, *c)).collect();
        let (db, lb) = *support.last()?;
        if r.len() <= db {
            return Some(Err(ExactqError::NonExactDivision));
        }
        let mut quot = vec![0i128; r.len() - db];
        for dr in (db..r.len()).rev() {
            if r[dr] == 0 {
                continue;
            }
            if r[dr] % lb != 0 {
                return Some(Err(ExactqError::NonExactDivision));
            }
            let qc = r[dr] / lb;
            let shift = dr - db;
            for &(k, c) in &support {
                r[k + shift] = r[k + shift].checked_sub(qc.checked_mul(c)?)?;
            }
            quot[shift] = qc;
        }
        if r[..db].iter().any(|&c| c != 0) {
            return Some(Err(ExactqError::NonExactDivision));
        }
        Some(Ok(Self::from_small_dense(lo_a - lo_b, &quot)))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// The ring homomorphism `q -> 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.iter().map(|(_, c)| c).sum()
    }

    /// Substitutes `q -> q^k` (used for `q_i = q^{eps_i}`).
    pub fn substitute_power(&self, k: i64) -> Self {
        let mut v: Vec<(i64, BigInt)> = self.terms.iter().map(|(e, c)| (e * k, c.clone())).collect();
        v.sort_by_key(|t| t.0);
        LaurentPoly { terms: v }
    }

    /// Bar involution `q -> q^-1`.
    pub fn bar(&self) -> Self {
        self.substitute_power(-1)
    }

    pub fn content(&self) -> BigInt {
        self.terms.iter().fold(BigInt::zero(), |g, (_, c)| g.gcd(c))
    }

    /// Exact division in `Z[q, q^-1]`; errors if a remainder appears.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self, ExactqError> {
        if divisor.is_zero() {
            return Err(ExactqError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if divisor.terms.len() == 1 {
            let (e, c) = &divisor.terms[0];
            let mut out = Vec::with_capacity(self.terms.len());
            for (e2, c2) in &self.terms {
                let (qt, r) = c2.div_rem(c);
                if !r.is_zero() {
                    return Err(ExactqError::NonExactDivision);
                }
                out.push((e2 - e, qt));
            }
            return Ok(LaurentPoly { terms: out });
        }
        if let Some(res) = self.div_exact_small(divisor) {
            return res;
        }
        let (na, a) = self.to_dense();
        let (nb, b) = divisor.to_dense();
        let (quot, rem) = upoly::div_rem_exact_coeffs(&a, &b).ok_or(ExactqError::NonExactDivision)?;
        if !upoly::is_zero(&rem) {
            return Err(ExactqError::NonExactDivision);
        }
        Ok(Self::from_dense(na - nb, &quot))
    }

    /// `(low_exponent, dense coefficients)`, with `dense[0]` nonzero.
    pub(crate) fn to_dense(&self) -> (i64, Vec<BigInt>) {
        if self.is_zero() {
            return (0, Vec::new());
        }
        let lo = self.terms[0].0;
        let hi = self.max_exp().unwrap();
        let mut d = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            d[(e - lo) as usize] = c.clone();
        }
        (lo, d)
    }

    pub(crate) fn from_dense(lo: i64, d: &[BigInt]) -> Self {
        let terms = d
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (lo + k as i64, c.clone()))
            .collect();
        LaurentPoly { terms }
    }

    pub(crate) fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.last().map(|t| &t.1)
    }

    pub(crate) fn is_negative_leading(&self) -> bool {
        self.leading_coeff().map(|c| c.is_negative()).unwrap_or(false)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = !abs.is_one() || *e == 0;
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match *e {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn machine_and_big_paths_agree() {
        let m = i64::MAX;
        let a = LaurentPoly::from_terms([(1, m), (0, m), (-2, -m)]);
        let b = LaurentPoly::from_terms([(1, 1), (0, -1)]);
        let big = LaurentPoly::from_terms([(3, BigInt::from(1) << 70), (0, BigInt::from(-3))]);
        for x in [&a, &big] {
            let prod = x.mul(&b).mul(&a);
            assert_eq!(prod.eval_at_one(), BigInt::zero());
            assert_eq!(prod.div_exact(&a).unwrap().div_exact(&b).unwrap(), *x);
            assert_eq!(x.mul(&b).add(&LaurentPoly::one()).div_exact(&b), Err(ExactqError::NonExactDivision));
        }
    }

    #[test]
    fn difference_of_squares() {
        let q = LaurentPoly::q();
        let qi = LaurentPoly::q_pow(-1);
        let lhs = q.add(&qi).mul(&q.sub(&qi));
        assert_eq!(lhs, LaurentPoly::q_pow(2).sub(&LaurentPoly::q_pow(-2)));
    }

    #[test]
    fn zero_is_additive_identity() {
        let x = LaurentPoly::from_terms([(3, 2), (-1, -7)]);
        assert_eq!(LaurentPoly::zero().add(&x), x);
    }

    #[test]
    fn eval_at_one_substitutes() {
        let x = LaurentPoly::from_terms([(3, 1), (-1, 2)]);
        assert_eq!(x.eval_at_one(), BigInt::from(3));
    }

    #[test]
    fn pruning_keeps_canonical_form() {
        let x = LaurentPoly::from_terms([(1, 2), (1, -2), (0, 5)]);
        assert_eq!(x, LaurentPoly::constant(5));
        assert!(x.terms().iter().all(|(_, c)| !c.is_zero()));
    }

    #[test]
    fn exact_division_detects_remainder() {
        let a = LaurentPoly::from_terms([(2, 1), (0, -1)]);
        let b = LaurentPoly::from_terms([(1, 1), (0, 1)]);
        assert_eq!(a.div_exact(&b).unwrap(), LaurentPoly::from_terms([(1, 1), (0, -1)]));
        let c = LaurentPoly::from_terms([(2, 1), (0, 1)]);
        assert_eq!(c.div_exact(&b), Err(ExactqError::NonExactDivision));
    }

    #[test]
    fn display_is_readable() {
        let x = LaurentPoly::from_terms([(2, 1), (0, 2), (-2, -1)]);
        assert_eq!(x.to_string(), "q^2 + 2 - q^-2");
    }
}
