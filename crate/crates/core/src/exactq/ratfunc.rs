use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::laurent::LaurentPoly;
use super::upoly;
use super::ExactqError;

/// An element of `Q(q)` in lowest terms.
///
/// The denominator is a polynomial in `q` with nonzero constant term and
/// positive leading coefficient, coprime (content included) to the numerator.
/// That makes the representation canonical; `PartialEq` is nevertheless the
/// cross-multiplication test so it stays correct for any representative.
#[derive(Clone)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentPoly::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_laurent(LaurentPoly::constant(n))
    }

    pub fn q_pow(e: i64) -> Self {
        Self::from_laurent(LaurentPoly::q_pow(e))
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        RatFunc {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, ExactqError> {
        if den.is_zero() {
            return Err(ExactqError::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// `Some` when the value lies in `Z[q, q^-1]`.
    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        self.den.is_one().then_some(&self.num)
    }

    fn normalized(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if let Some((sign, e)) = den.as_unit() {
            let num = num.shift(-e);
            let num = if sign < 0 { num.neg() } else { num };
            return RatFunc {
                num,
                den: LaurentPoly::one(),
            };
        }
        let (na, a) = num.to_dense();
        let (nb, b) = den.to_dense();
        let g = upoly::gcd(&a, &b);
        let (a, b) = if g.len() == 1 && g[0].is_one() {
            (a, b)
        } else {
            let (qa, _) = upoly::div_rem_exact_coeffs(&a, &g).expect("gcd divides numerator");
            let (qb, _) = upoly::div_rem_exact_coeffs(&b, &g).expect("gcd divides denominator");
            (qa, qb)
        };
        let mut num = LaurentPoly::from_dense(na - nb, &a);
        let mut den = LaurentPoly::from_dense(0, &b);
        if den.is_negative_leading() {
            num = num.neg();
            den = den.neg();
        }
        if let Some((sign, e)) = den.as_unit() {
            let n = num.shift(-e);
            return RatFunc {
                num: if sign < 0 { n.neg() } else { n },
                den: LaurentPoly::one(),
            };
        }
        RatFunc { num, den }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_laurent(self.num.add(&other.num));
        }
        if self.den == other.den {
            return Self::normalized(self.num.add(&other.num), self.den.clone());
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Self::normalized(num, self.den.mul(&other.den))
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return Self::from_laurent(self.num.mul(&other.num));
        }
        Self::normalized(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self, ExactqError> {
        if other.is_zero() {
            return Err(ExactqError::DivisionByZero);
        }
        if self.den.is_one() && other.den.is_one() {
            if let Ok(qt) = self.num.div_exact(&other.num) {
                return Ok(Self::from_laurent(qt));
            }
        }
        Ok(Self::normalized(self.num.mul(&other.den), self.den.mul(&other.num)))
    }

    /// Evaluation at `q = 1`; fails if the denominator vanishes there.
    pub fn eval_at_one(&self) -> Result<BigRational, ExactqError> {
        let d = self.den.eval_at_one();
        if d.is_zero() {
            return Err(ExactqError::PoleAtOne);
        }
        Ok(BigRational::new(self.num.eval_at_one(), d))
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 {
            self.inv().expect("inverse of zero")
        } else {
            self.clone()
        };
        let mut acc = Self::one();
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        Self::normalized(self.num.scale(c), self.den.clone())
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Eq for RatFunc {}

impl std::hash::Hash for RatFunc {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<LaurentPoly> for RatFunc {
    fn from(p: LaurentPoly) -> Self {
        Self::from_laurent(p)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(t: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(t.iter().copied())
    }

    #[test]
    fn reduces_to_lowest_terms() {
        // (q^2 - 1) / (q - 1) = q + 1
        let r = RatFunc::new(lp(&[(2, 1), (0, -1)]), lp(&[(1, 1), (0, -1)])).unwrap();
        assert_eq!(r.as_laurent(), Some(&lp(&[(1, 1), (0, 1)])));
    }

    #[test]
    fn unit_denominators_fold_into_numerator() {
        let r = RatFunc::new(lp(&[(3, 2)]), lp(&[(1, -1)])).unwrap();
        assert_eq!(r.as_laurent(), Some(&lp(&[(2, -2)])));
    }

    #[test]
    fn integer_content_is_kept_in_denominator() {
        let half = RatFunc::new(LaurentPoly::one(), LaurentPoly::constant(2)).unwrap();
        let sum = half.add(&half);
        assert!(sum.is_one());
        assert_eq!(half.eval_at_one().unwrap(), BigRational::new(1.into(), 2.into()));
    }

    #[test]
    fn field_inverse() {
        let x = RatFunc::new(lp(&[(1, 1), (-1, 1)]), lp(&[(2, 3), (0, 1)])).unwrap();
        assert!(x.mul(&x.inv().unwrap()).is_one());
    }

    #[test]
    fn pole_at_one_is_reported() {
        let r = RatFunc::new(LaurentPoly::one(), lp(&[(1, 1), (-1, -1)])).unwrap();
        assert_eq!(r.eval_at_one(), Err(ExactqError::PoleAtOne));
    }

    #[test]
    fn equality_by_cross_multiplication() {
        let a = RatFunc::new(lp(&[(1, 1)]), lp(&[(1, 1), (0, 1)])).unwrap();
        let b = RatFunc::one().sub(&RatFunc::new(LaurentPoly::one(), lp(&[(1, 1), (0, 1)])).unwrap());
        assert_eq!(a, b);
    }
}
