use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{LaurentPoly, RatFunc};

pub type Rat = num_rational::BigRational;

/// Coefficient fields modules are built over: `Q(q)` itself, or `Q` as the
/// specialization `q = 1`.
///
/// `q_pow` is how the field sees the indeterminate; every construction that is
/// generic over `Scalar` therefore has a quantum and a classical reading.
pub trait Scalar: Clone + PartialEq + Eq + Debug + Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn from_int(n: i64) -> Self;
    /// Image of `q^e`.
    fn q_pow(e: i64) -> Self;
    /// Image of a Laurent polynomial.
    fn from_laurent(p: &LaurentPoly) -> Self;
    /// Image of a rational function; `None` on a pole.
    fn from_ratfunc(r: &RatFunc) -> Option<Self>;
    /// True when the field specializes `q` to 1.
    fn is_classical() -> bool;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul(&i))
    }
}

impl Scalar for RatFunc {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        RatFunc::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        RatFunc::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        RatFunc::mul(self, other)
    }
    fn neg(&self) -> Self {
        RatFunc::neg(self)
    }
    fn inv(&self) -> Option<Self> {
        RatFunc::inv(self)
    }
    fn from_int(n: i64) -> Self {
        RatFunc::from_int(n)
    }
    fn q_pow(e: i64) -> Self {
        RatFunc::q_pow(e)
    }
    fn from_laurent(p: &LaurentPoly) -> Self {
        RatFunc::from_laurent(p.clone())
    }
    fn from_ratfunc(r: &RatFunc) -> Option<Self> {
        Some(r.clone())
    }
    fn is_classical() -> bool {
        false
    }
    fn is_one(&self) -> bool {
        RatFunc::is_one(self)
    }
    fn div(&self, other: &Self) -> Option<Self> {
        RatFunc::div(self, other).ok()
    }
}

impl Scalar for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_int(n: i64) -> Self {
        Rat::from_integer(BigInt::from(n))
    }
    fn q_pow(_e: i64) -> Self {
        One::one()
    }
    fn from_laurent(p: &LaurentPoly) -> Self {
        Rat::from_integer(p.eval_at_one())
    }
    fn from_ratfunc(r: &RatFunc) -> Option<Self> {
        r.eval_at_one().ok()
    }
    fn is_classical() -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_field_forgets_q() {
        assert_eq!(<Rat as Scalar>::q_pow(7), <Rat as Scalar>::one());
        let p = LaurentPoly::from_terms([(2, 3), (-5, 1)]);
        assert_eq!(<Rat as Scalar>::from_laurent(&p), <Rat as Scalar>::from_int(4));
    }
}
