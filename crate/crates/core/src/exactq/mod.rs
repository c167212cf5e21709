//! Exact coefficient arithmetic: `Z[q, q^-1]`, `Q(q)`, the rationals as the
//! `q = 1` specialization, and q-integers / q-binomials.

mod laurent;
mod ratfunc;
mod scalar;
mod upoly;

pub use laurent::LaurentPoly;
pub use ratfunc::RatFunc;
pub use scalar::{Rat, Scalar};

use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactqError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("division is not exact in Z[q, q^-1]")]
    NonExactDivision,
    #[error("denominator vanishes at q = 1")]
    PoleAtOne,
    #[error("negative lower index {0} in q-binomial")]
    NegativeBinomial(i64),
}

/// Quantum integer `[n]_i = (q_i^n - q_i^-n) / (q_i - q_i^-1)` with `q_i = q^eps`.
/// `eps = 1` is the unsubscripted `[n]`.
pub fn qint(n: i64, eps: i64) -> LaurentPoly {
    let m = n.abs();
    let p = LaurentPoly::from_terms((0..m).map(|k| (eps * (m - 1 - 2 * k), 1)));
    if n < 0 {
        p.neg()
    } else {
        p
    }
}

/// `[m]_i! = [1]_i [2]_i ... [m]_i`.
pub fn qfactorial(m: u32, eps: i64) -> LaurentPoly {
    (1..=m as i64).fold(LaurentPoly::one(), |acc, k| acc.mul(&qint(k, eps)))
}

/// The q-binomial `[n; d]_i = [n][n-1]...[n-d+1] / [d]!`, computed as
/// `[n; k+1] = [n; k] [n-k] / [k+1]` by exact division; a remainder is
/// reported as an error rather than silently producing a rational function.
pub fn qbinom(n: i64, d: i64, eps: i64) -> Result<LaurentPoly, ExactqError> {
    if d < 0 {
        return Err(ExactqError::NegativeBinomial(d));
    }
    (0..d).try_fold(LaurentPoly::one(), |acc, k| acc.mul(&qint(n - k, eps)).div_exact(&qint(k + 1, eps)))
}

/// Ordinary binomial coefficient for arbitrary integer top index.
pub fn binomial(n: i64, d: i64) -> BigInt {
    if d < 0 {
        return BigInt::from(0);
    }
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for k in 0..d {
        num *= n - k;
        den *= k + 1;
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qint_two() {
        assert_eq!(qint(2, 1), LaurentPoly::from_terms([(1, 1), (-1, 1)]));
    }

    #[test]
    fn qint_zero_and_antisymmetry() {
        assert!(qint(0, 1).is_zero());
        for n in 1..=10 {
            assert_eq!(qint(-n, 1), qint(n, 1).neg());
        }
    }

    #[test]
    fn qint_specializes_to_n() {
        for n in -6..=6 {
            for eps in 1..=3 {
                assert_eq!(qint(n, eps).eval_at_one(), BigInt::from(n));
            }
        }
    }

    #[test]
    fn qbinom_small_values() {
        assert_eq!(qbinom(5, 0, 1).unwrap(), LaurentPoly::one());
        assert_eq!(qbinom(-3, 0, 2).unwrap(), LaurentPoly::one());
        assert_eq!(
            qbinom(4, 2, 1).unwrap(),
            LaurentPoly::from_terms([(4, 1), (2, 1), (0, 2), (-2, 1), (-4, 1)])
        );
        assert_eq!(qbinom(7, 3, 1).unwrap().eval_at_one(), BigInt::from(35));
    }

    #[test]
    fn qbinom_rejects_negative_lower_index() {
        assert_eq!(qbinom(3, -1, 1), Err(ExactqError::NegativeBinomial(-1)));
    }

    #[test]
    fn qbinom_negative_top_is_still_laurent() {
        // [-2; 2] = [-2][-3]/[2]! = [3] up to sign conventions; at q = 1 it is C(-2, 2) = 3.
        let b = qbinom(-2, 2, 1).unwrap();
        assert_eq!(b.eval_at_one(), binomial(-2, 2));
    }
}
