use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::exactq::Rat;
use crate::linalg::SparseMatrix;

/// The prime field `F_p`, small `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        Fp { p }
    }

    pub fn from_int(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.p - a) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, a: u64, e: i64) -> Option<u64> {
        let base = if e < 0 { self.inv(a)? } else { a };
        let mut out = 1;
        for _ in 0..e.unsigned_abs() {
            out = self.mul(out, base);
        }
        Some(out)
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        (!a.is_multiple_of(self.p)).then(|| (1..self.p).find(|&b| self.mul(a, b) == 1).expect("p is prime"))
    }

    /// `None` when `p` divides the denominator.
    pub fn reduce(&self, x: &Rat) -> Option<u64> {
        let p = BigInt::from(self.p);
        let n = x.numer().mod_floor(&p).to_u64()?;
        let d = x.denom().mod_floor(&p).to_u64()?;
        Some(self.mul(n, self.inv(d)?))
    }

    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.p
    }

    pub fn units(&self) -> impl Iterator<Item = u64> {
        1..self.p
    }
}

/// Square matrix over `F_p`, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpMatrix {
    n: usize,
    a: Vec<u64>,
}

impl FpMatrix {
    pub fn identity(n: usize) -> Self {
        let mut a = vec![0; n * n];
        for k in 0..n {
            a[k * n + k] = 1;
        }
        FpMatrix { n, a }
    }

    pub fn from_rows(rows: &[Vec<u64>]) -> Self {
        let n = rows.len();
        FpMatrix {
            n,
            a: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn diagonal(d: Vec<u64>) -> Self {
        let n = d.len();
        let mut m = Self::identity(n);
        for (k, x) in d.into_iter().enumerate() {
            m.a[k * n + k] = x;
        }
        m
    }

    pub fn reduce(f: &Fp, m: &SparseMatrix<Rat>) -> Option<Self> {
        let n = m.nrows();
        let mut a = vec![0; n * n];
        for (r, c, x) in m.entries() {
            a[r * n + c] = f.reduce(x)?;
        }
        Some(FpMatrix { n, a })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.a[r * self.n + c]
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.a.chunks(self.n.max(1)).map(<[u64]>::to_vec).collect()
    }

    pub fn mul(&self, f: &Fp, other: &Self) -> Self {
        let n = self.n;
        let mut a = vec![0; n * n];
        for r in 0..n {
            for k in 0..n {
                let x = self.a[r * n + k];
                if x == 0 {
                    continue;
                }
                for c in 0..n {
                    a[r * n + c] = f.add(a[r * n + c], f.mul(x, other.a[k * n + c]));
                }
            }
        }
        FpMatrix { n, a }
    }

    pub fn add(&self, f: &Fp, other: &Self) -> Self {
        FpMatrix {
            n: self.n,
            a: self.a.iter().zip(&other.a).map(|(&x, &y)| f.add(x, y)).collect(),
        }
    }

    pub fn scale(&self, f: &Fp, c: u64) -> Self {
        FpMatrix {
            n: self.n,
            a: self.a.iter().map(|&x| f.mul(x, c)).collect(),
        }
    }

    pub fn kron(&self, f: &Fp, other: &Self) -> Self {
        let (n, m) = (self.n, other.n);
        let mut a = vec![0; n * m * n * m];
        for (r1, c1) in (0..n).flat_map(|r| (0..n).map(move |c| (r, c))) {
            for (r2, c2) in (0..m).flat_map(|r| (0..m).map(move |c| (r, c))) {
                a[(r1 * m + r2) * n * m + c1 * m + c2] = f.mul(self.get(r1, c1), other.get(r2, c2));
            }
        }
        FpMatrix { n: n * m, a }
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        FpMatrix {
            n,
            a: (0..n * n).map(|k| self.a[(k % n) * n + k / n]).collect(),
        }
    }

    /// `2 x 2` only.
    pub fn det2(&self, f: &Fp) -> u64 {
        f.sub(f.mul(self.a[0], self.a[3]), f.mul(self.a[1], self.a[2]))
    }

    /// `2 x 2` only.
    pub fn inverse2(&self, f: &Fp) -> Option<Self> {
        let d = f.inv(self.det2(f))?;
        let [a, b, c, e] = [self.a[0], self.a[1], self.a[2], self.a[3]];
        Some(FpMatrix {
            n: 2,
            a: vec![f.mul(e, d), f.mul(f.neg(b), d), f.mul(f.neg(c), d), f.mul(a, d)],
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops() {
        let f = Fp::new(7);
        assert_eq!(f.inv(3), Some(5));
        assert_eq!(f.inv(0), None);
        assert_eq!(f.from_int(-1), 6);
        assert_eq!(f.pow(3, -1), Some(5));
        assert_eq!(f.reduce(&Rat::new(1.into(), 2.into())), Some(4));
        assert_eq!(f.reduce(&Rat::new(1.into(), 7.into())), None);
    }

    #[test]
    fn kron_and_inverse() {
        let f = Fp::new(5);
        let g = FpMatrix::from_rows(&[vec![2, 1], vec![3, 2]]);
        let gi = g.inverse2(&f).unwrap();
        assert_eq!(g.mul(&f, &gi), FpMatrix::identity(2));
        let k = g.kron(&f, &gi);
        assert_eq!(k.mul(&f, &gi.kron(&f, &g)), FpMatrix::identity(4));
        assert_eq!(g.transpose().get(0, 1), 3);
    }
}
