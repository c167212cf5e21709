use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Small dense integer matrix acting on column vectors. Lattice data at
/// desk rank never comes near `i64` limits; products are checked anyway.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl From<Vec<Vec<i64>>> for IntMatrix {
    fn from(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for row in &rows {
            let mut row = row.clone();
            row.resize(c, 0);
            data.extend(row);
        }
        IntMatrix { rows: r, cols: c, data }
    }
}

impl From<IntMatrix> for Vec<Vec<i64>> {
    fn from(m: IntMatrix) -> Self {
        m.to_rows()
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Strict constructor: every row must have the same length.
    pub fn from_rows(rows: &[Vec<i64>]) -> Option<Self> {
        let c = rows.first().map(|r| r.len()).unwrap_or(0);
        if rows.iter().any(|r| r.len() != c) {
            return None;
        }
        Some(IntMatrix::from(rows.to_vec()))
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<i64>], nrows: usize) -> Self {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..nrows {
                m[(i, j)] = c[i];
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn row(&self, i: usize) -> Vec<i64> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let p = a.checked_mul(other[(k, j)]).expect("integer overflow");
                    out[(i, j)] = out[(i, j)].checked_add(p).expect("integer overflow");
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows).map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum()).collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, c: i64) -> Self {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    /// Exact determinant (fraction-free Bareiss over big integers).
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| (0..n).map(|j| BigInt::from(self[(i, j)])).collect()).collect();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    /// Leading principal minors, top-left `1x1` first.
    pub fn leading_minors(&self) -> Vec<BigInt> {
        (1..=self.rows).map(|k| self.submatrix(k, k).det()).collect()
    }

    fn submatrix(&self, r: usize, c: usize) -> Self {
        let mut m = Self::zeros(r, c);
        for i in 0..r {
            for j in 0..c {
                m[(i, j)] = self[(i, j)];
            }
        }
        m
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.det().abs().is_one()
    }

    /// Rational inverse, if the matrix is nonsingular.
    pub fn rational_inverse(&self) -> Option<Vec<Vec<BigRational>>> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                let mut row: Vec<BigRational> = (0..n).map(|j| BigRational::from_integer(self[(i, j)].into())).collect();
                row.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
                row
            })
            .collect();
        for col in 0..n {
            let p = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, p);
            let piv = a[col][col].clone();
            for x in a[col].iter_mut() {
                *x = &*x / &piv;
            }
            let pivot = a[col].clone();
            for (r, row) in a.iter_mut().enumerate() {
                if r != col && !row[col].is_zero() {
                    let f = row[col].clone();
                    for (x, y) in row.iter_mut().zip(&pivot) {
                        *x -= y * &f;
                    }
                }
            }
        }
        Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
    }

    /// Integer inverse; `None` unless the matrix is unimodular.
    pub fn inverse(&self) -> Option<Self> {
        let inv = self.rational_inverse()?;
        let mut m = Self::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = &inv[i][j];
                if !x.is_integer() {
                    return None;
                }
                m[(i, j)] = x.to_integer().to_i64()?;
            }
        }
        Some(m)
    }

    /// Smith normal form `U * self * V = D`.
    pub fn smith(&self) -> Smith {
        smith_normal_form(self)
    }

    /// Saturated integer basis of `{v : self * v = 0}`.
    pub fn integer_kernel(&self) -> Vec<Vec<i64>> {
        let s = self.smith();
        let r = s.rank();
        (r..self.cols).map(|j| s.v.column(j)).collect()
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_rows())
    }
}

/// Result of a Smith normal form computation.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    /// Nonzero invariant factors, in divisibility order.
    pub fn invariant_factors(&self) -> Vec<i64> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)])
            .take_while(|&x| x != 0)
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

fn smith_normal_form(m: &IntMatrix) -> Smith {
    let (nr, nc) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(nr);
    let mut v = IntMatrix::identity(nc);

    fn swap_rows(a: &mut IntMatrix, i: usize, j: usize) {
        for c in 0..a.cols() {
            let t = a[(i, c)];
            a[(i, c)] = a[(j, c)];
            a[(j, c)] = t;
        }
    }
    fn swap_cols(a: &mut IntMatrix, i: usize, j: usize) {
        for r in 0..a.rows() {
            let t = a[(r, i)];
            a[(r, i)] = a[(r, j)];
            a[(r, j)] = t;
        }
    }
    // row_i += k * row_j
    fn add_row(a: &mut IntMatrix, i: usize, j: usize, k: i64) {
        for c in 0..a.cols() {
            a[(i, c)] += k * a[(j, c)];
        }
    }
    fn add_col(a: &mut IntMatrix, i: usize, j: usize, k: i64) {
        for r in 0..a.rows() {
            a[(r, i)] += k * a[(r, j)];
        }
    }

    let mut t = 0;
    while t < nr.min(nc) {
        // pivot: smallest nonzero absolute value in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..nr {
            for j in t..nc {
                if d[(i, j)] != 0 && best.map(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs()).unwrap_or(true) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        swap_rows(&mut d, t, pi);
        swap_rows(&mut u, t, pi);
        swap_cols(&mut d, t, pj);
        swap_cols(&mut v, t, pj);
        loop {
            let mut changed = false;
            for i in t + 1..nr {
                let k = d[(i, t)].div_euclid(d[(t, t)]);
                if k != 0 {
                    add_row(&mut d, i, t, -k);
                    add_row(&mut u, i, t, -k);
                }
                if d[(i, t)] != 0 {
                    swap_rows(&mut d, t, i);
                    swap_rows(&mut u, t, i);
                    changed = true;
                }
            }
            for j in t + 1..nc {
                let k = d[(t, j)].div_euclid(d[(t, t)]);
                if k != 0 {
                    add_col(&mut d, j, t, -k);
                    add_col(&mut v, j, t, -k);
                }
                if d[(t, j)] != 0 {
                    swap_cols(&mut d, t, j);
                    swap_cols(&mut v, t, j);
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // divisibility of the remaining block by the pivot
            let p = d[(t, t)];
            let bad = (t + 1..nr)
                .flat_map(|i| (t + 1..nc).map(move |j| (i, j)))
                .find(|&(i, j)| d[(i, j)] % p != 0);
            match bad {
                Some((i, _)) => {
                    add_row(&mut d, t, i, 1);
                    add_row(&mut u, t, i, 1);
                }
                None => break,
            }
        }
        if d[(t, t)] < 0 {
            for c in 0..nc {
                d[(t, c)] = -d[(t, c)];
            }
            for c in 0..nr {
                u[(t, c)] = -u[(t, c)];
            }
        }
        t += 1;
    }
    Smith { u, d, v }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn check_smith(a: &IntMatrix) -> Smith {
        let s = a.smith();
        assert_eq!(s.u.mul(a).mul(&s.v), s.d);
        assert!(s.u.is_unimodular() && s.v.is_unimodular());
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert_eq!(w[1] % w[0], 0);
        }
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert_eq!(s.d[(i, j)], 0);
                }
            }
        }
        s
    }

    #[test]
    fn smith_of_one_by_one() {
        let s = check_smith(&m(&[&[2]]));
        assert_eq!(s.invariant_factors(), vec![2]);
    }

    #[test]
    fn smith_needs_divisibility_fix() {
        let s = check_smith(&m(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.invariant_factors(), vec![1, 6]);
    }

    #[test]
    fn smith_rectangular_and_singular() {
        let s = check_smith(&m(&[&[1, 1], &[1, 1], &[2, 2]]));
        assert_eq!(s.invariant_factors(), vec![1]);
        let s = check_smith(&m(&[&[4, 6, 8], &[6, 9, 12]]));
        assert_eq!(s.rank(), 1);
    }

    #[test]
    fn determinant_and_inverse() {
        let a = m(&[&[2, -1], &[-1, 2]]);
        assert_eq!(a.det(), BigInt::from(3));
        assert!(a.inverse().is_none());
        let b = m(&[&[2, 1], &[1, 1]]);
        assert_eq!(b.mul(&b.inverse().unwrap()), IntMatrix::identity(2));
    }

    #[test]
    fn kernel_is_saturated() {
        let a = m(&[&[2, 2]]);
        assert_eq!(a.integer_kernel().len(), 1);
        let k = &a.integer_kernel()[0];
        assert_eq!(a.apply(k), vec![0]);
        assert_eq!(k.iter().map(|x| x.abs()).max(), Some(1));
    }
}
