use crate::exactq::Scalar;

/// Sparse vector: `(index, value)` pairs sorted by index, no stored zeros.
pub type SparseVec<S> = Vec<(usize, S)>;

pub fn vec_add<S: Scalar>(a: &[(usize, S)], b: &[(usize, S)]) -> SparseVec<S> {
    vec_axpy(a, &S::one(), b)
}

/// `a + c * b`.
pub fn vec_axpy<S: Scalar>(a: &[(usize, S)], c: &S, b: &[(usize, S)]) -> SparseVec<S> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            let v = c.mul(&b[j].1);
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = a[i].1.add(&c.mul(&b[j].1));
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn vec_scale<S: Scalar>(a: &[(usize, S)], c: &S) -> SparseVec<S> {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|(k, v)| (*k, v.mul(c))).collect()
}

/// Row-major sparse matrix over a coefficient field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix<S> {
    nrows: usize,
    ncols: usize,
    rows: Vec<SparseVec<S>>,
}

impl<S: Scalar> SparseMatrix<S> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix {
            nrows,
            ncols,
            rows: vec![Vec::new(); nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal((0..n).map(|_| S::one()).collect())
    }

    pub fn diagonal(d: Vec<S>) -> Self {
        let n = d.len();
        let rows = d
            .into_iter()
            .enumerate()
            .map(|(i, x)| if x.is_zero() { Vec::new() } else { vec![(i, x)] })
            .collect();
        SparseMatrix { nrows: n, ncols: n, rows }
    }

    /// Builds from `(row, col, value)` triples; repeated positions are summed.
    pub fn from_triplets(nrows: usize, ncols: usize, entries: impl IntoIterator<Item = (usize, usize, S)>) -> Self {
        let mut m = Self::zeros(nrows, ncols);
        for (i, j, v) in entries {
            m.add_entry(i, j, &v);
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, i: usize) -> &[(usize, S)] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> S {
        match self.rows[i].binary_search_by_key(&j, |t| t.0) {
            Ok(k) => self.rows[i][k].1.clone(),
            Err(_) => S::zero(),
        }
    }

    pub fn add_entry(&mut self, i: usize, j: usize, v: &S) {
        if v.is_zero() {
            return;
        }
        let row = &mut self.rows[i];
        match row.binary_search_by_key(&j, |t| t.0) {
            Ok(k) => {
                let s = row[k].1.add(v);
                if s.is_zero() {
                    row.remove(k);
                } else {
                    row[k].1 = s;
                }
            }
            Err(k) => row.insert(k, (j, v.clone())),
        }
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &S)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, j.to_owned(), v)))
    }

    /// First nonzero entry, scanning rows in order.
    pub fn first_nonzero(&self) -> Option<(usize, usize, S)> {
        self.entries().next().map(|(i, j, v)| (i, j, v.clone()))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols), "shape mismatch");
        SparseMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            rows: self.rows.iter().zip(&other.rows).map(|(a, b)| vec_add(a, b)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.axpy(&S::one().neg(), other)
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &S, other: &Self) -> Self {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols), "shape mismatch");
        SparseMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            rows: self.rows.iter().zip(&other.rows).map(|(a, b)| vec_axpy(a, c, b)).collect(),
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        SparseMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            rows: self.rows.iter().map(|r| vec_scale(r, c)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&S::one().neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ncols, other.nrows, "dimension mismatch");
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc: SparseVec<S> = Vec::new();
                for (k, a) in r {
                    acc = vec_axpy(&acc, a, &other.rows[*k]);
                }
                acc
            })
            .collect();
        SparseMatrix {
            nrows: self.nrows,
            ncols: other.ncols,
            rows,
        }
    }

    /// Left multiplication by a diagonal given entrywise.
    pub fn scale_rows(&self, d: &[S]) -> Self {
        SparseMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            rows: self.rows.iter().zip(d).map(|(r, c)| vec_scale(r, c)).collect(),
        }
    }

    /// Right multiplication by a diagonal given entrywise.
    pub fn scale_cols(&self, d: &[S]) -> Self {
        SparseMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            rows: self
                .rows
                .iter()
                .map(|r| {
                    r.iter()
                        .filter_map(|(j, v)| {
                            let x = v.mul(&d[*j]);
                            (!x.is_zero()).then_some((*j, x))
                        })
                        .collect()
                })
                .collect(),
        }
    }

    /// Keeps only the listed columns (others zeroed); shape unchanged.
    pub fn restrict_cols(&self, keep: &[bool]) -> Self {
        SparseMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().filter(|(j, _)| keep[*j]).cloned().collect())
                .collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.ncols, self.nrows);
        for (i, r) in self.rows.iter().enumerate() {
            for (j, v) in r {
                out.rows[*j].push((i, v.clone()));
            }
        }
        out
    }

    /// Kronecker product, index `(a, b) -> a * other.ncols + b`.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.nrows * other.nrows, self.ncols * other.ncols);
        for (i, r) in self.rows.iter().enumerate() {
            for (k, ro) in other.rows.iter().enumerate() {
                let row = &mut out.rows[i * other.nrows + k];
                for (j, a) in r {
                    for (l, b) in ro {
                        row.push((j * other.ncols + l, a.mul(b)));
                    }
                }
            }
        }
        out
    }

    /// `self * v` for a sparse column vector.
    pub fn apply(&self, v: &[(usize, S)]) -> SparseVec<S> {
        self.transpose_apply_impl(v)
    }

    fn transpose_apply_impl(&self, v: &[(usize, S)]) -> SparseVec<S> {
        let mut out = Vec::new();
        for (i, r) in self.rows.iter().enumerate() {
            let mut acc = S::zero();
            let (mut a, mut b) = (0, 0);
            while a < r.len() && b < v.len() {
                match r[a].0.cmp(&v[b].0) {
                    std::cmp::Ordering::Less => a += 1,
                    std::cmp::Ordering::Greater => b += 1,
                    std::cmp::Ordering::Equal => {
                        acc = acc.add(&r[a].1.mul(&v[b].1));
                        a += 1;
                        b += 1;
                    }
                }
            }
            if !acc.is_zero() {
                out.push((i, acc));
            }
        }
        out
    }

    /// Column `j` as a sparse vector.
    pub fn column(&self, j: usize) -> SparseVec<S> {
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.binary_search_by_key(&j, |t| t.0).ok().map(|k| (i, r[k].1.clone())))
            .collect()
    }

    /// All entries flattened row-major into one sparse vector.
    pub fn flatten(&self) -> SparseVec<S> {
        self.entries().map(|(i, j, v)| (i * self.ncols + j, v.clone())).collect()
    }

    /// Entrywise image under a field map; `None` if any entry fails to map.
    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> Option<T>) -> Option<SparseMatrix<T>> {
        let mut rows = Vec::with_capacity(self.nrows);
        for r in &self.rows {
            let mut nr = Vec::with_capacity(r.len());
            for (j, v) in r {
                let x = f(v)?;
                if !x.is_zero() {
                    nr.push((*j, x));
                }
            }
            rows.push(nr);
        }
        Some(SparseMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            rows,
        })
    }

    pub fn to_dense(&self) -> Vec<Vec<S>> {
        let mut d = vec![vec![S::zero(); self.ncols]; self.nrows];
        for (i, j, v) in self.entries() {
            d[i][j] = v.clone();
        }
        d
    }

    pub fn from_dense(d: &[Vec<S>]) -> Self {
        let nrows = d.len();
        let ncols = d.first().map(|r| r.len()).unwrap_or(0);
        let rows = d
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(j, v)| (j, v.clone()))
                    .collect()
            })
            .collect();
        SparseMatrix { nrows, ncols, rows }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::Rat;

    fn r(n: i64) -> Rat {
        Rat::from_int(n)
    }

    #[test]
    fn product_and_kron() {
        let a = SparseMatrix::from_dense(&[vec![r(0), r(1)], vec![r(0), r(0)]]);
        let b = a.transpose();
        let ab = a.mul(&b);
        assert_eq!(ab.to_dense(), vec![vec![r(1), r(0)], vec![r(0), r(0)]]);
        let k = a.kron(&SparseMatrix::identity(2));
        assert_eq!(k.nnz(), 2);
        assert_eq!(k.get(0, 2), r(1));
        assert_eq!(k.get(1, 3), r(1));
    }

    #[test]
    fn cancellation_prunes_entries() {
        let a = SparseMatrix::<Rat>::identity(3);
        assert!(a.sub(&a).is_zero());
        let mut m = SparseMatrix::<Rat>::zeros(1, 1);
        m.add_entry(0, 0, &r(2));
        m.add_entry(0, 0, &r(-2));
        assert_eq!(m.nnz(), 0);
    }

    #[test]
    fn apply_matches_column_extraction() {
        let a = SparseMatrix::from_dense(&[vec![r(1), r(2)], vec![r(3), r(4)]]);
        assert_eq!(a.apply(&[(1, r(1))]), a.column(1));
    }
}
