use crate::exactq::Scalar;

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref<S: Scalar>(m: &mut [Vec<S>]) -> Vec<usize> {
    let nrows = m.len();
    let ncols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = x.mul(&inv);
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot).take(ncols) {
                    if !y.is_zero() {
                        *x = x.sub(&f.mul(y));
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<S: Scalar>(m: &[Vec<S>]) -> usize {
    let mut a = m.to_vec();
    rref(&mut a).len()
}

/// Solves `m x = b` for square nonsingular `m`.
pub fn solve<S: Scalar>(m: &[Vec<S>], b: &[S]) -> Option<Vec<S>> {
    let n = m.len();
    let mut aug: Vec<Vec<S>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let piv = rref(&mut aug);
    if piv.len() != n || piv.last() == Some(&n) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n].clone()).collect())
}

pub fn inverse<S: Scalar>(m: &[Vec<S>]) -> Option<Vec<Vec<S>>> {
    let n = m.len();
    let mut aug: Vec<Vec<S>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { S::one() } else { S::zero() }));
            r
        })
        .collect();
    let piv = rref(&mut aug);
    if piv.len() < n || piv[n - 1] >= n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Basis of the right kernel `{x : m x = 0}`.
pub fn kernel<S: Scalar>(m: &[Vec<S>], ncols: usize) -> Vec<Vec<S>> {
    let mut a = m.to_vec();
    let piv = rref(&mut a);
    let free: Vec<usize> = (0..ncols).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![S::zero(); ncols];
            v[f] = S::one();
            for (r, &p) in piv.iter().enumerate() {
                v[p] = a[r][f].neg();
            }
            v
        })
        .collect()
}

pub fn mat_mul<S: Scalar>(a: &[Vec<S>], b: &[Vec<S>]) -> Vec<Vec<S>> {
    let m = b.first().map(|r| r.len()).unwrap_or(0);
    a.iter()
        .map(|row| {
            (0..m)
                .map(|j| {
                    row.iter().zip(b).fold(
                        S::zero(),
                        |acc, (x, brow)| if x.is_zero() { acc } else { acc.add(&x.mul(&brow[j])) },
                    )
                })
                .collect()
        })
        .collect()
}

pub fn identity<S: Scalar>(n: usize) -> Vec<Vec<S>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { S::one() } else { S::zero() }).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::{Rat, RatFunc};

    fn r(n: i64) -> Rat {
        Rat::from_int(n)
    }

    #[test]
    fn rank_and_kernel() {
        let m = vec![vec![r(1), r(2), r(3)], vec![r(2), r(4), r(6)]];
        assert_eq!(rank(&m), 1);
        let k = kernel(&m, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(
                mat_mul(&m, &v.iter().map(|x| vec![x.clone()]).collect::<Vec<_>>()),
                vec![vec![r(0)], vec![r(0)]]
            );
        }
    }

    #[test]
    fn inverse_over_rational_functions() {
        let q = RatFunc::q_pow(1);
        let m = vec![vec![q.clone(), RatFunc::one()], vec![RatFunc::one(), q.clone()]];
        let inv = inverse(&m).unwrap();
        assert_eq!(mat_mul(&m, &inv), identity(2));
        let x = solve(&m, &[RatFunc::one(), RatFunc::zero()]).unwrap();
        assert_eq!(x, inv.iter().map(|row| row[0].clone()).collect::<Vec<_>>());
    }

    #[test]
    fn singular_has_no_inverse() {
        let m = vec![vec![r(1), r(1)], vec![r(1), r(1)]];
        assert!(inverse(&m).is_none());
        assert!(solve(&m, &[r(1), r(0)]).is_none());
    }
}
