use serde::Serialize;

use crate::linalg::IntMatrix;

use super::{IRootDatum, SatakeError};

/// `X_ι = X / X̆` in Smith coordinates: `torsion.len()` cyclic coordinates
/// (taken mod the listed orders) followed by `free_rank` free ones.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ILattice {
    pub free_rank: usize,
    pub torsion: Vec<i64>,
    pub projection: IntMatrix,
    /// Lifts to `X` of the coordinate generators, one per row of `projection`.
    pub generators: Vec<Vec<i64>>,
}

impl ILattice {
    /// Canonical coordinates of the class of `lambda`; torsion coordinates
    /// are reduced to their smallest nonnegative residues.
    pub fn class_of(&self, lambda: &[i64]) -> Vec<i64> {
        let mut c = self.projection.apply(lambda);
        for (k, &d) in self.torsion.iter().enumerate() {
            c[k] = c[k].rem_euclid(d);
        }
        c
    }

    pub fn is_zero_class(&self, lambda: &[i64]) -> bool {
        self.class_of(lambda).iter().all(|&x| x == 0)
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn describe(&self) -> String {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

fn is_power_of_two(d: i64) -> bool {
    d > 0 && d & (d - 1) == 0
}

/// Smith decomposition of `X / (id - theta)X`. Odd torsion is a hard error.
pub fn xlattice(d: &IRootDatum) -> Result<ILattice, SatakeError> {
    lattice_of(d.theta_x())
}

/// Same as `xlattice` for an arbitrary `theta` on `X`.
pub fn lattice_of(theta_x: &IntMatrix) -> Result<ILattice, SatakeError> {
    let n = theta_x.rows();
    let m = IntMatrix::identity(n).sub(theta_x);
    let s = m.smith();
    let factors = s.invariant_factors();
    let odd: Vec<i64> = factors.iter().copied().filter(|&f| f > 1 && !is_power_of_two(f)).collect();
    if !odd.is_empty() {
        return Err(SatakeError::OddTorsion(odd));
    }
    let r = factors.len();
    let keep: Vec<usize> = (0..r).filter(|&k| factors[k] > 1).chain(r..n).collect();
    let uinv = s.u.inverse().expect("unimodular");
    let rows: Vec<Vec<i64>> = keep.iter().map(|&k| s.u.row(k)).collect();
    let projection = if rows.is_empty() {
        IntMatrix::zeros(0, n)
    } else {
        IntMatrix::from_rows(&rows).expect("rectangular")
    };
    Ok(ILattice {
        free_rank: n - r,
        torsion: factors.into_iter().filter(|&f| f > 1).collect(),
        projection,
        generators: keep.iter().map(|&k| uinv.column(k)).collect(),
    })
}

/// Saturated basis of `Y^ι = ker(thetaY - id)`.
pub fn ylattice_fixed(d: &IRootDatum) -> Vec<Vec<i64>> {
    let n = d.theta_y().rows();
    d.theta_y().sub(&IntMatrix::identity(n)).integer_kernel()
}

/// `(mu, class of lambda) -> <mu, lambda>`, for `mu` fixed by `theta`.
pub fn ipairing(d: &IRootDatum, mu: &[i64], lambda: &[i64]) -> Result<i64, SatakeError> {
    if d.theta_y().apply(mu) != mu {
        return Err(SatakeError::NotFixed);
    }
    Ok(d.datum().pair(mu, lambda))
}

/// Pairing of the `Y^ι` basis against the generators of `X_ι`.
pub fn pairing_matrix(d: &IRootDatum, xl: &ILattice, yfix: &[Vec<i64>]) -> Vec<Vec<i64>> {
    yfix.iter()
        .map(|mu| xl.generators.iter().map(|g| d.datum().pair(mu, g)).collect())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct XLatticeReport {
    pub free_rank: usize,
    pub torsion: Vec<i64>,
    pub theta_is_identity: bool,
    pub y_fixed_basis: Vec<Vec<i64>>,
    /// Rows indexed by the `Y^ι` basis, columns by the `X_ι` generators.
    pub pairing: Vec<Vec<i64>>,
    pub perfect: bool,
}

impl XLatticeReport {
    pub fn summary(&self) -> String {
        let x = if self.theta_is_identity {
            "X_ι = X".to_string()
        } else {
            let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("ℤ/{d}")).collect();
            match self.free_rank {
                0 => {}
                1 => parts.push("ℤ".into()),
                r => parts.push(format!("ℤ^{r}")),
            }
            if parts.is_empty() {
                "X_ι = 0".into()
            } else {
                format!("X_ι ≅ {}", parts.join(" ⊕ "))
            }
        };
        let y = match self.y_fixed_basis.len() {
            0 => "Y^ι = 0".to_string(),
            1 => "Y^ι ≅ ℤ".to_string(),
            r => format!("Y^ι ≅ ℤ^{r}"),
        };
        let perf = if self.perfect { "pairing perfect" } else { "pairing not perfect" };
        format!("{x}, {y}, {perf}")
    }
}

/// `X_ι`, `Y^ι` and the pairing between them.
pub fn xlattice_report(d: &IRootDatum) -> Result<XLatticeReport, SatakeError> {
    let xl = xlattice(d)?;
    let yfix = ylattice_fixed(d);
    let pairing = pairing_matrix(d, &xl, &yfix);
    let square = yfix.len() == xl.generators.len();
    let perfect =
        xl.torsion.is_empty() && square && (pairing.is_empty() || IntMatrix::from_rows(&pairing).is_some_and(|m| m.is_unimodular()));
    Ok(XLatticeReport {
        free_rank: xl.free_rank,
        torsion: xl.torsion,
        theta_is_identity: d.theta_x().is_identity(),
        y_fixed_basis: yfix,
        pairing,
        perfect,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::satake::catalog_entry;

    #[test]
    fn sl2_split_has_two_torsion() {
        let d = catalog_entry("SL2-split").unwrap();
        let xl = xlattice(&d).unwrap();
        assert_eq!((xl.free_rank, xl.torsion.clone()), (0, vec![2]));
        assert!(ylattice_fixed(&d).is_empty());
        assert!(!xl.is_zero_class(&[1]));
        assert!(xl.is_zero_class(&[2]));
    }

    #[test]
    fn summaries() {
        let r = xlattice_report(&catalog_entry("SL2-split").unwrap()).unwrap();
        assert_eq!(r.summary(), "X_ι ≅ ℤ/2, Y^ι = 0, pairing not perfect");
        let r = xlattice_report(&catalog_entry("A2-quasi-split").unwrap()).unwrap();
        assert!(r.summary().starts_with("X_ι ≅ ℤ,"), "{}", r.summary());
        let r = xlattice_report(&catalog_entry("SL2-compact").unwrap()).unwrap();
        assert!(r.summary().starts_with("X_ι = X,"), "{}", r.summary());
        assert!(r.perfect);
    }

    #[test]
    fn trivial_theta_gives_x() {
        let xl = lattice_of(&IntMatrix::identity(3)).unwrap();
        assert_eq!((xl.free_rank, xl.torsion.len()), (3, 0));
    }

    #[test]
    fn odd_torsion_is_refused() {
        // not an involution, but exercises the guard
        let m = IntMatrix::from(vec![vec![-2]]);
        assert_eq!(lattice_of(&m).unwrap_err(), SatakeError::OddTorsion(vec![3]));
    }

    #[test]
    fn a2_quasi_split() {
        let d = catalog_entry("A2-quasi-split").unwrap();
        let xl = xlattice(&d).unwrap();
        assert_eq!((xl.free_rank, xl.torsion.len()), (1, 0));
        let y = ylattice_fixed(&d);
        assert_eq!(y.len(), 1);
        // theta(alpha_1^vee) = -alpha_2^vee, so the fixed line is alpha_1^vee - alpha_2^vee
        let mu = if y[0][0] < 0 { vec![-y[0][0], -y[0][1]] } else { y[0].clone() };
        assert_eq!(mu, vec![1, -1]);
        assert_eq!(ipairing(&d, &mu, &[1, 0]).unwrap(), 1);
        assert!(ipairing(&d, &[1, 0], &[1, 0]).is_err());
    }
}
