//! Satake diagrams, ι-root data, the lattices `X_ι = X / X̆` and `Y^ι`, and a
//! small validated catalog.

mod catalog;
mod lattice;

pub use catalog::{catalog, catalog_entry, CATALOG_NAMES};
pub use lattice::{ipairing, lattice_of, pairing_matrix, xlattice, xlattice_report, ylattice_fixed, ILattice, XLatticeReport};

use thiserror::Error;

use crate::linalg::IntMatrix;
use crate::rootdata::{all_hold, longest_element, two_rho_coroot, AxiomCheck, RootDataError, RootDatum, WeylElement, DEFAULT_RANK_BOUND};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SatakeError {
    #[error(transparent)]
    RootData(#[from] RootDataError),
    #[error("malformed diagram: {0}")]
    Shape(String),
    #[error("diagram fails `{}`", .0.iter().find(|c| !c.holds).map(|c| c.axiom.as_str()).unwrap_or("?"))]
    Diagram(Vec<AxiomCheck>),
    #[error("the roots do not span X, so thetaX must be supplied")]
    ThetaRequired,
    #[error("theta fails `{}`", .0.iter().find(|c| !c.holds).map(|c| c.axiom.as_str()).unwrap_or("?"))]
    Theta(Vec<AxiomCheck>),
    #[error("X_iota has odd torsion {0:?}")]
    OddTorsion(Vec<i64>),
    #[error("coweight is not fixed by theta")]
    NotFixed,
}

/// Bipartition `I = I_black ⊔ I_white` and a diagram involution `tau`, on
/// top of a root datum. Node arguments are indices `0..rank`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatakeDiagram {
    datum: RootDatum,
    black: Vec<usize>,
    tau: Vec<usize>,
}

impl SatakeDiagram {
    pub fn new(datum: RootDatum, black: Vec<usize>, tau: Vec<usize>) -> Result<Self, SatakeError> {
        let n = datum.rank();
        if tau.len() != n {
            return Err(SatakeError::Shape(format!("tau has {} entries for {n} nodes", tau.len())));
        }
        if let Some(&bad) = tau.iter().chain(&black).find(|&&i| i >= n) {
            return Err(SatakeError::Shape(format!("node index {bad} out of range")));
        }
        let mut black = black;
        black.sort();
        black.dedup();
        Ok(SatakeDiagram { datum, black, tau })
    }

    /// Split diagram: no black nodes, `tau = id`.
    pub fn split(datum: RootDatum) -> Self {
        let n = datum.rank();
        SatakeDiagram {
            datum,
            black: Vec::new(),
            tau: (0..n).collect(),
        }
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn black(&self) -> &[usize] {
        &self.black
    }

    pub fn white(&self) -> Vec<usize> {
        (0..self.datum.rank()).filter(|i| !self.is_black(*i)).collect()
    }

    pub fn is_black(&self, i: usize) -> bool {
        self.black.binary_search(&i).is_ok()
    }

    pub fn tau(&self, i: usize) -> usize {
        self.tau[i]
    }

    pub fn tau_map(&self) -> &[usize] {
        &self.tau
    }

    pub fn w_black(&self) -> Result<WeylElement, RootDataError> {
        longest_element(&self.datum, &self.black, DEFAULT_RANK_BOUND)
    }

    pub fn two_rho_black(&self) -> Result<Vec<i64>, RootDataError> {
        two_rho_coroot(&self.datum, &self.black, DEFAULT_RANK_BOUND)
    }
}

/// A separately reportable admissibility condition beyond the two properties
/// every diagram must have.
pub trait AdmissibilityRule: Sync {
    fn name(&self) -> &str;
    fn check(&self, d: &SatakeDiagram) -> Result<AxiomCheck, SatakeError>;
}

/// For every white node `j` with `tau j = j`, `<2 rho_black^vee, alpha_j>` is even.
pub struct TwoRhoParity;

impl AdmissibilityRule for TwoRhoParity {
    fn name(&self) -> &str {
        "admissibility: <2rho_black^vee, alpha_j> even for tau-fixed white j"
    }

    fn check(&self, d: &SatakeDiagram) -> Result<AxiomCheck, SatakeError> {
        let rho = d.two_rho_black()?;
        let bad = d
            .white()
            .into_iter()
            .filter(|&j| d.tau(j) == j)
            .find(|&j| d.datum.pair(&rho, d.datum.root(j)) % 2 != 0)
            .map(|j| {
                format!(
                    "node {}: <2rho_black^vee, alpha_j> = {}",
                    d.datum.cartan().label(j),
                    d.datum.pair(&rho, d.datum.root(j))
                )
            });
        Ok(AxiomCheck::from_witness(self.name(), bad))
    }
}

pub fn default_rules() -> Vec<Box<dyn AdmissibilityRule>> {
    vec![Box::new(TwoRhoParity)]
}

/// The two stated properties plus the default admissibility rule.
pub fn validate_satake(d: &SatakeDiagram) -> Result<Vec<AxiomCheck>, SatakeError> {
    let rules = default_rules();
    let refs: Vec<&dyn AdmissibilityRule> = rules.iter().map(|r| r.as_ref()).collect();
    validate_satake_with(d, &refs)
}

pub fn validate_satake_with(d: &SatakeDiagram, rules: &[&dyn AdmissibilityRule]) -> Result<Vec<AxiomCheck>, SatakeError> {
    let n = d.datum.rank();
    let lab = |i: usize| d.datum.cartan().label(i);
    let mut out = Vec::new();
    out.push(AxiomCheck::from_witness(
        "tau is an involution",
        (0..n)
            .find(|&i| d.tau[d.tau[i]] != i)
            .map(|i| format!("tau(tau({})) = {}", lab(i), lab(d.tau[d.tau[i]]))),
    ));
    if !out[0].holds {
        return Ok(out);
    }
    let form = d.datum.cartan().form();
    let bad_form = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| form[(d.tau[i], d.tau[j])] != form[(i, j)]);
    out.push(AxiomCheck::from_witness(
        "tau preserves the bilinear form",
        bad_form.map(|(i, j)| format!("{}.{} != tau{}.tau{}", lab(i), lab(j), lab(i), lab(j))),
    ));
    out.push(AxiomCheck::from_witness(
        "tau preserves I_black and I_white",
        (0..n)
            .find(|&i| d.is_black(i) != d.is_black(d.tau[i]))
            .map(|i| format!("node {} and tau of it have different colours", lab(i))),
    ));
    let w = d.w_black()?;
    let bad_w = d.black.iter().copied().find(|&i| {
        let lhs = w.apply_x(d.datum.root(i));
        let rhs: Vec<i64> = d.datum.root(d.tau[i]).iter().map(|x| -x).collect();
        lhs != rhs
    });
    out.push(AxiomCheck::from_witness(
        "w_black(alpha_i) = -alpha_{tau i} for i in I_black",
        bad_w.map(|i| format!("fails at node {}", lab(i))),
    ));
    for r in rules {
        out.push(r.check(d)?);
    }
    Ok(out)
}

/// A Satake diagram together with the involution `theta` on `X` (and its
/// pairing-transpose on `Y`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IRootDatum {
    diagram: SatakeDiagram,
    theta_x: IntMatrix,
    theta_y: IntMatrix,
    w_black: WeylElement,
    two_rho_black: Vec<i64>,
}

impl IRootDatum {
    pub fn diagram(&self) -> &SatakeDiagram {
        &self.diagram
    }

    pub fn datum(&self) -> &RootDatum {
        &self.diagram.datum
    }

    pub fn theta_x(&self) -> &IntMatrix {
        &self.theta_x
    }

    pub fn theta_y(&self) -> &IntMatrix {
        &self.theta_y
    }

    pub fn w_black(&self) -> &WeylElement {
        &self.w_black
    }

    pub fn two_rho_black(&self) -> &[i64] {
        &self.two_rho_black
    }

    pub fn theta(&self, lambda: &[i64]) -> Vec<i64> {
        self.theta_x.apply(lambda)
    }

    /// `tau(lambda) = -w_black theta lambda`.
    pub fn tau_x_matrix(&self) -> IntMatrix {
        self.w_black.mat_x.mul(&self.theta_x).scale(-1)
    }

    pub fn tau_on_x(&self, lambda: &[i64]) -> Vec<i64> {
        self.tau_x_matrix().apply(lambda)
    }

    /// `tau` transported to `Y` through the pairing.
    pub fn tau_y_matrix(&self) -> IntMatrix {
        self.datum().dual_on_y(&self.tau_x_matrix())
    }

    /// Replaces `theta` without any checks; only for negative controls.
    pub fn with_unchecked_theta(&self, theta_x: IntMatrix) -> Self {
        let theta_y = self.datum().dual_on_y(&theta_x);
        IRootDatum {
            theta_x,
            theta_y,
            ..self.clone()
        }
    }
}

fn theta_targets(d: &SatakeDiagram, w: &WeylElement) -> Vec<Vec<i64>> {
    (0..d.datum.rank())
        .map(|i| w.apply_x(d.datum.root(d.tau[i])).into_iter().map(|x| -x).collect())
        .collect()
}

/// Checks of a candidate `theta` against the ι-root datum identities.
pub fn validate_theta(d: &SatakeDiagram, theta_x: &IntMatrix) -> Result<Vec<AxiomCheck>, SatakeError> {
    let n = d.datum.rank_x();
    if theta_x.rows() != n || theta_x.cols() != n {
        return Err(SatakeError::Shape(format!("thetaX must be {n}x{n}")));
    }
    let w = d.w_black()?;
    let targets = theta_targets(d, &w);
    let mut out = Vec::new();
    out.push(AxiomCheck::from_witness(
        "thetaX^2 = id",
        (!theta_x.mul(theta_x).is_identity()).then(|| format!("thetaX^2 = {:?}", theta_x.mul(theta_x))),
    ));
    let bad = (0..d.datum.rank()).find(|&i| theta_x.apply(d.datum.root(i)) != targets[i]);
    out.push(AxiomCheck::from_witness(
        "theta(alpha_i) = -w_black alpha_{tau i}",
        bad.map(|i| {
            format!(
                "node {}: theta(alpha) = {:?}, expected {:?}",
                d.datum.cartan().label(i),
                theta_x.apply(d.datum.root(i)),
                targets[i]
            )
        }),
    ));
    if theta_x.is_unimodular() {
        let ty = d.datum.dual_on_y(theta_x);
        out.push(AxiomCheck::from_witness(
            "thetaY is an involution",
            (!ty.mul(&ty).is_identity()).then(|| "thetaY^2 != id".to_string()),
        ));
    } else {
        out.push(AxiomCheck::fail("thetaY is an involution", "thetaX is not invertible over Z"));
    }
    Ok(out)
}

/// Builds the ι-root datum. When the simple roots span `X` rationally,
/// `theta` is forced and computed (a supplied one must agree); otherwise the
/// supplied `theta` is validated.
pub fn build_theta(d: SatakeDiagram, supplied: Option<IntMatrix>) -> Result<IRootDatum, SatakeError> {
    let checks = validate_satake(&d)?;
    if !all_hold(&checks) {
        return Err(SatakeError::Diagram(checks));
    }
    let w = d.w_black()?;
    let theta_x = match forced_theta(&d, &w)? {
        Some(Ok(t)) => t,
        Some(Err(check)) => return Err(SatakeError::Theta(vec![check])),
        None => supplied.clone().ok_or(SatakeError::ThetaRequired)?,
    };
    if let Some(s) = &supplied {
        if *s != theta_x {
            let mut checks = validate_theta(&d, s)?;
            checks.push(AxiomCheck::fail("supplied thetaX matches the forced involution", format!("{s:?}")));
            return Err(SatakeError::Theta(checks));
        }
    }
    let checks = validate_theta(&d, &theta_x)?;
    if !all_hold(&checks) {
        return Err(SatakeError::Theta(checks));
    }
    let theta_y = d.datum.dual_on_y(&theta_x);
    let two_rho_black = d.two_rho_black()?;
    Ok(IRootDatum {
        diagram: d,
        theta_x,
        theta_y,
        w_black: w,
        two_rho_black,
    })
}

fn forced_theta(d: &SatakeDiagram, w: &WeylElement) -> Result<Option<Result<IntMatrix, AxiomCheck>>, SatakeError> {
    let n = d.datum.rank_x();
    if d.datum.rank() != n {
        return Ok(None);
    }
    let a = IntMatrix::from_columns(d.datum.roots(), n);
    let Some(ainv) = a.rational_inverse() else {
        return Ok(None);
    };
    let t = IntMatrix::from_columns(&theta_targets(d, w), n);
    let mut out = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut s = num_rational::BigRational::from_integer(0.into());
            for k in 0..n {
                s += num_rational::BigRational::from_integer(t[(i, k)].into()) * &ainv[k][j];
            }
            if !s.is_integer() {
                return Ok(Some(Err(AxiomCheck::fail(
                    "theta is defined over Z",
                    format!("forced theta has entry {s} at ({i}, {j})"),
                ))));
            }
            out[(i, j)] = num_traits::ToPrimitive::to_i64(&s.to_integer()).expect("small entry");
        }
    }
    Ok(Some(Ok(out)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::CartanDatum;

    fn a2() -> RootDatum {
        RootDatum::simply_connected(CartanDatum::of_type('A', 2))
    }

    #[test]
    fn split_diagram_passes() {
        let d = SatakeDiagram::split(a2());
        assert!(all_hold(&validate_satake(&d).unwrap()));
    }

    #[test]
    fn quasi_split_a2_passes() {
        let d = SatakeDiagram::new(a2(), vec![], vec![1, 0]).unwrap();
        assert!(all_hold(&validate_satake(&d).unwrap()));
        let i = build_theta(d, None).unwrap();
        assert_eq!(i.theta(&[1, 0]), vec![0, -1]);
    }

    #[test]
    fn a2_one_black_node_fails_only_admissibility() {
        let d = SatakeDiagram::new(a2(), vec![0], vec![0, 1]).unwrap();
        let checks = validate_satake(&d).unwrap();
        let failed: Vec<_> = checks.iter().filter(|c| !c.holds).map(|c| c.axiom.clone()).collect();
        assert_eq!(failed, vec![TwoRhoParity.name().to_string()]);
        let stated = validate_satake_with(&d, &[]).unwrap();
        assert!(all_hold(&stated));
    }

    #[test]
    fn theta_identity_is_rejected_when_white_nodes_exist() {
        let d = SatakeDiagram::split(a2());
        let checks = validate_theta(&d, &IntMatrix::identity(2)).unwrap();
        assert!(!all_hold(&checks));
        assert!(matches!(build_theta(d, Some(IntMatrix::identity(2))), Err(SatakeError::Theta(_))));
    }

    #[test]
    fn sl2_split_theta_is_minus_one() {
        let d = SatakeDiagram::split(RootDatum::simply_connected(CartanDatum::of_type('A', 1)));
        let i = build_theta(d, None).unwrap();
        assert_eq!(i.theta_x().to_rows(), vec![vec![-1]]);
        assert!(i.tau_x_matrix().is_identity());
    }
}
