//! ι-quantum group generators `B_i`, their parameters, and the ι-grading check.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::exactq::{RatFunc, Scalar};
use crate::rootdata::{AxiomCheck, RootDatum};
use crate::satake::{lattice_of, ylattice_fixed, IRootDatum, SatakeError};
use crate::uq::{act, braid_tw, AlgebraElement, UqError, WeightModule};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IqgError {
    #[error("node {0} is black")]
    BlackNode(i64),
    #[error("node {0} has no parameter")]
    MissingParameter(i64),
    #[error(transparent)]
    Satake(#[from] SatakeError),
    #[error(transparent)]
    Uq(#[from] UqError),
}

/// `varsigma_i = sign * q^exponent` for each white node, keyed by node index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IParameters {
    pub varsigma: BTreeMap<usize, (i64, i64)>,
}

impl IParameters {
    /// Sign `+1`, exponent `0` on the smaller node of each `tau`-orbit; the
    /// partner gets the sign forced by `sbar_i sbar_{tau i} = (-1)^{<2rho_black^vee, alpha_i>}`.
    pub fn default_for(d: &IRootDatum) -> Self {
        let tau = d.diagram().tau_map();
        let mut varsigma: BTreeMap<usize, (i64, i64)> = BTreeMap::new();
        for i in d.diagram().white() {
            let sign = if tau[i] >= i { 1 } else { black_parity(d, i) * varsigma[&tau[i]].0 };
            varsigma.insert(i, (sign, 0));
        }
        IParameters { varsigma }
    }

    /// Same exponents, signs replaced node by node.
    pub fn with_signs(&self, signs: &BTreeMap<usize, i64>) -> Self {
        let mut out = self.clone();
        for (i, s) in signs {
            if let Some(v) = out.varsigma.get_mut(i) {
                v.0 = *s;
            }
        }
        out
    }

    /// `sbar_i`, the image of `varsigma_i` at `q = 1`.
    pub fn sbar(&self, i: usize) -> i64 {
        self.varsigma.get(&i).map_or(1, |v| v.0)
    }

    pub fn varsigma_q(&self, i: usize) -> RatFunc {
        let (s, e) = self.varsigma.get(&i).copied().unwrap_or((1, 0));
        RatFunc::q_pow(e).scale_int(&s.into())
    }
}

/// `(-1)^{<2rho_black^vee, alpha_i>}`.
pub fn black_parity(d: &IRootDatum, i: usize) -> i64 {
    let v = d.datum().pair(d.two_rho_black(), d.datum().root(i));
    if v.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// The parameter constraints, one check per constraint family.
pub fn validate_params(d: &IRootDatum, p: &IParameters) -> Vec<AxiomCheck> {
    let datum = d.datum();
    let lab = |i: usize| datum.cartan().label(i);
    let tau = d.diagram().tau_map();
    let white = d.diagram().white();
    let mut out = Vec::new();

    let keys: Vec<usize> = p.varsigma.keys().copied().collect();
    let bad_sign = p.varsigma.iter().find(|(_, v)| v.0 != 1 && v.0 != -1);
    out.push(AxiomCheck::from_witness(
        "parameters given exactly on white nodes with signs +-1",
        if keys != white {
            Some(format!(
                "parameter nodes {:?}, white nodes {:?}",
                keys.iter().map(|&i| lab(i)).collect::<Vec<_>>(),
                white.iter().map(|&i| lab(i)).collect::<Vec<_>>()
            ))
        } else {
            bad_sign.map(|(i, v)| format!("node {} has sign {}", lab(*i), v.0))
        },
    ));

    let name = "sbar_i = sbar_{tau i} if <alpha_i^vee, theta alpha_i> = 0";
    let zero: Vec<usize> = white
        .iter()
        .copied()
        .filter(|&i| datum.coroot_pairing(i, &d.theta(datum.root(i))) == 0)
        .collect();
    if zero.is_empty() {
        out.push(AxiomCheck::vacuous(name));
    } else {
        let w = zero
            .iter()
            .find(|&&i| p.sbar(i) != p.sbar(tau[i]))
            .map(|&i| format!("node {}: sbar = {}, sbar of tau = {}", lab(i), p.sbar(i), p.sbar(tau[i])));
        out.push(AxiomCheck::from_witness(name, w));
    }

    let name = "sbar_i sbar_{tau i} = (-1)^{<2rho_black^vee, alpha_i>}";
    if white.is_empty() {
        out.push(AxiomCheck::vacuous(name));
    } else {
        let w = white.iter().find(|&&i| p.sbar(i) * p.sbar(tau[i]) != black_parity(d, i)).map(|&i| {
            format!(
                "node {}: product {} but parity {}",
                lab(i),
                p.sbar(i) * p.sbar(tau[i]),
                black_parity(d, i)
            )
        });
        out.push(AxiomCheck::from_witness(name, w));
    }
    out
}

/// `B_i = F_i + varsigma_i T_{w_black}(E_{tau i}) K_i^{-1}`.
pub fn bgen(d: &IRootDatum, p: &IParameters, i: usize) -> Result<AlgebraElement, IqgError> {
    let datum = d.datum();
    if d.diagram().is_black(i) {
        return Err(IqgError::BlackNode(datum.cartan().label(i)));
    }
    if !p.varsigma.contains_key(&i) {
        return Err(IqgError::MissingParameter(datum.cartan().label(i)));
    }
    let t = braid_tw(datum, &d.w_black().word, &AlgebraElement::e(datum, d.diagram().tau(i), 1));
    let tail = t.mul(&AlgebraElement::k_i(datum, i, -1), datum).scale(&p.varsigma_q(i));
    Ok(AlgebraElement::f(datum, i, 1).add(&tail))
}

/// One ι-generator with the weight shift it is homogeneous for in `X_ι`.
#[derive(Debug, Clone)]
pub struct IGenerator {
    pub name: String,
    pub element: AlgebraElement,
    /// A representative in `X` of its ι-degree.
    pub shift: Vec<i64>,
}

#[derive(Debug, Clone)]
pub struct IGeneratorSet {
    pub bgens: Vec<IGenerator>,
    pub kgens: Vec<IGenerator>,
    pub efgens: Vec<IGenerator>,
}

impl IGeneratorSet {
    pub fn all(&self) -> impl Iterator<Item = &IGenerator> {
        self.bgens.iter().chain(&self.kgens).chain(&self.efgens)
    }

    pub fn len(&self) -> usize {
        self.bgens.len() + self.kgens.len() + self.efgens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn scaled(datum: &RootDatum, i: usize, c: i64) -> Vec<i64> {
    datum.root(i).iter().map(|a| a * c).collect()
}

/// `B_i` (white `i`), `K_mu` (`mu` in a basis of `Y^ι`), `E_j`, `F_j` (black `j`).
pub fn igens(d: &IRootDatum, p: &IParameters) -> Result<IGeneratorSet, IqgError> {
    let datum = d.datum();
    let lab = |i: usize| datum.cartan().label(i);
    let bgens = d
        .diagram()
        .white()
        .into_iter()
        .map(|i| {
            Ok(IGenerator {
                name: format!("B{}", lab(i)),
                element: bgen(d, p, i)?,
                shift: scaled(datum, i, -1),
            })
        })
        .collect::<Result<_, IqgError>>()?;
    let kgens = ylattice_fixed(d)
        .into_iter()
        .map(|mu| IGenerator {
            name: format!("K{mu:?}"),
            element: AlgebraElement::k(datum, &mu),
            shift: vec![0; datum.rank_x()],
        })
        .collect();
    let mut efgens = Vec::new();
    for &j in d.diagram().black() {
        efgens.push(IGenerator {
            name: format!("E{}", lab(j)),
            element: AlgebraElement::e(datum, j, 1),
            shift: scaled(datum, j, 1),
        });
        efgens.push(IGenerator {
            name: format!("F{}", lab(j)),
            element: AlgebraElement::f(datum, j, 1),
            shift: scaled(datum, j, -1),
        });
    }
    Ok(IGeneratorSet { bgens, kgens, efgens })
}

/// Every ι-generator maps weight `lambda` into weights `mu` with
/// `mu - lambda = shift` in `X_ι`, on every battery module.
pub fn igrading_check<S: Scalar>(d: &IRootDatum, p: &IParameters, battery: &[WeightModule<S>]) -> Result<Vec<AxiomCheck>, IqgError> {
    let lattice = lattice_of(d.theta_x())?;
    let gens = igens(d, p)?;
    let mut out = Vec::new();
    for g in gens.all() {
        let mut witness = None;
        'modules: for m in battery {
            let a = act(&g.element, m)?;
            for (r, c, _) in a.entries() {
                let diff: Vec<i64> = m
                    .weight(r)
                    .iter()
                    .zip(m.weight(c))
                    .zip(&g.shift)
                    .map(|((x, y), s)| x - y - s)
                    .collect();
                if !lattice.is_zero_class(&diff) {
                    witness = Some(format!("on {}: weight {:?} -> {:?}", m.label(), m.weight(c), m.weight(r)));
                    break 'modules;
                }
            }
        }
        out.push(AxiomCheck::from_witness(format!("{} is homogeneous in X_iota", g.name), witness));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::Rat;
    use crate::linalg::IntMatrix;
    use crate::rootdata::all_hold;
    use crate::satake::{catalog, catalog_entry};
    use crate::uq::default_battery;

    #[test]
    fn sl2_split_both_signs_pass() {
        let d = catalog_entry("SL2-split").unwrap();
        let p = IParameters::default_for(&d);
        assert!(all_hold(&validate_params(&d, &p)));
        let m = p.with_signs(&BTreeMap::from([(0, -1)]));
        assert!(all_hold(&validate_params(&d, &m)));
    }

    #[test]
    fn defaults_validate_everywhere() {
        for (name, d) in catalog() {
            assert!(all_hold(&validate_params(&d, &IParameters::default_for(&d))), "{name}");
        }
    }

    #[test]
    fn swap_entry_rejects_unequal_signs() {
        let d = catalog_entry("SL2xSL2-swap").unwrap();
        let p = IParameters::default_for(&d).with_signs(&BTreeMap::from([(1, -1)]));
        let c = validate_params(&d, &p);
        assert!(!c[1].holds && !c[1].vacuous);
        let q = catalog_entry("A2-quasi-split").unwrap();
        assert!(validate_params(&q, &IParameters::default_for(&q))[1].vacuous);
    }

    #[test]
    fn bgen_shapes() {
        let d = catalog_entry("SL2-split").unwrap();
        let dat = d.datum();
        let b = bgen(&d, &IParameters::default_for(&d), 0).unwrap();
        let e = AlgebraElement::e(dat, 0, 1).mul(&AlgebraElement::k_i(dat, 0, -1), dat);
        assert_eq!(b, AlgebraElement::f(dat, 0, 1).add(&e));

        let q = catalog_entry("A2-quasi-split").unwrap();
        let dq = q.datum();
        let b1 = bgen(&q, &IParameters::default_for(&q), 0).unwrap();
        let e2 = AlgebraElement::e(dq, 1, 1).mul(&AlgebraElement::k_i(dq, 0, -1), dq);
        assert_eq!(b1, AlgebraElement::f(dq, 0, 1).add(&e2));

        let c = catalog_entry("C2-CII").unwrap();
        assert_eq!(bgen(&c, &IParameters::default_for(&c), 0), Err(IqgError::BlackNode(1)));
    }

    #[test]
    fn generator_counts() {
        let d = catalog_entry("SL2-split").unwrap();
        assert_eq!(igens(&d, &IParameters::default_for(&d)).unwrap().len(), 1);
        let q = catalog_entry("A2-quasi-split").unwrap();
        let g = igens(&q, &IParameters::default_for(&q)).unwrap();
        assert_eq!((g.bgens.len(), g.kgens.len(), g.efgens.len()), (2, 1, 0));
        let c = catalog_entry("C2-CII").unwrap();
        let g = igens(&c, &IParameters::default_for(&c)).unwrap();
        let names: Vec<_> = g.efgens.iter().map(|x| x.name.as_str()).collect();
        assert_eq!(names, vec!["E1", "F1"]);
    }

    #[test]
    fn grading_holds_and_wrong_theta_breaks_it() {
        let d = catalog_entry("SL2-split").unwrap();
        let p = IParameters::default_for(&d);
        let b = default_battery::<Rat>(d.datum(), 2).unwrap().modules;
        assert!(all_hold(&igrading_check(&d, &p, &b).unwrap()));
        let wrong = d.with_unchecked_theta(IntMatrix::identity(1));
        assert!(!all_hold(&igrading_check(&wrong, &p, &b).unwrap()));
    }
}
