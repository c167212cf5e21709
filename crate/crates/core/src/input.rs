//! The JSON input format for ι-root data and its validation pipeline.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::iqg::{validate_params, IParameters};
use crate::linalg::IntMatrix;
use crate::rootdata::{all_hold, AxiomCheck, CartanDatum, RootDataError, RootDatum};
use crate::satake::{build_theta, validate_satake, xlattice, IRootDatum, SatakeDiagram, SatakeError};

#[derive(Debug, Error)]
pub enum InputError {
    #[error("invalid JSON at line {line}, column {column}: {msg}")]
    Parse { line: usize, column: usize, msg: String },
    #[error("malformed input: {0}")]
    Shape(String),
}

impl From<RootDataError> for InputError {
    fn from(e: RootDataError) -> Self {
        InputError::Shape(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CartanJson {
    pub nodes: Vec<i64>,
    pub form: Vec<Vec<i64>>,
}

/// A parameter: either a bare sign or `{"sign": s, "exponent": e}` for `s q^e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VarsigmaJson {
    Sign(i64),
    Full { sign: i64, exponent: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputFile {
    pub cartan: CartanJson,
    #[serde(rename = "rankX")]
    pub rank_x: usize,
    pub roots: Vec<Vec<i64>>,
    pub coroots: Vec<Vec<i64>>,
    pub pairing: Vec<Vec<i64>>,
    pub black: Vec<i64>,
    pub tau: Vec<i64>,
    #[serde(rename = "thetaX", default, skip_serializing_if = "Option::is_none")]
    pub theta_x: Option<Vec<Vec<i64>>>,
    /// Keyed by node label.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub varsigma: Option<BTreeMap<String, VarsigmaJson>>,
}

fn matrix(name: &str, rows: &[Vec<i64>]) -> Result<IntMatrix, InputError> {
    if let Some(r) = rows.iter().find(|r| r.len() != rows[0].len()) {
        return Err(InputError::Shape(format!(
            "{name} has rows of lengths {} and {}",
            rows[0].len(),
            r.len()
        )));
    }
    Ok(IntMatrix::from(rows.to_vec()))
}

/// Everything the validators said, in order, and the entry if it survived.
#[derive(Debug, Clone)]
pub struct Validation {
    pub checks: Vec<(String, AxiomCheck)>,
    pub entry: Option<IRootDatum>,
    pub params: Option<IParameters>,
}

impl Validation {
    pub fn holds(&self) -> bool {
        self.entry.is_some() && self.checks.iter().all(|(_, c)| c.holds)
    }

    fn push(&mut self, stage: &str, checks: Vec<AxiomCheck>) -> bool {
        let ok = all_hold(&checks);
        self.checks.extend(checks.into_iter().map(|c| (stage.to_string(), c)));
        ok
    }
}

pub fn parse(text: &str) -> Result<InputFile, InputError> {
    serde_json::from_str(text).map_err(|e| InputError::Parse {
        line: e.line(),
        column: e.column(),
        msg: e.to_string(),
    })
}

impl InputFile {
    /// Runs the validators stage by stage, stopping at the first stage that fails.
    pub fn validate(&self) -> Result<Validation, InputError> {
        let mut v = Validation {
            checks: Vec::new(),
            entry: None,
            params: None,
        };
        let cartan = CartanDatum::new(self.cartan.nodes.clone(), matrix("cartan.form", &self.cartan.form)?)?;
        if !v.push("cartan", cartan.validate()) {
            return Ok(v);
        }
        let pairing = matrix("pairing", &self.pairing)?;
        let datum = RootDatum::new(cartan.clone(), self.rank_x, self.roots.clone(), self.coroots.clone(), pairing)?;
        if !v.push("root datum", datum.validate()) {
            return Ok(v);
        }
        let black = self.black.iter().map(|&l| cartan.index_of(l)).collect::<Result<Vec<_>, _>>()?;
        let tau = self.tau.iter().map(|&l| cartan.index_of(l)).collect::<Result<Vec<_>, _>>()?;
        let diagram = SatakeDiagram::new(datum, black, tau).map_err(|e| InputError::Shape(e.to_string()))?;
        let sat = validate_satake(&diagram).map_err(|e| InputError::Shape(e.to_string()))?;
        if !v.push("satake", sat) {
            return Ok(v);
        }
        let supplied = self.theta_x.as_deref().map(|t| matrix("thetaX", t)).transpose()?;
        let d = match build_theta(diagram, supplied) {
            Ok(d) => d,
            Err(SatakeError::Theta(checks)) => {
                v.push("theta", checks);
                return Ok(v);
            }
            Err(e) => return Err(InputError::Shape(e.to_string())),
        };
        v.push("theta", vec![AxiomCheck::pass("thetaX satisfies the iota-root datum identities")]);
        let torsion = match xlattice(&d) {
            Ok(_) => AxiomCheck::pass("X_iota has no odd torsion"),
            Err(SatakeError::OddTorsion(t)) => AxiomCheck::fail("X_iota has no odd torsion", format!("torsion orders {t:?}")),
            Err(e) => return Err(InputError::Shape(e.to_string())),
        };
        if !v.push("lattice", vec![torsion]) {
            return Ok(v);
        }
        let params = self.parameters(&d)?;
        v.push("parameters", validate_params(&d, &params));
        v.entry = Some(d);
        v.params = Some(params);
        Ok(v)
    }

    /// The supplied parameters on top of the defaults.
    pub fn parameters(&self, d: &IRootDatum) -> Result<IParameters, InputError> {
        let mut p = IParameters::default_for(d);
        let cartan = d.datum().cartan();
        for (key, val) in self.varsigma.iter().flatten() {
            let label: i64 = key
                .parse()
                .map_err(|_| InputError::Shape(format!("varsigma key `{key}` is not a node label")))?;
            let i = cartan.index_of(label)?;
            let pair = match *val {
                VarsigmaJson::Sign(s) => (s, 0),
                VarsigmaJson::Full { sign, exponent } => (sign, exponent),
            };
            p.varsigma.insert(i, pair);
        }
        Ok(p)
    }
}

/// The input file describing `d` (and `p`, when given).
pub fn export(d: &IRootDatum, p: Option<&IParameters>) -> InputFile {
    let datum = d.datum();
    let cartan = datum.cartan();
    let lab = |i: usize| cartan.label(i);
    InputFile {
        cartan: CartanJson {
            nodes: cartan.labels().to_vec(),
            form: cartan.form().to_rows(),
        },
        rank_x: datum.rank_x(),
        roots: datum.roots().to_vec(),
        coroots: datum.coroots().to_vec(),
        pairing: datum.pairing().to_rows(),
        black: d.diagram().black().iter().map(|&i| lab(i)).collect(),
        tau: d.diagram().tau_map().iter().map(|&i| lab(i)).collect(),
        theta_x: Some(d.theta_x().to_rows()),
        varsigma: p.map(|p| {
            p.varsigma
                .iter()
                .map(|(&i, &(sign, exponent))| {
                    let v = if exponent == 0 {
                        VarsigmaJson::Sign(sign)
                    } else {
                        VarsigmaJson::Full { sign, exponent }
                    };
                    (lab(i).to_string(), v)
                })
                .collect()
        }),
    }
}
