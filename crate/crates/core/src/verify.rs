//! Verification suites over one ι-root datum, and the JSON report they emit.

use std::fmt::Write as _;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::exactq::{Rat, RatFunc, Scalar};
use crate::iqg::{igrading_check, validate_params, IParameters, IqgError};
use crate::parallel::{map_ordered, ExecMode};
use crate::qone::{
    fixed_lie_algebra, sbar_checks, sign_table, theta_fixes_igens, theta_prime_square_check, verify_involution, window, ThetaA,
};
use crate::rootdata::{all_hold, braid_order, longest_element, reduced_words, AxiomCheck, RootDataError, DEFAULT_RANK_BOUND};
use crate::satake::IRootDatum;
use crate::uq::{
    battery_with, battery_witness, braid_t, check_serre_with, AlgebraElement, Battery, BatteryConfig, BraidCache, Rhs4, UqError,
};

pub const SCHEMA: &str = "isym-report/1";

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error(transparent)]
    Uq(#[from] UqError),
    #[error(transparent)]
    Iqg(#[from] IqgError),
    #[error(transparent)]
    RootData(#[from] RootDataError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Serre,
    Braid,
    Involution,
    Igens,
    Lie,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = ["serre", "braid", "involution", "igens", "lie", "all"];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Serre => "serre",
            Suite::Braid => "braid",
            Suite::Involution => "involution",
            Suite::Igens => "igens",
            Suite::Lie => "lie",
            Suite::All => "all",
        }
    }

    fn parts(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![Suite::Serre, Suite::Braid, Suite::Involution, Suite::Igens, Suite::Lie],
            s => vec![s],
        }
    }
}

impl FromStr for Suite {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "serre" => Suite::Serre,
            "braid" => Suite::Braid,
            "involution" => Suite::Involution,
            "igens" => Suite::Igens,
            "lie" => Suite::Lie,
            "all" => Suite::All,
            other => return Err(VerifyError::UnknownSuite(other.to_string())),
        })
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub depth: u32,
    pub seed: u64,
    /// `eps` on black nodes; `-1` is correct, `+1` is the negative control.
    pub epsilon_black: i64,
    /// Window `|<alpha_i^vee, lambda>| <= window` for the involution suite.
    pub window: i64,
    /// Random word pairs for the multiplicativity check of `theta_A`.
    pub word_pairs: usize,
    pub mode: ExecMode,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            depth: 2,
            seed: DEFAULT_SEED,
            epsilon_black: -1,
            window: 3,
            word_pairs: 100,
            mode: ExecMode::default(),
        }
    }
}

pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, Serialize)]
pub struct Section {
    pub name: String,
    pub passed: bool,
    pub checks: Vec<AxiomCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<serde_json::Value>,
}

impl Section {
    fn new(name: &str, checks: Vec<AxiomCheck>) -> Self {
        Section {
            name: name.to_string(),
            passed: all_hold(&checks),
            checks,
            data: None,
        }
    }

    fn with_data(mut self, data: impl Serialize) -> Self {
        self.data = Some(serde_json::to_value(data).expect("plain data"));
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BatteryInfo {
    /// `"q"` for generic `q`, `"q=1"` for the specialization.
    pub scalars: &'static str,
    pub depth: u32,
    pub dim_bound: usize,
    pub tensor_bound: usize,
    pub modules: Vec<String>,
    pub skipped: Vec<String>,
}

impl BatteryInfo {
    fn of<S: crate::exactq::Scalar>(scalars: &'static str, b: &Battery<S>) -> Self {
        BatteryInfo {
            scalars,
            depth: b.config.depth,
            dim_bound: b.config.dim_bound,
            tensor_bound: b.config.tensor_bound,
            modules: b.labels(),
            skipped: b.skipped.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ParamRow {
    pub node: i64,
    pub sign: i64,
    pub exponent: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub schema: &'static str,
    pub tool_version: &'static str,
    pub suite: Suite,
    pub entry: String,
    pub input_digest: String,
    pub seed: u64,
    pub window: i64,
    pub epsilon_black: i64,
    pub parameters: Vec<ParamRow>,
    pub batteries: Vec<BatteryInfo>,
    pub sections: Vec<Section>,
    pub passed: bool,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let verdict = |b: bool| if b { "PASS" } else { "FAIL" };
        let _ = writeln!(s, "verify {} on {}: {}", self.suite.name(), self.entry, verdict(self.passed));
        let _ = writeln!(s, "input sha256 {}  seed {}", self.input_digest, self.seed);
        for b in &self.batteries {
            let _ = writeln!(s, "battery ({}): depth {}, {} modules", b.scalars, b.depth, b.modules.len());
            if !b.skipped.is_empty() {
                let _ = writeln!(s, "  skipped over dim {}: {}", b.dim_bound, b.skipped.join(" "));
            }
        }
        if !self.parameters.is_empty() {
            let p: Vec<String> = self
                .parameters
                .iter()
                .map(|r| format!("{}: {} q^{}", r.node, r.sign, r.exponent))
                .collect();
            let _ = writeln!(s, "varsigma {}", p.join(", "));
        }
        if self.epsilon_black != -1 {
            let _ = writeln!(s, "negative control: eps = {} on black nodes", self.epsilon_black);
        }
        for sec in &self.sections {
            let _ = writeln!(s, "[{}] {}", verdict(sec.passed), sec.name);
            for c in &sec.checks {
                let tag = match (c.holds, c.vacuous) {
                    (true, true) => "vacuous",
                    (true, false) => "ok",
                    (false, _) => "FAIL",
                };
                let _ = write!(s, "  {tag:<7} {}", c.axiom);
                if let Some(w) = &c.witness {
                    let _ = write!(s, "\n          {w}");
                }
                s.push('\n');
            }
            if let Some(d) = &sec.data {
                let _ = writeln!(s, "  data {}", serde_json::to_string(d).expect("plain data"));
            }
        }
        s
    }
}

pub fn input_digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

struct Batteries {
    quantum: Option<Battery<RatFunc>>,
    classical: Option<Battery<Rat>>,
}

pub fn verify(
    entry: &str,
    d: &IRootDatum,
    p: &IParameters,
    digest: String,
    suite: Suite,
    cfg: &VerifyConfig,
) -> Result<VerificationReport, VerifyError> {
    let parts = suite.parts();
    let bcfg = BatteryConfig {
        mode: cfg.mode,
        ..BatteryConfig::depth(cfg.depth)
    };
    let datum = d.datum();
    let need_q = parts.iter().any(|s| matches!(s, Suite::Serre | Suite::Braid));
    let need_one = parts.iter().any(|s| !matches!(s, Suite::Serre));
    let b = Batteries {
        quantum: need_q.then(|| battery_with::<RatFunc>(datum, &bcfg)).transpose()?,
        classical: need_one.then(|| battery_with::<Rat>(datum, &bcfg)).transpose()?,
    };
    let mut sections = Vec::new();
    for s in parts {
        sections.extend(match s {
            Suite::Serre => serre_suite(d, &b, cfg)?,
            Suite::Braid => braid_suite(d, &b, cfg.mode)?,
            Suite::Involution => involution_suite(d, p, &b, cfg)?,
            Suite::Igens => igens_suite(d, p, &b, cfg)?,
            Suite::Lie => lie_suite(d, p, &b, cfg)?,
            Suite::All => unreachable!("expanded"),
        });
    }
    let mut batteries = Vec::new();
    if let Some(q) = &b.quantum {
        batteries.push(BatteryInfo::of("q", q));
    }
    if let Some(c) = &b.classical {
        batteries.push(BatteryInfo::of("q=1", c));
    }
    let lab = |i: usize| datum.cartan().label(i);
    Ok(VerificationReport {
        schema: SCHEMA,
        tool_version: env!("CARGO_PKG_VERSION"),
        suite,
        entry: entry.to_string(),
        input_digest: digest,
        seed: cfg.seed,
        window: cfg.window,
        epsilon_black: cfg.epsilon_black,
        parameters: p
            .varsigma
            .iter()
            .map(|(&i, &(sign, exponent))| ParamRow {
                node: lab(i),
                sign,
                exponent,
            })
            .collect(),
        batteries,
        passed: sections.iter().all(|s| s.passed),
        sections,
    })
}

fn serre_suite(d: &IRootDatum, b: &Batteries, cfg: &VerifyConfig) -> Result<Vec<Section>, VerifyError> {
    let q = b.quantum.as_ref().expect("quantum battery");
    let checks = check_serre_with(d.datum(), &q.modules, Rhs4::Standard, cfg.mode);
    Ok(vec![Section::new("quantum group relations", checks)])
}

fn braid_suite(d: &IRootDatum, b: &Batteries, mode: ExecMode) -> Result<Vec<Section>, VerifyError> {
    let q = &b.quantum.as_ref().expect("quantum battery").modules;
    let one = &b.classical.as_ref().expect("classical battery").modules;
    let datum = d.datum();
    let r = datum.rank();
    let lab = |i: usize| datum.cartan().label(i);
    let gens: Vec<AlgebraElement> = (0..r)
        .flat_map(|k| [AlgebraElement::e(datum, k, 1), AlgebraElement::f(datum, k, 1)])
        .collect();

    let mut structural = None;
    for i in 0..r {
        let lhs = braid_t(datum, i, &AlgebraElement::e(datum, i, 1));
        let rhs = AlgebraElement::f(datum, i, 1).mul(&AlgebraElement::k_i(datum, i, 1), datum).neg();
        if lhs != rhs && structural.is_none() {
            structural = Some(format!("node {}: T(E) = {}", lab(i), lhs.render(datum.cartan())));
        }
    }

    let mut pairs = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            let m = braid_order(datum, i, j);
            let w1: Vec<usize> = (0..m).map(|k| if k % 2 == 0 { i } else { j }).collect();
            let w2: Vec<usize> = (0..m).map(|k| if k % 2 == 0 { j } else { i }).collect();
            pairs.push((format!("nodes {}, {}", lab(i), lab(j)), w1, w2));
        }
    }
    let all: Vec<usize> = (0..r).collect();
    let w0 = longest_element(datum, &all, DEFAULT_RANK_BOUND)?;
    let words = reduced_words(datum, &all, &w0, DEFAULT_RANK_BOUND)?;

    let per_module = map_ordered(mode, q, |m| -> Result<(Option<String>, Option<String>), UqError> {
        let mut cache = BraidCache::new(datum, m);
        let mut braid = None;
        'pairs: for (name, w1, w2) in &pairs {
            for u in &gens {
                if let Some(x) = braid_witness(&mut cache, w1, w2, u)? {
                    braid = Some(format!("{name} on {}: {x}", u.render(datum.cartan())));
                    break 'pairs;
                }
            }
        }
        let mut indep = None;
        'gens: for u in &gens {
            for w in &words[1..] {
                if let Some(x) = braid_witness(&mut cache, w, &words[0], u)? {
                    indep = Some(format!("words {:?} and {w:?} on {}: {x}", words[0], u.render(datum.cartan())));
                    break 'gens;
                }
            }
        }
        Ok((braid, indep))
    });
    let (mut braid, mut indep) = (None, None);
    for res in per_module {
        let (b, i) = res?;
        braid = braid.or(b);
        indep = indep.or(i);
    }

    let mut checks = vec![
        AxiomCheck::from_witness("T_i(E_i) = -F_i K_i", structural),
        AxiomCheck::from_witness("braid relations on E_k, F_k", braid),
        AxiomCheck::from_witness(format!("T_w0 independent of the reduced word ({} words)", words.len()), indep),
    ];
    let quantum = Section::new("braid group action", std::mem::take(&mut checks));
    let mut classical = sbar_checks(datum, one)?;
    classical.push(theta_prime_square_check(d, one)?);
    Ok(vec![quantum, Section::new("braid action at q = 1", classical)])
}

fn braid_witness<S: Scalar>(
    cache: &mut BraidCache<'_, S>,
    w1: &[usize],
    w2: &[usize],
    u: &AlgebraElement,
) -> Result<Option<String>, UqError> {
    let diff = cache.eval(w1, u)?.sub(&cache.eval(w2, u)?);
    Ok(diff
        .first_nonzero()
        .map(|(r, c, v)| format!("on {}: entry ({r},{c}) of the difference is {v}", cache.module().label())))
}

fn random_word(rng: &mut ChaCha8Rng, d: &IRootDatum) -> AlgebraElement {
    let datum = d.datum();
    let len = rng.gen_range(1..=3);
    let letters: Vec<AlgebraElement> = (0..len)
        .map(|_| {
            let i = rng.gen_range(0..datum.rank());
            match rng.gen_range(0..3) {
                0 => AlgebraElement::e(datum, i, rng.gen_range(1..=2)),
                1 => AlgebraElement::f(datum, i, rng.gen_range(1..=2)),
                _ => AlgebraElement::k_i(datum, i, if rng.gen_bool(0.5) { 1 } else { -1 }),
            }
        })
        .collect();
    AlgebraElement::product(datum, &letters)
}

fn involution_suite(d: &IRootDatum, p: &IParameters, b: &Batteries, cfg: &VerifyConfig) -> Result<Vec<Section>, VerifyError> {
    let one = &b.classical.as_ref().expect("classical battery").modules;
    let theta = ThetaA::with_black_eps(d, p, cfg.epsilon_black);
    let w = window(d.datum(), cfg.window);
    let checks = verify_involution(&theta, p, &w, one, cfg.mode)?;
    let inv = Section::new("theta_A^2 = id at q = 1", checks).with_data(serde_json::json!({
        "window": cfg.window,
        "window_weights": w.len(),
        "sign_table": sign_table(d, p),
    }));

    let datum = d.datum();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut bad = None;
    for k in 0..cfg.word_pairs {
        let (x, y) = (random_word(&mut rng, d), random_word(&mut rng, d));
        let lhs = theta.apply(&x.mul(&y, datum));
        let rhs = theta.apply(&x).mul(&theta.apply(&y), datum);
        if let Some(w) = battery_witness(&lhs, &rhs, one)? {
            bad = Some(format!("pair {k}: {w}"));
            break;
        }
    }
    let hom = Section::new(
        "theta_A is an algebra map at q = 1",
        vec![AxiomCheck::from_witness(
            format!("theta_A(xy) = theta_A(x) theta_A(y) on {} random word pairs", cfg.word_pairs),
            bad,
        )],
    );
    Ok(vec![inv, hom])
}

fn igens_suite(d: &IRootDatum, p: &IParameters, b: &Batteries, cfg: &VerifyConfig) -> Result<Vec<Section>, VerifyError> {
    let one = &b.classical.as_ref().expect("classical battery").modules;
    let theta = ThetaA::with_black_eps(d, p, cfg.epsilon_black);
    Ok(vec![
        Section::new("parameters", validate_params(d, p)),
        Section::new("iota-grading", igrading_check(d, p, one)?),
        Section::new("theta_A fixes the iota-generators at q = 1", theta_fixes_igens(&theta, p, one)?),
    ])
}

fn lie_suite(d: &IRootDatum, p: &IParameters, b: &Batteries, cfg: &VerifyConfig) -> Result<Vec<Section>, VerifyError> {
    let simples = b.classical.as_ref().expect("classical battery").simples();
    let theta = ThetaA::with_black_eps(d, p, cfg.epsilon_black);
    let r = fixed_lie_algebra(&theta, &simples)?;
    let data = serde_json::json!({
        "dim_g": r.dim_g,
        "dim_k": r.dim_k,
        "dim_fixed": r.dim_fixed,
        "dim_minus": r.dim_minus,
    });
    Ok(vec![Section::new("fixed Lie algebra", r.checks).with_data(data)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::satake::catalog_entry;

    fn run(name: &str, suite: Suite, cfg: &VerifyConfig) -> VerificationReport {
        let d = catalog_entry(name).unwrap();
        let p = IParameters::default_for(&d);
        verify(name, &d, &p, input_digest(name.as_bytes()), suite, cfg).unwrap()
    }

    #[test]
    fn suites_parse() {
        for n in Suite::NAMES {
            assert_eq!(n.parse::<Suite>().unwrap().name(), n);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn sl2_all_passes_and_is_deterministic() {
        let cfg = VerifyConfig {
            depth: 1,
            ..Default::default()
        };
        let a = run("SL2-split", Suite::All, &cfg);
        assert!(a.passed, "{}", a.to_text());
        assert_eq!(a.sections.len(), 9);
        let b = run(
            "SL2-split",
            Suite::All,
            &VerifyConfig {
                mode: ExecMode::Sequential,
                ..cfg
            },
        );
        assert_eq!(a.to_json(), b.to_json());
        assert!(a.to_text().contains("vacuous"));
    }

    #[test]
    fn control_fails_where_black_nodes_matter() {
        let cfg = VerifyConfig {
            depth: 1,
            window: 1,
            epsilon_black: 1,
            ..Default::default()
        };
        assert!(!run("A3-AIII", Suite::Involution, &cfg).passed);
    }

    #[test]
    fn digest_is_sha256() {
        assert_eq!(
            input_digest(b""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }
}
