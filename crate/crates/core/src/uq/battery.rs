use crate::exactq::Scalar;
use crate::parallel::{map_ordered, ExecMode};
use crate::rootdata::RootDatum;

use super::{build_simple, simple_label, UqError, WeightModule};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BatteryConfig {
    /// Largest `<alpha_i^vee, lambda>` among the simple modules.
    pub depth: u32,
    /// Cap on the dimension of a simple module.
    pub dim_bound: usize,
    /// Cap on the dimension of a tensor module.
    pub tensor_bound: usize,
    pub mode: ExecMode,
}

impl BatteryConfig {
    pub fn depth(depth: u32) -> Self {
        BatteryConfig { depth, ..Self::default() }
    }
}

impl Default for BatteryConfig {
    fn default() -> Self {
        BatteryConfig {
            depth: 2,
            dim_bound: 200,
            tensor_bound: 200,
            mode: ExecMode::default(),
        }
    }
}

/// Dominant weights with all `<alpha_i^vee, lambda>` in `0..=depth` that exist in `X`.
pub fn dominant_grid(datum: &RootDatum, depth: u32) -> Vec<Vec<i64>> {
    let r = datum.rank();
    let mut out = Vec::new();
    let mut c = vec![0i64; r];
    loop {
        if let Some((lam, _)) = datum.solve_pairings(&c) {
            out.push(lam);
        }
        let Some(pos) = (0..r).rev().find(|&j| c[j] < depth as i64) else {
            break;
        };
        c[pos] += 1;
        for v in c.iter_mut().skip(pos + 1) {
            *v = 0;
        }
    }
    out
}

/// Modules used to decide equalities, with the simple modules that were
/// left out for exceeding the dimension bound.
#[derive(Debug, Clone)]
pub struct Battery<S> {
    pub modules: Vec<WeightModule<S>>,
    pub skipped: Vec<String>,
    pub config: BatteryConfig,
}

impl<S: Scalar> Battery<S> {
    /// Only the simple modules.
    pub fn simples(&self) -> Vec<WeightModule<S>> {
        self.modules.iter().filter(|m| m.label().starts_with("L(")).cloned().collect()
    }

    pub fn labels(&self) -> Vec<String> {
        self.modules.iter().map(|m| m.label().to_string()).collect()
    }

    pub fn describe(&self) -> String {
        let mut s = format!(
            "depth {}, {} modules (dim <= {}, tensors <= {})",
            self.config.depth,
            self.modules.len(),
            self.config.dim_bound,
            self.config.tensor_bound
        );
        if !self.skipped.is_empty() {
            s.push_str(&format!(", skipped {}", self.skipped.join(" ")));
        }
        s
    }
}

/// All `L(lambda)` on the depth grid within the dimension bound, then every
/// `^omega L(lambda) (x) L(mu)` within the tensor bound.
pub fn battery_with<S: Scalar>(datum: &RootDatum, cfg: &BatteryConfig) -> Result<Battery<S>, UqError> {
    let grid = dominant_grid(datum, cfg.depth);
    let mut simples = Vec::new();
    let mut skipped = Vec::new();
    for (lam, m) in grid
        .iter()
        .zip(map_ordered(cfg.mode, &grid, |lam| build_simple::<S>(datum, lam, cfg.dim_bound)))
    {
        match m {
            Ok(m) => simples.push(m),
            Err(UqError::DimensionBound { .. }) => skipped.push(simple_label(datum, lam)),
            Err(e) => return Err(e),
        }
    }
    let mut pairs = Vec::new();
    for a in 0..simples.len() {
        for b in 0..simples.len() {
            if simples[a].dim() * simples[b].dim() <= cfg.tensor_bound {
                pairs.push((a, b));
            }
        }
    }
    let tensors = map_ordered(cfg.mode, &pairs, |&(a, b)| simples[a].twist_omega().tensor(&simples[b]))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    let mut modules = simples;
    modules.extend(tensors);
    Ok(Battery {
        modules,
        skipped,
        config: *cfg,
    })
}

pub fn default_battery<S: Scalar>(datum: &RootDatum, depth: u32) -> Result<Battery<S>, UqError> {
    battery_with(datum, &BatteryConfig::depth(depth))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::Rat;
    use crate::rootdata::CartanDatum;

    fn labels(d: &RootDatum, depth: u32) -> Vec<String> {
        default_battery::<Rat>(d, depth).unwrap().labels()
    }

    #[test]
    fn depth_zero_is_trivial_and_its_square() {
        let d = RootDatum::simply_connected(CartanDatum::of_type('A', 2));
        assert_eq!(labels(&d, 0), vec!["L(0,0)", "^wL(0,0) (x) L(0,0)"]);
    }

    #[test]
    fn sl2_depth_two() {
        let d = RootDatum::simply_connected(CartanDatum::of_type('A', 1));
        let b = default_battery::<Rat>(&d, 2).unwrap();
        let s: Vec<String> = b.simples().iter().map(|m| m.label().to_string()).collect();
        assert_eq!(s, vec!["L(0)", "L(1)", "L(2)"]);
        assert_eq!(b.modules.len(), 3 + 9);
    }

    #[test]
    fn a2_depth_one_grid() {
        let d = RootDatum::simply_connected(CartanDatum::of_type('A', 2));
        let b = default_battery::<Rat>(&d, 1).unwrap();
        let s: Vec<String> = b.simples().iter().map(|m| m.label().to_string()).collect();
        assert_eq!(s, vec!["L(0,0)", "L(0,1)", "L(1,0)", "L(1,1)"]);
    }

    #[test]
    fn oversize_simples_are_skipped() {
        let d = RootDatum::simply_connected(CartanDatum::of_type('A', 2));
        let cfg = BatteryConfig {
            dim_bound: 10,
            tensor_bound: 10,
            ..BatteryConfig::depth(2)
        };
        let b = battery_with::<Rat>(&d, &cfg).unwrap();
        assert!(b.skipped.contains(&"L(2,2)".to_string()));
        assert!(b.modules.iter().all(|m| m.dim() <= 10));
    }
}
