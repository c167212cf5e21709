//! Quantum groups `U_q` and their idempotented form, acting on explicit
//! finite-dimensional weight modules.

mod act;
mod battery;
mod element;
mod maps;
mod module;
mod relations;
mod simple;

pub use act::{act, act_braid, battery_witness, eq_mod_battery, generate_submodule, BraidCache};
pub use battery::{battery_with, default_battery, dominant_grid, Battery, BatteryConfig};
pub use element::{AlgebraElement, Letter, Tail, Word};
pub use maps::{braid_t, braid_tw, omega, pbw_vectors, tau_tilde, xi_grading};
pub use module::WeightModule;
pub use relations::{check_serre, check_serre_with, Rhs4};
pub use simple::{build_simple, simple_label};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum UqError {
    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),
    #[error("module dimension exceeds the bound {bound}")]
    DimensionBound { bound: usize },
    #[error("coefficient has a pole at q = 1")]
    PoleAtOne,
    #[error("operator is not nilpotent")]
    NotNilpotent,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("test battery is empty")]
    EmptyBattery,
}
