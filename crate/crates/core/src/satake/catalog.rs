use crate::linalg::IntMatrix;
use crate::rootdata::{CartanDatum, RootDatum};

use super::{build_theta, IRootDatum, SatakeDiagram};

pub const CATALOG_NAMES: &[&str] = &[
    "SL2-split",
    "PGL2-split",
    "SL2xSL2-swap",
    "A2-split",
    "A2-quasi-split",
    "C2-split",
    "C2-CII",
    "B2-split",
    "SL2-compact",
    "A3-AIII",
];

fn a1xa1() -> CartanDatum {
    CartanDatum::new(vec![1, 2], IntMatrix::from(vec![vec![2, 0], vec![0, 2]])).expect("well-shaped")
}

fn diagram(name: &str) -> Option<SatakeDiagram> {
    let sc = |k, n| RootDatum::simply_connected(CartanDatum::of_type(k, n));
    let d = match name {
        "SL2-split" => SatakeDiagram::split(sc('A', 1)),
        "PGL2-split" => SatakeDiagram::split(RootDatum::adjoint(CartanDatum::of_type('A', 1))),
        "SL2xSL2-swap" => SatakeDiagram::new(RootDatum::simply_connected(a1xa1()), vec![], vec![1, 0]).ok()?,
        "A2-split" => SatakeDiagram::split(sc('A', 2)),
        "A2-quasi-split" => SatakeDiagram::new(sc('A', 2), vec![], vec![1, 0]).ok()?,
        "C2-split" => SatakeDiagram::split(sc('C', 2)),
        "C2-CII" => SatakeDiagram::new(sc('C', 2), vec![0], vec![0, 1]).ok()?,
        "B2-split" => SatakeDiagram::split(RootDatum::adjoint(CartanDatum::of_type('B', 2))),
        "SL2-compact" => SatakeDiagram::new(sc('A', 1), vec![0], vec![0]).ok()?,
        "A3-AIII" => SatakeDiagram::new(sc('A', 3), vec![1], vec![2, 1, 0]).ok()?,
        _ => return None,
    };
    Some(d)
}

/// Builds one named entry; `None` for an unknown name.
pub fn catalog_entry(name: &str) -> Option<IRootDatum> {
    let d = diagram(name)?;
    Some(build_theta(d, None).unwrap_or_else(|e| panic!("catalog entry {name} is invalid: {e}")))
}

/// All catalog entries, in a fixed order.
pub fn catalog() -> Vec<(&'static str, IRootDatum)> {
    CATALOG_NAMES.iter().map(|&n| (n, catalog_entry(n).expect("listed name"))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::all_hold;
    use crate::satake::{validate_satake, xlattice};

    #[test]
    fn every_entry_validates() {
        for (name, d) in catalog() {
            assert!(d.datum().is_valid(), "{name}");
            assert!(all_hold(&validate_satake(d.diagram()).unwrap()), "{name}");
            assert!(xlattice(&d).is_ok(), "{name}");
        }
    }

    #[test]
    fn coverage_and_unique_names() {
        let c = catalog();
        assert!(c.iter().any(|(_, d)| !d.diagram().black().is_empty()));
        assert!(c.iter().any(|(_, d)| (0..d.datum().rank()).any(|i| d.diagram().tau(i) != i)));
        let mut names: Vec<_> = c.iter().map(|(n, _)| *n).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), c.len());
    }

    #[test]
    fn compact_entry_has_trivial_theta() {
        let d = catalog_entry("SL2-compact").unwrap();
        assert!(d.theta_x().is_identity());
    }
}
