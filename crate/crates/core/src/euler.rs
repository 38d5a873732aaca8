//! Euler numbers of `ᵇTM` and `TM` from the associated graph.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::BGraph;
use crate::obstruction::{two_color, Coloring, ColoringError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EulerError {
    #[error("coloring is not proper: {0}")]
    ImproperColoring(#[from] ColoringError),
    #[error("the colored Euler sum is only defined in even dimension, got {0}")]
    OddDimension(u32),
    #[error("classical Euler number from regions requires a surface, got dimension {0}")]
    UnsupportedDimension(u32),
    #[error("graph is not two-colorable, so ᵇTM is not orientable and has no Euler class")]
    NotColorable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerReport {
    pub b_euler: i64,
    pub classical_euler: i64,
    pub coloring_used: Coloring,
    pub note: String,
}

/// `χ(ᵇTM) = Σ c(U) χ(U)` over the regions of `g`.
pub fn b_euler_number(g: &BGraph, c: &Coloring) -> Result<i64, EulerError> {
    if g.ambient_dim % 2 == 1 {
        return Err(EulerError::OddDimension(g.ambient_dim));
    }
    c.check_proper(g)?;
    Ok(g.regions
        .iter()
        .map(|r| c.0[&r.label].value() * r.euler_char)
        .sum())
}

/// `χ(M)` as the plain sum of region Euler characteristics. Valid for surfaces,
/// where every component of `Z` is a circle.
pub fn classical_euler_number(g: &BGraph) -> Result<i64, EulerError> {
    if g.ambient_dim != 2 {
        return Err(EulerError::UnsupportedDimension(g.ambient_dim));
    }
    Ok(g.total_region_euler())
}

pub fn euler_report(g: &BGraph) -> Result<EulerReport, EulerError> {
    if g.ambient_dim % 2 == 1 {
        return Err(EulerError::OddDimension(g.ambient_dim));
    }
    let coloring = two_color(g).ok_or(EulerError::NotColorable)?;
    Ok(EulerReport {
        b_euler: b_euler_number(g, &coloring)?,
        classical_euler: classical_euler_number(g)?,
        coloring_used: coloring,
        note: "b_euler uses the canonical coloring; the opposite global sign negates it".to_owned(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{sphere_equator_graph, HypersurfaceComponent, Region};

    fn genus2_split() -> BGraph {
        BGraph::new(
            vec![Region::new("left", -1), Region::new("right", -1)],
            vec![HypersurfaceComponent::new("neck", "left", "right")],
            2,
        )
    }

    #[test]
    fn sphere_equator() {
        let g = sphere_equator_graph(2);
        let r = euler_report(&g).unwrap();
        assert_eq!((r.b_euler, r.classical_euler), (0, 2));
    }

    #[test]
    fn genus_two() {
        let g = genus2_split();
        let c = two_color(&g).unwrap();
        assert_eq!(b_euler_number(&g, &c), Ok(0));
        assert_eq!(classical_euler_number(&g), Ok(-2));
    }

    #[test]
    fn empty_z() {
        let g = BGraph::new(vec![Region::new("S2", 2)], vec![], 2);
        let r = euler_report(&g).unwrap();
        assert_eq!((r.b_euler, r.classical_euler), (2, 2));
    }

    #[test]
    fn torus_two_annuli() {
        let g = BGraph::new(
            vec![Region::new("A", 0), Region::new("B", 0)],
            vec![
                HypersurfaceComponent::new("c1", "A", "B"),
                HypersurfaceComponent::new("c2", "A", "B"),
            ],
            2,
        );
        let r = euler_report(&g).unwrap();
        assert_eq!((r.b_euler, r.classical_euler), (0, 0));
    }

    #[test]
    fn refusals() {
        let g = sphere_equator_graph(3);
        let c = two_color(&g).unwrap();
        assert_eq!(b_euler_number(&g, &c), Err(EulerError::OddDimension(3)));
        assert_eq!(
            classical_euler_number(&sphere_equator_graph(4)),
            Err(EulerError::UnsupportedDimension(4))
        );
        let g = sphere_equator_graph(2);
        let mut bad = c.clone();
        bad.0.insert("B-".into(), crate::obstruction::Sign::Plus);
        assert!(matches!(b_euler_number(&g, &bad), Err(EulerError::ImproperColoring(_))));
        let looped = BGraph::new(
            vec![Region::new("T", 0)],
            vec![HypersurfaceComponent::new("c", "T", "T")],
            2,
        );
        assert_eq!(euler_report(&looped), Err(EulerError::NotColorable));
    }
}
