//! Obstructions to isomorphisms between singular tangent bundles and the
//! tangent bundle.
//!
//! - [`model`]: the associated graph of a b-manifold, built directly or from a
//!   triangulated surface.
//! - [`obstruction`]: two-colorability, gauge solvability of sign gluings,
//!   `bᵐ` parity, the circle and edge-structure criteria.
//! - [`euler`]: colored Euler numbers of `ᵇTM`.
//! - [`index`]: winding-number indices of planar fields and b-fields.
//! - [`sphere`]: the degree and null-homotopy of the equatorial gluing map of `ᵇTSⁿ`.

pub mod catalog;
pub mod euler;
pub mod gf2;
pub mod index;
pub mod model;
pub mod obstruction;
pub mod sphere;

pub use euler::{b_euler_number, classical_euler_number, euler_report, EulerError, EulerReport};
pub use index::{b_frame_index, verify_poincare_hopf, winding_index, IndexError, IndexResult, PlaneField};
pub use model::{
    build_graph_from_surface, surface_euler, validate_graph, BGraph, HypersurfaceComponent, Region,
    TriangulatedSurface,
};
pub use obstruction::{
    circle_criterion, classify_bm, edge_obstruction, equivalence_report, gauge_solvable, two_color,
    BmClass, ClassificationVerdict, Coloring, EdgeVerdict, Sign, SignGluing,
};
pub use sphere::{degree_integral, degree_preimage, mu_f, reflection, SpherePoint, SphereMapReport};
