//! Miquel dynamics on (2,2)-biperiodic square-grid circle patterns.
//!
//! A pattern assigns a point of the plane to every vertex of Z^2 so that the
//! four corners of each unit face are concyclic; here the pattern repeats
//! with periods (2,0) and (0,2) up to translation, so a 3x3 block of points
//! A..I determines everything. The white and black Miquel moves reflect
//! vertices through lines joining neighboring face circumcenters, and the
//! composed move acts as a translation on a quartic curve
//!
//! ```text
//!   (x^2 + y^2)^2 + a x^2 + b y^2 + c = 0
//! ```
//!
//! that every vertex orbit stays on. This crate builds such patterns, runs
//! the dynamics, recovers the invariant quartic, implements the chord group
//! law on it, and integrates the invariant measure, with numerical
//! verification helpers for each claim.
//!
//! ```
//! use miquel_core::{MiquelQuartic, Pattern22, MutationColor};
//!
//! let pattern = Pattern22::from_hyperbola(
//!     [1.0, 2.0, 3.0, 4.0, 6.0],
//!     &miquel_core::Similarity::default(),
//!     1e-9,
//! ).unwrap();
//! let quartic = MiquelQuartic::of_pattern(&pattern, 1e-9).unwrap();
//! let moved = pattern.mutate_renormalized(MutationColor::White, 1e-9).unwrap();
//! assert!(quartic.contains_world(moved.e()));
//! ```
//!
//! Batch operations (verification sweeps, Riemann reference sums, bulk
//! sampling) take a [`ProcessingMode`]; with the default `parallel` feature
//! they fan out over a rayon pool, and `ProcessingMode::Sequential` gives a
//! bitwise-identical single-threaded fallback.

mod dd;
pub mod elliptic;
pub mod error;
pub mod exec;
pub mod geometry;
pub mod hyperbola;
pub mod measure;
pub mod pattern;
mod poly;
pub mod quartic;
pub mod sampling;
pub mod verify;

pub use elliptic::{
    predict_mutation, tangent_circle_mutation, CircleOrLine, GroupLaw, GroupPoint,
    IntersectionList, SumInvarianceReport,
};
pub use error::{Error, ErrorClass, Result};
pub use exec::ProcessingMode;
pub use geometry::{Circle2, Line2, Point2, Vec2, DEFAULT_TOL};
pub use hyperbola::{ConicKind, HyperbolaSpec};
pub use measure::{
    arc_measure, branch_of_point, omega_integrand, orbit_measure_report, riemann_measure,
    ArcMeasure, BranchId, MeasureEntry, MeasureReport, ORBIT_DRIFT_TOL,
};
pub use pattern::{
    ConservedQuantities, MutationColor, Pattern22, PatternClass, Similarity, FACE_LABELS,
    VERTEX_LABELS,
};
pub use quartic::{Frame, MiquelQuartic, QuarticBranchSample};
pub use sampling::{
    random_generic_pattern, random_generic_s0, random_trapezoidal_pattern, random_trapezoidal_s0,
    random_vertical_trapezoidal_pattern, seeded_rng,
};
pub use verify::{verify_batch, verify_pattern, GroupAxiomResiduals, VerificationReport};
