//! Exact computation of the `d3` invariant of contact structures presented by contact
//! surgery diagrams, with Kirby-calculus verification and the circle-bundle obstruction
//! application.

#![allow(clippy::needless_range_loop)]

pub mod circle_bundle;
pub mod exact_arith;
pub mod invariants;
pub mod kirby;
pub mod surgery;

pub use exact_arith::{Inertia, QSymMatrix, Rat};
pub use invariants::{d3, invariant_report, InvariantReport};
pub use surgery::{
    build_four_manifold, ChainConvention, ContactDiagram, FourManifoldData, LegendrianComponent,
    ReducedDiagram, Variant,
};
