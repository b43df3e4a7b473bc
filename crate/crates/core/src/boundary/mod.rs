//! The boundary torus of a cusped triangulation: its triangulated complex,
//! normal curves as words, edge contraction, and slopes.

pub mod complex;
pub mod contract;
pub mod generate;
pub mod homology;
pub mod standard;
pub mod torus;
pub mod word;

pub use complex::{Perm3, Side, SideGluing, SurfaceComplex, SurfaceSummary};
pub use contract::{
    contract_edge, contractible_edges, meridional_bound, MeridionalBound, TraceStep,
};
pub use homology::{cycle_basis, CycleBasis, Slope, SlopeFrame};
pub use standard::{scan_standard_position, StandardPosition};
pub use torus::{boundary_complex, BoundaryTorus};
pub use word::{normalize_curve, word_from_edges, word_from_ids, word_to_ids, CurveWord};
