//! Search for interiorly-normal and almost interiorly-normal surfaces in
//! angled ideal triangulations of one-cusped 3-manifolds.
//!
//! The pipeline: find an angled triangulation by 2-3/3-2 moves, bound the
//! meridional edge degree on the cusp torus, enumerate disc types within a
//! boundary-degree budget, solve the matching equations for fundamental
//! solutions, and list the finitely many candidate surfaces with bounded
//! Euler characteristic and boundary degree.

pub mod angles;
pub mod boundary;
pub mod discs;
pub mod error;
pub mod fixtures;
pub mod matching;
pub mod perm;
pub mod pipeline;
pub mod surfaces;
pub mod tri;

pub use error::{Error, Result};
