//! Exact lattice polytope toolkit: hulls, dilations, vertex cones, Gorenstein
//! and reflexivity tests, unimodular normal forms, and an exhaustive census
//! with falsifiable checks of the Gorenstein criteria for small polytopes.

pub mod affine;
pub mod census;
pub mod claims;
pub mod cones;
pub mod corpus;
pub mod equivalence;
pub mod error;
pub mod format;
pub mod gorenstein;
pub mod linalg;
pub mod polytope;
pub mod report;
pub mod unimodular;

pub use error::{Error, Result};
pub use polytope::{Facet, LatticePoint, LatticePolytope, PointSet, Pyramid};
