//! Quadruple Roman domination on simple graphs.
//!
//! A quadruple Roman dominating function (4RDF) assigns every vertex a label
//! in `0..=5` so that each vertex labeled at most 3 sees a closed-neighborhood
//! label sum of at least four plus its number of nonzero neighbors. This
//! crate verifies such labelings, computes the minimum weight exactly and
//! approximately, builds the reduction gadgets and extremal families that
//! pin down the problem's complexity, and exports an ILP model.

pub mod approx;
pub mod classes;
pub mod error;
pub mod exact;
pub mod exact_cover;
pub mod graph;
pub mod ilp;
pub mod labeling;
pub mod planarity;
pub mod reductions;
pub mod roles;

pub use error::{Error, Result};
pub use graph::{Graph, GraphBuilder, Vertex};
pub use labeling::{Labeling, VerificationReport};
