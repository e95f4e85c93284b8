//! Toolkit for the signless-Laplacian spectral radius (the Q-index) of graphs
//! without long paths.
//!
//! The crate is split the same way the workflow is:
//!
//! - [`graph`]: compact bitset graphs, extremal family constructors, graph6,
//!   connectivity, canonical forms.
//! - [`spectral`]: Q-index by power iteration, closed forms and upper bounds.
//! - [`subgraph`]: exact longest path / cycle, rooted paths, maximum matching.
//! - [`structure`]: membership in the extremal and exceptional families,
//!   dominating vertices, minimum-degree peeling.
//! - [`verify`]: isomorph-free enumeration and exhaustive theorem checks.

pub mod error;
pub mod fixtures;
pub mod graph;
pub mod spectral;
pub mod structure;
pub mod subgraph;
pub mod verify;

pub use error::{Error, Result};
pub use graph::family::{make_family, FamilyKind, FamilySpec};
pub use graph::{Adjacency, Graph, SparseGraph, MAX_ORDER};
pub use spectral::{q_index, SpectralResult, DEFAULT_TOL};
pub use subgraph::Certificate;


