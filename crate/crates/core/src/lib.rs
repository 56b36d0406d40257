//! Certifying graph coloring into cycle targets.
//!
//! The crate bundles:
//!
//! * [`graph`]: simple undirected graphs and cycle handles;
//! * [`format`]: graph6, DIMACS and edge-list ingestion/serialization;
//! * [`detect`]: bipartiteness certificates, shortest odd cycles,
//!   exhaustive induced path/cycle search, exact clique bounds;
//! * [`hom`]: the exact H-list-homomorphism oracle;
//! * [`cycle`]: the certifying solver that colors a graph into the cycle
//!   on `k - 2` vertices or returns a small non-colorable induced
//!   subgraph as witness;
//! * [`td`]: DFS tree decompositions, DP coloring over them, and
//!   minimal-obstruction extraction;
//! * [`enumerate`]: small-graph enumeration and minimal-obstruction
//!   catalog search;
//! * [`certificate`]: the JSON certificate formats and their verifier.

pub mod certificate;
pub mod cycle;
pub mod detect;
pub mod enumerate;
pub mod format;
pub mod graph;
pub mod hom;
pub mod td;

pub use graph::{CycleHandle, Graph, VertexSubset};
pub use hom::{HomMapping, ListAssignment, TargetGraph};
