//! Minimum maximal edge-disjoint subgraph packings ("clumsy" packings)
//! and their companion quantities, with exact solvers at desk scale,
//! certified construction families, and closed-form bounds.
//!
//! The central objects:
//!
//! - [`graph::Graph`]: immutable simple graph with stable edge ids.
//! - [`copies::CopyTable`]: every copy of a pattern H in a host G, as
//!   edge sets, plus the edge -> copies incidence.
//! - [`packing::Packing`]: a set of copy indices with a covered-edge
//!   mask, certified valid/maximal by re-checkable certificates.
//! - [`solve`]: exact branch-and-bound for the four quantities
//!   cl (minimum maximal packing), pp (maximum packing), cov (minimum
//!   blocking set), ex (largest copy-free edge subset), plus an
//!   exhaustive oracle for cross-validation.
//! - [`construct`]: the three construction families (complete-graph
//!   clique packings, hypercube layer packings, periodic tiling
//!   patterns), each emitting a certified maximal packing.
//! - [`bounds`]: closed-form bound chains tying everything together.

pub mod bitset;
pub mod bounds;
pub mod construct;
pub mod copies;
pub mod generators;
pub mod graph;
pub mod packing;
pub mod rational;
pub mod solve;

pub use copies::CopyTable;
pub use graph::Graph;
pub use packing::{Certificate, Packing};
pub use rational::Rational;
pub use solve::{Budget, Quantity, SolveResult, SolveStatus};
