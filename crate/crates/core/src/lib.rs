//! Workbench for extremal spectral graph theory at desk scale.
//!
//! The crate computes dominant adjacency eigenvalues, builds the extremal
//! constructions relevant to forbidden-path and forbidden-cycle problems,
//! detects fixed-order paths, cycles, and trees exactly, and exhaustively
//! enumerates small graphs to verify spectral bounds and to scan for
//! counterexamples to open claims.
//!
//! Modules:
//! - [`graph`]: immutable bitset graphs, constructions, canonical forms;
//! - [`graph6`]: bit-exact graph6 text I/O;
//! - [`spectral`]: eigensolver, closed-form spectra, inequality checks;
//! - [`detect`]: exact path/cycle/tree containment and edge-count facts;
//! - [`trees`]: free-tree generation by level-sequence successor;
//! - [`search`]: isomorph-free enumeration, extremal records, claim sweeps.

pub mod detect;
pub mod graph;
pub mod graph6;
pub mod search;
pub mod spectral;
pub mod trees;

pub use graph::{
    complete_bipartite, complete_split, friendship, is_isomorphic, CanonicalForm, Graph,
    GraphError,
};
pub use graph6::Graph6Error;
