//! Exact solving of cops and robbers, including the lazy variant where at
//! most one cop moves per turn, on graphs with at most 64 vertices.
//!
//! The crate is organised bottom-up:
//!
//! - [`graph`]: bitmask graphs, generators, canonical labelling, graph6.
//! - [`solver`]: retrograde game solving, domination, dismantlability.
//! - [`enumerate`]: isomorph-free generation of connected graphs.
//! - [`bounds`]: degree and pendant reductions that cap the cop search.
//! - [`scan`]: resumable classification of whole graph families.
//! - [`verify`]: the theorem checks built on top of scans.
//! - [`play`]: a turn-based session against the solved strategies.

pub mod bounds;
pub mod enumerate;
pub mod graph;
pub mod play;
pub mod scan;
pub mod solver;
pub mod verify;

pub use graph::{CanonicalForm, Graph, Graph6Text, GraphError, VertexSet};
pub use solver::{Budget, Rules, SolveError, SolveOutcome};
