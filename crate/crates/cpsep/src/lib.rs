//! Connectivity-preserving vertex separators and exact node multiway
//! cut-uncut for bounded separator size.
//!
//! The library computes minimum vertex separators between vertex sets
//! (with the unique closest ones on either side), evaluates monotone
//! connectivity constraints, enumerates all constraint-preserving
//! important separators of size at most k, and solves the node multiway
//! cut-uncut problem exactly for small budgets. A brute-force oracle
//! module provides independent ground truth for testing at desk scale.

pub mod constraints;
pub mod enumerate;
pub mod error;
pub mod flow;
pub mod graph;
pub mod nmwcu;
pub mod oracle;
pub mod septools;
pub mod textio;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
