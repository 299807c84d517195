//! Exact linear algebra for enriched categories over vector spaces:
//! V-graphs, coalgebras, semi-Hopf and Hopf categories, their truncated
//! free constructions, and a few module-theoretic flatness tools.

pub mod coalg;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod free_hopf;
pub mod groupoid;
pub mod hopf;
pub mod kernel;
pub mod modflat;
pub mod report;
pub mod vcat;
pub mod vgraph;

pub use error::{Error, Result};
pub use kernel::{ExactMatrix, Field, Scalar, Subspace, Vector};
