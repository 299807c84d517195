//! Exact linear algebra: scalars over `Q` or `F_p`, dense matrices,
//! subspaces in echelon form, and integer Smith normal form.

pub mod matrix;
pub mod scalar;
pub mod snf;
pub mod sparse;
pub mod subspace;

pub use matrix::{ExactMatrix, Rref, Solution, Vector};
pub use scalar::{Field, Scalar};
pub use snf::{snf, IntMatrix, Snf};
pub use subspace::Subspace;
