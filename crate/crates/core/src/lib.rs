//! Exact torus-equivariant Schubert calculus on Grassmannians by fixed-point
//! localization.

pub mod combinatorics;
pub mod error;
pub mod expr;
pub mod gkm;
pub mod poly;
pub mod schur;
pub mod verify;

pub use combinatorics::{GrassmannianShape, Partition, PivotSubset, Tableau};
pub use error::{Error, Result};
pub use gkm::{BasisExpansion, EqClass, GkmGraph};
pub use poly::{FactoredRational, LinearForm, Monomial, Polynomial, Var};

/// Empties the memo caches, so the next computation starts cold.
pub fn clear_caches() {
    schur::clear_cache();
    gkm::clear_basis_cache();
}
