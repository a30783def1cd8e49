//! Equivariant classes on `Gr(k, n)` as tuples of fixed-point restrictions.

mod class;
mod expand;
mod graph;
mod integrate;
mod kempf_laksov;

pub use class::*;
pub use expand::*;
pub use graph::*;
pub use integrate::integrate;
pub use kempf_laksov::{determinant, kempf_laksov_class, kempf_laksov_restriction};
