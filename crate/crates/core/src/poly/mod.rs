//! Exact polynomial arithmetic over the integers.

mod linear;
mod monomial;
mod polynomial;
mod ratfunc;

pub use linear::{elementary_symmetric, elementary_symmetric_polys, LinearForm};
pub use monomial::{Family, Monomial, Var};
pub use polynomial::Polynomial;
pub use ratfunc::{ratf_sum, ratf_to_polynomial, FactoredRational};
