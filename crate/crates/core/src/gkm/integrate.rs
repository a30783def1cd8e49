use rayon::prelude::*;

use super::class::EqClass;
use crate::combinatorics::tangent_weights;
use crate::error::Result;
use crate::poly::{ratf_sum, FactoredRational, Polynomial};

/// Pushforward to a point: `Σ_I c(I) / ∏ tangent weights at p_I`.
/// `NotPolynomial` means `c` is not a genuine class.
pub fn integrate(c: &EqClass) -> Result<Polynomial> {
    let shape = *c.shape();
    let terms: Vec<FactoredRational> = c
        .support()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(s, p)| FactoredRational::new(p.clone(), tangent_weights(s, &shape)))
        .collect();
    ratf_sum(&terms).to_polynomial()
}
