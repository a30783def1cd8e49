use std::fmt;

use num_bigint::BigInt;

use super::monomial::{Monomial, Var};
use super::polynomial::Polynomial;
use crate::error::{Error, Result};

/// A nonzero linear form in the t-variables with no constant term.
///
/// The coefficient vector is kept sign-normalized (first nonzero coefficient
/// positive) and the overall sign is stored separately, so `t1 - t2` and
/// `t2 - t1` share the same [`base`](LinearForm::base).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearForm {
    /// `coeffs[i]` multiplies `t_{i+1}`; no trailing zeros.
    coeffs: Vec<i64>,
    negated: bool,
}

impl LinearForm {
    /// From raw coefficients, `coeffs[i]` multiplying `t_{i+1}`.
    pub fn new(mut coeffs: Vec<i64>) -> Result<LinearForm> {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        let first = *coeffs.iter().find(|&&c| c != 0).ok_or(Error::ZeroLinearForm)?;
        let negated = first < 0;
        if negated {
            coeffs.iter_mut().for_each(|c| *c = -*c);
        }
        Ok(LinearForm { coeffs, negated })
    }

    /// `t_j - t_i` for `i != j` (1-based).
    pub fn weight(j: usize, i: usize) -> LinearForm {
        assert!(i != j && i >= 1 && j >= 1, "weight t{j} - t{i} is degenerate");
        let mut coeffs = vec![0; i.max(j)];
        coeffs[j - 1] += 1;
        coeffs[i - 1] -= 1;
        LinearForm::new(coeffs).expect("nonzero")
    }

    /// `t_i` (1-based).
    pub fn coordinate(i: usize) -> LinearForm {
        let mut coeffs = vec![0; i];
        coeffs[i - 1] = 1;
        LinearForm::new(coeffs).expect("nonzero")
    }

    /// Whether the stored sign is negative, i.e. the form is `-base()`.
    pub fn is_negated(&self) -> bool {
        self.negated
    }

    /// The sign-normalized form.
    pub fn base(&self) -> LinearForm {
        LinearForm {
            coeffs: self.coeffs.clone(),
            negated: false,
        }
    }

    pub fn negate(&self) -> LinearForm {
        LinearForm {
            coeffs: self.coeffs.clone(),
            negated: !self.negated,
        }
    }

    /// Coefficient of `t_i` including the sign.
    pub fn coefficient(&self, i: usize) -> i64 {
        let c = self.coeffs.get(i.wrapping_sub(1)).copied().unwrap_or(0);
        if self.negated {
            -c
        } else {
            c
        }
    }

    /// True when one form is a rational multiple of the other.
    pub fn is_proportional(&self, other: &LinearForm) -> bool {
        if self.coeffs.len() != other.coeffs.len() {
            return false;
        }
        let a = self.coeffs.iter().position(|&c| c != 0).expect("nonzero");
        let b = other.coeffs.iter().position(|&c| c != 0).expect("nonzero");
        if a != b {
            return false;
        }
        let (p, q) = (self.coeffs[a] as i128, other.coeffs[a] as i128);
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .all(|(&x, &y)| x as i128 * q == y as i128 * p)
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let sign = if self.negated { -1 } else { 1 };
        Polynomial::from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| (Monomial::var(Var::t(i as u32 + 1)), BigInt::from(sign * c))),
        )
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_polynomial())
    }
}

/// The `i`-th elementary symmetric polynomial of `forms`; `e_0 = 1`.
pub fn elementary_symmetric(i: usize, forms: &[LinearForm]) -> Result<Polynomial> {
    let polys: Vec<Polynomial> = forms.iter().map(LinearForm::to_polynomial).collect();
    elementary_symmetric_polys(i, &polys)
}

/// Elementary symmetric polynomial of arbitrary polynomial arguments.
pub fn elementary_symmetric_polys(i: usize, args: &[Polynomial]) -> Result<Polynomial> {
    if i > args.len() {
        return Err(Error::IndexOutOfRange {
            index: i,
            max: args.len(),
        });
    }
    // e[d] after processing a prefix of the arguments
    let mut e = vec![Polynomial::zero(); i + 1];
    e[0] = Polynomial::one();
    for a in args {
        for d in (1..=i).rev() {
            let step = &e[d - 1] * a;
            e[d] += step;
        }
    }
    Ok(e.swap_remove(i))
}
