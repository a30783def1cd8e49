use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;

use super::linear::LinearForm;
use super::polynomial::Polynomial;
use crate::error::{Error, Result};

/// `sign * numerator / prod(denominator)` with the denominator kept as a
/// multiset of sign-normalized linear forms.
#[derive(Clone, Debug)]
pub struct FactoredRational {
    numerator: Polynomial,
    denominator: BTreeMap<LinearForm, u32>,
    negative: bool,
}

impl FactoredRational {
    pub fn new<I: IntoIterator<Item = LinearForm>>(numerator: Polynomial, denominator: I) -> Self {
        let mut negative = false;
        let mut den = BTreeMap::new();
        for f in denominator {
            negative ^= f.is_negated();
            *den.entry(f.base()).or_insert(0) += 1;
        }
        FactoredRational {
            numerator,
            denominator: den,
            negative,
        }
    }

    pub fn polynomial(p: Polynomial) -> Self {
        FactoredRational::new(p, [])
    }

    /// Numerator with the stored sign folded in.
    pub fn signed_numerator(&self) -> Polynomial {
        if self.negative {
            -&self.numerator
        } else {
            self.numerator.clone()
        }
    }

    pub fn denominator(&self) -> impl Iterator<Item = (&LinearForm, u32)> {
        self.denominator.iter().map(|(f, &m)| (f, m))
    }

    pub fn denominator_degree(&self) -> u32 {
        self.denominator.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    fn denominator_product(&self) -> Polynomial {
        self.denominator
            .iter()
            .map(|(f, &m)| f.to_polynomial().pow(m))
            .product()
    }

    /// Divides out denominator factors that divide the numerator, repeating
    /// until no factor divides.
    pub fn cancel(mut self) -> Self {
        if self.numerator.is_zero() {
            self.denominator.clear();
            self.negative = false;
            return self;
        }
        loop {
            let mut changed = false;
            let forms: Vec<LinearForm> = self.denominator.keys().cloned().collect();
            for f in forms {
                let fp = f.to_polynomial();
                while let Some(m) = self.denominator.get_mut(&f) {
                    match self.numerator.exact_divide(&fp) {
                        Ok(q) => {
                            self.numerator = q;
                            *m -= 1;
                            if *m == 0 {
                                self.denominator.remove(&f);
                            }
                            changed = true;
                        }
                        Err(_) => break,
                    }
                }
            }
            if !changed {
                return self;
            }
        }
    }

    /// The polynomial this represents, if it is one after cancellation.
    pub fn to_polynomial(&self) -> Result<Polynomial> {
        let reduced = self.clone().cancel();
        if reduced.denominator.is_empty() {
            Ok(reduced.signed_numerator())
        } else {
            Err(Error::NotPolynomial {
                numerator: reduced.signed_numerator(),
                denominator: reduced.denominator_string(),
            })
        }
    }

    fn denominator_string(&self) -> String {
        let parts: Vec<String> = self
            .denominator
            .iter()
            .map(|(f, &m)| {
                if m == 1 {
                    format!("({f})")
                } else {
                    format!("({f})^{m}")
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// Cross-multiplied equality.
impl PartialEq for FactoredRational {
    fn eq(&self, other: &Self) -> bool {
        &self.signed_numerator() * &other.denominator_product()
            == &other.signed_numerator() * &self.denominator_product()
    }
}

impl fmt::Display for FactoredRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / {}", self.signed_numerator(), self.denominator_string())
    }
}

/// Sum over a common denominator (the multiset maximum of the inputs'
/// denominators), followed by greedy cancellation.
pub fn ratf_sum(terms: &[FactoredRational]) -> FactoredRational {
    let mut common: BTreeMap<LinearForm, u32> = BTreeMap::new();
    for t in terms {
        for (f, &m) in &t.denominator {
            let e = common.entry(f.clone()).or_insert(0);
            *e = (*e).max(m);
        }
    }
    let mut numerator = Polynomial::zero();
    for t in terms {
        let complement: Polynomial = common
            .iter()
            .map(|(f, &m)| f.to_polynomial().pow(m - t.denominator.get(f).copied().unwrap_or(0)))
            .product();
        numerator += &t.signed_numerator() * &complement;
    }
    FactoredRational {
        numerator,
        denominator: common,
        negative: false,
    }
    .cancel()
}

pub fn ratf_to_polynomial(r: &FactoredRational) -> Result<Polynomial> {
    r.to_polynomial()
}

impl From<Polynomial> for FactoredRational {
    fn from(p: Polynomial) -> Self {
        FactoredRational::polynomial(p)
    }
}

impl From<BigInt> for FactoredRational {
    fn from(c: BigInt) -> Self {
        FactoredRational::polynomial(Polynomial::constant(c))
    }
}
