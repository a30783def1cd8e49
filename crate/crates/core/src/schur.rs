//! Double Schur functions `s_λ(x | u)` from the tableau formula, and their
//! specializations at the fixed points of `Gr(k, n)`.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, RwLock};

use crate::combinatorics::{partition_to_subset, ssyt_enumerate, GrassmannianShape, Partition};
use crate::error::{Error, Result};
use crate::poly::{Family, Polynomial, Var};

/// `s_λ(x_1..x_k | u)` in normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleSchur {
    shape: Partition,
    k: usize,
    value: Polynomial,
}

impl DoubleSchur {
    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn value(&self) -> &Polynomial {
        &self.value
    }

    /// Largest u-index that can occur, `k + λ_1 - 1`.
    pub fn max_u_index(&self) -> usize {
        (self.k + self.shape.first()).saturating_sub(1)
    }
}

type Cache = RwLock<HashMap<(Partition, usize), Arc<DoubleSchur>>>;

static CACHE: LazyLock<Cache> = LazyLock::new(Default::default);

/// Cached [`compute_double_schur`]. Concurrent misses may both compute; the
/// values are identical and the last insert wins.
pub fn double_schur(lambda: &Partition, k: usize) -> Result<Arc<DoubleSchur>> {
    let key = (lambda.clone(), k);
    if let Some(hit) = CACHE.read().expect("schur cache poisoned").get(&key) {
        return Ok(Arc::clone(hit));
    }
    let value = Arc::new(compute_double_schur(lambda, k)?);
    CACHE
        .write()
        .expect("schur cache poisoned")
        .insert(key, Arc::clone(&value));
    Ok(value)
}

/// Drops every memoized double Schur function.
pub fn clear_cache() {
    CACHE.write().expect("schur cache poisoned").clear();
}

/// Sum over `SSYT(λ)` with entries in `1..=k` of
/// `prod_{(i,j)} (x_{S(i,j)} - u_{S(i,j)+j-i})`.
pub fn compute_double_schur(lambda: &Partition, k: usize) -> Result<DoubleSchur> {
    if lambda.len() > k {
        return Err(Error::TooManyRows {
            partition: lambda.to_string(),
            k,
        });
    }
    let max_u = (k + lambda.first()).saturating_sub(1);
    let mut value = Polynomial::zero();
    for tableau in ssyt_enumerate(lambda, k) {
        let mut term = Polynomial::one();
        for ((i, j), s) in tableau.boxes() {
            let u = s + j - i;
            assert!(
                (1..=max_u).contains(&u),
                "u-index {u} outside 1..={max_u} for {lambda}"
            );
            let factor = &Polynomial::var(Var::x(s as u32)) - &Polynomial::var(Var::u(u as u32));
            term = &term * &factor;
        }
        value += term;
    }
    Ok(DoubleSchur {
        shape: lambda.clone(),
        k,
        value,
    })
}

/// `s_λ(t^μ | u)` with `x_j -> -t_{i_j}` for `I = I(μ)` and `u_i -> -t_{n+1-i}`.
pub fn restrict_schur(lambda: &Partition, mu: &Partition, shape: &GrassmannianShape) -> Result<Polynomial> {
    shape.check_fits(lambda)?;
    let at = partition_to_subset(mu, shape)?;
    let ds = double_schur(lambda, shape.k())?;
    let n = shape.n();
    ds.value.substitute_with(|v| match v.family() {
        Family::X => at
            .elements()
            .get(v.index() as usize - 1)
            .map(|&i| -Polynomial::t(i as u32)),
        Family::U if (v.index() as usize) <= n => Some(-Polynomial::t((n + 1) as u32 - v.index())),
        _ => None,
    })
}

/// The ordinary Schur polynomial `s_λ(x_1..x_k)`.
pub fn ordinary_schur(lambda: &Partition, k: usize) -> Result<Polynomial> {
    let ds = double_schur(lambda, k)?;
    Ok(ds
        .value
        .substitute_partial(|v| (v.family() == Family::U).then(Polynomial::zero)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{normal_weights, subset_to_partition};
    use num_bigint::BigInt;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn shape(n: usize, k: usize) -> GrassmannianShape {
        GrassmannianShape::new(n, k).unwrap()
    }

    #[test]
    fn small_values() {
        assert!(double_schur(&Partition::empty(), 3).unwrap().value().is_one());
        assert_eq!(*double_schur(&part("1"), 1).unwrap().value(), p("x1 - u1"));
        assert!(matches!(
            double_schur(&part("1,1"), 1),
            Err(Error::TooManyRows { .. })
        ));
    }

    #[test]
    fn first_tableau_term_present() {
        // the first tableau contributes exactly this product
        let ds = compute_double_schur(&part("2,1"), 3).unwrap();
        let lead = p("(x1 - u1)*(x1 - u2)*(x2 - u1)");
        let rest = &ds.value - &lead;
        assert!(!rest.is_zero());
        assert_eq!(ds.max_u_index(), 4);
    }

    #[test]
    fn ordinary_examples() {
        assert_eq!(ordinary_schur(&part("1"), 2).unwrap(), p("x1 + x2"));
        assert_eq!(ordinary_schur(&part("2,2"), 2).unwrap(), p("x1^2*x2^2"));
        let s = ordinary_schur(&part("2,1"), 3).unwrap();
        let at_ones = s.evaluate(|_| Some(BigInt::from(1))).unwrap();
        assert_eq!(at_ones, BigInt::from(8));
    }

    #[test]
    fn restriction_examples() {
        let sh = shape(2, 1);
        assert_eq!(restrict_schur(&part("1"), &part("1"), &sh).unwrap(), p("t2 - t1"));
        assert!(restrict_schur(&part("1"), &Partition::empty(), &sh).unwrap().is_zero());
        for mu in shape(5, 2).partitions() {
            assert!(restrict_schur(&Partition::empty(), &mu, &shape(5, 2)).unwrap().is_one());
        }
        assert!(restrict_schur(&part("3"), &part("1"), &sh).is_err());
    }

    #[test]
    fn symmetric_in_x() {
        let sh = shape(5, 2);
        for lam in sh.partitions() {
            let ds = double_schur(&lam, 2).unwrap();
            let swapped = ds.value().substitute_partial(|v| match v {
                v if v == Var::x(1) => Some(Polynomial::var(Var::x(2))),
                v if v == Var::x(2) => Some(Polynomial::var(Var::x(1))),
                _ => None,
            });
            assert_eq!(&swapped, ds.value(), "{lam}");
        }
        let ds = double_schur(&part("2,1"), 3).unwrap();
        for m in 1..3u32 {
            let swapped = ds.value().substitute_partial(|v| match v {
                v if v == Var::x(m) => Some(Polynomial::var(Var::x(m + 1))),
                v if v == Var::x(m + 1) => Some(Polynomial::var(Var::x(m))),
                _ => None,
            });
            assert_eq!(&swapped, ds.value());
        }
    }

    #[test]
    fn interpolation_small() {
        for (n, k) in [(3, 1), (4, 2), (5, 2)] {
            let sh = shape(n, k);
            for s in sh.subsets() {
                let lam = subset_to_partition(&s, &sh);
                let diag: Polynomial = normal_weights(&s, &sh).iter().map(|w| w.to_polynomial()).product();
                assert_eq!(restrict_schur(&lam, &lam, &sh).unwrap(), diag);
                for mu in sh.partitions() {
                    if !mu.contains(&lam) {
                        assert!(restrict_schur(&lam, &mu, &sh).unwrap().is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn cache_is_consistent_across_threads() {
        let lam = part("3,1");
        let handles: Vec<_> = (0..8)
            .map(|_| {
                let lam = lam.clone();
                std::thread::spawn(move || double_schur(&lam, 3).unwrap())
            })
            .collect();
        let fresh = compute_double_schur(&lam, 3).unwrap();
        for h in handles {
            assert_eq!(*h.join().unwrap(), fresh);
        }
    }
}
