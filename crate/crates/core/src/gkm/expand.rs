use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, LazyLock, RwLock};

use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;
use serde::ser::SerializeMap;

use super::class::{euler_class, schubert_class, EqClass};
use crate::combinatorics::{subset_to_partition, GrassmannianShape, Partition, PivotSubset};
use crate::error::{Error, Result};
use crate::poly::{Family, Monomial, Polynomial, Var};

/// `Σ_λ c_λ [Ω_λ]^T` with coefficients in `Λ`; zero coefficients are absent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisExpansion {
    shape: GrassmannianShape,
    coeffs: BTreeMap<Partition, Polynomial>,
}

impl BasisExpansion {
    pub fn shape(&self) -> &GrassmannianShape {
        &self.shape
    }

    pub fn coeffs(&self) -> &BTreeMap<Partition, Polynomial> {
        &self.coeffs
    }

    pub fn coefficient(&self, lambda: &Partition) -> Polynomial {
        self.coeffs.get(lambda).cloned().unwrap_or_default()
    }

    pub fn reconstruct(&self) -> Result<EqClass> {
        let basis = schubert_basis(&self.shape)?;
        let mut total = EqClass::zero(self.shape);
        for (lam, c) in &self.coeffs {
            total = total.add(&basis[lam].scale(c))?;
        }
        Ok(total)
    }

    /// Coefficients at `t = 0`, i.e. their constant terms.
    pub fn at_zero(&self) -> BTreeMap<Partition, BigInt> {
        self.coeffs
            .iter()
            .map(|(lam, c)| (lam.clone(), c.constant_term()))
            .filter(|(_, c)| *c != BigInt::ZERO)
            .collect()
    }
}

/// `{"coeffs":{"2,1":"t2 - t1", ...}}`.
impl serde::Serialize for BasisExpansion {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Coeffs<'a>(&'a BTreeMap<Partition, Polynomial>);
        impl serde::Serialize for Coeffs<'_> {
            fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut map = s.serialize_map(Some(self.0.len()))?;
                for (lam, c) in self.0 {
                    map.serialize_entry(&lam.to_string(), c)?;
                }
                map.end()
            }
        }
        let mut map = s.serialize_map(Some(1))?;
        map.serialize_entry("coeffs", &Coeffs(&self.coeffs))?;
        map.end()
    }
}

type BasisCache = RwLock<HashMap<GrassmannianShape, Arc<BTreeMap<Partition, EqClass>>>>;

static BASIS: LazyLock<BasisCache> = LazyLock::new(Default::default);

/// All Schubert classes of `shape`, computed once per shape.
pub fn schubert_basis(shape: &GrassmannianShape) -> Result<Arc<BTreeMap<Partition, EqClass>>> {
    if let Some(hit) = BASIS.read().expect("basis cache poisoned").get(shape) {
        return Ok(Arc::clone(hit));
    }
    let classes = shape
        .partitions()
        .into_par_iter()
        .map(|lam| schubert_class(&lam, shape).map(|c| (lam, c)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    let classes = Arc::new(classes);
    BASIS
        .write()
        .expect("basis cache poisoned")
        .insert(*shape, Arc::clone(&classes));
    Ok(classes)
}

pub fn clear_basis_cache() {
    BASIS.write().expect("basis cache poisoned").clear();
}

/// Support points whose partition contains no other support partition.
fn minimal_candidates(c: &EqClass) -> Vec<PivotSubset> {
    let shape = c.shape();
    let support: Vec<(PivotSubset, Partition)> = c
        .support()
        .map(|(s, _)| (s.clone(), subset_to_partition(s, shape)))
        .collect();
    support
        .iter()
        .filter(|(_, lam)| !support.iter().any(|(_, other)| other != lam && lam.contains(other)))
        .map(|(s, _)| s.clone())
        .collect()
}

/// Triangular solve against the Schubert basis. Picks the lexicographically
/// smallest of the minimal support points at every step.
pub fn expand_in_basis(c: &EqClass) -> Result<BasisExpansion> {
    expand_in_basis_by(c, |cands| cands[0].clone())
}

/// As [`expand_in_basis`], with `choose` picking among the (nonempty,
/// ascending) minimal support points.
pub fn expand_in_basis_by<F>(c: &EqClass, mut choose: F) -> Result<BasisExpansion>
where
    F: FnMut(&[PivotSubset]) -> PivotSubset,
{
    let shape = *c.shape();
    let basis = schubert_basis(&shape)?;
    let mut rest = c.clone();
    let mut coeffs = BTreeMap::new();
    while !rest.is_zero() {
        let at = choose(&minimal_candidates(&rest));
        let value = rest.restriction(&at);
        let coeff = match value.exact_divide(&euler_class(&at, &shape)) {
            Ok(q) => q,
            Err(Error::NotDivisible { remainder }) => {
                return Err(Error::NotInSpan {
                    subset: at.to_string(),
                    remainder,
                })
            }
            Err(e) => return Err(e),
        };
        let lam = subset_to_partition(&at, &shape);
        rest = rest.sub(&basis[&lam].scale(&coeff))?;
        debug_assert!(rest.restriction(&at).is_zero());
        coeffs.insert(lam, coeff);
    }
    Ok(BasisExpansion { shape, coeffs })
}

/// `c^ν_{λμ}(t)` for all `ν`, from `[Ω_λ]^T · [Ω_μ]^T`.
pub fn structure_constants(lambda: &Partition, mu: &Partition, shape: &GrassmannianShape) -> Result<BasisExpansion> {
    shape.check_fits(lambda)?;
    shape.check_fits(mu)?;
    let basis = schubert_basis(shape)?;
    expand_in_basis(&basis[lambda].mul(&basis[mu])?)
}

/// Structure constants for every unordered pair `λ <= μ`, in pair order.
pub fn structure_constant_table(shape: &GrassmannianShape) -> Result<Vec<((Partition, Partition), BasisExpansion)>> {
    let parts = shape.partitions();
    let pairs: Vec<(Partition, Partition)> = parts
        .iter()
        .enumerate()
        .flat_map(|(i, a)| parts[i..].iter().map(move |b| (a.clone(), b.clone())))
        .collect();
    pairs
        .into_par_iter()
        .map(|(a, b)| structure_constants(&a, &b, shape).map(|e| ((a, b), e)))
        .collect()
}

/// Why a polynomial is not a nonnegative combination of monomials in `y_i = t_{i+1} - t_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PositivityFailure {
    /// A monomial of the rewritten polynomial has a negative coefficient.
    Negative { monomial: Monomial, coefficient: BigInt },
    /// A `t` variable survived the change of variables.
    ContainsT { monomial: Monomial, coefficient: BigInt },
}

impl std::fmt::Display for PositivityFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PositivityFailure::Negative { monomial, coefficient } => {
                write!(f, "coefficient {coefficient} on {monomial}")
            }
            PositivityFailure::ContainsT { monomial, coefficient } => {
                write!(f, "t variable survives in {coefficient}*{monomial}")
            }
        }
    }
}

/// Rewrites `p ∈ Z[t_1..t_n]` by `t_i -> t_n - (y_i + ... + y_{n-1})` and
/// returns the result when it is a nonnegative polynomial in the `y`.
pub fn positivity_certificate(p: &Polynomial, n: usize) -> Result<std::result::Result<Polynomial, PositivityFailure>> {
    let n32 = n as u32;
    let rewritten = p.substitute_with(|v| match v.family() {
        Family::T if v.index() >= 1 && v.index() < n32 => {
            let tail: Polynomial = (v.index()..n32).map(|i| Polynomial::var(Var::y(i))).sum();
            Some(&Polynomial::t(n32) - &tail)
        }
        Family::T if v.index() == n32 => Some(Polynomial::t(n32)),
        _ => None,
    })?;
    // report surviving t before looking at signs
    if let Some((m, c)) = rewritten.terms().find(|(m, _)| m.vars().any(|v| v.family() == Family::T)) {
        return Ok(Err(PositivityFailure::ContainsT {
            monomial: m.clone(),
            coefficient: c.clone(),
        }));
    }
    if let Some((m, c)) = rewritten.terms().find(|(_, c)| c.is_negative()) {
        return Ok(Err(PositivityFailure::Negative {
            monomial: m.clone(),
            coefficient: c.clone(),
        }));
    }
    Ok(Ok(rewritten))
}

/// Whether every coefficient of `e` passes [`positivity_certificate`].
pub fn expansion_is_positive(e: &BasisExpansion) -> Result<bool> {
    for c in e.coeffs.values() {
        if positivity_certificate(c, e.shape.n())?.is_err() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The product of two expansions computed from structure constants.
pub fn multiply_expansions(a: &BasisExpansion, b: &BasisExpansion) -> Result<BasisExpansion> {
    if a.shape != b.shape {
        return Err(Error::ShapeMismatch {
            left: (a.shape.k(), a.shape.n()),
            right: (b.shape.k(), b.shape.n()),
        });
    }
    let mut coeffs: BTreeMap<Partition, Polynomial> = BTreeMap::new();
    for (la, ca) in &a.coeffs {
        for (lb, cb) in &b.coeffs {
            let scalar = ca * cb;
            for (nu, c) in structure_constants(la, lb, &a.shape)?.coeffs {
                *coeffs.entry(nu).or_default() += &scalar * &c;
            }
        }
    }
    coeffs.retain(|_, c| !c.is_zero());
    Ok(BasisExpansion { shape: a.shape, coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn shape(n: usize, k: usize) -> GrassmannianShape {
        GrassmannianShape::new(n, k).unwrap()
    }

    fn single(lam: &Partition, c: Polynomial) -> BTreeMap<Partition, Polynomial> {
        [(lam.clone(), c)].into_iter().collect()
    }

    #[test]
    fn basis_elements_expand_to_themselves() {
        for sh in [shape(4, 2), shape(5, 2), shape(6, 3)] {
            for lam in sh.partitions() {
                let e = expand_in_basis(&schubert_class(&lam, &sh).unwrap()).unwrap();
                assert_eq!(e.coeffs(), &single(&lam, Polynomial::one()), "{lam}");
            }
            let e = expand_in_basis(&EqClass::one(sh)).unwrap();
            assert_eq!(e.coeffs(), &single(&Partition::empty(), Polynomial::one()));
        }
    }

    #[test]
    fn small_products() {
        let sh = shape(2, 1);
        let s1 = schubert_class(&part("1"), &sh).unwrap();
        let e = expand_in_basis(&s1.mul(&s1).unwrap()).unwrap();
        assert_eq!(e.coeffs(), &single(&part("1"), p("t2 - t1")));
        assert_eq!(structure_constants(&part("1"), &part("1"), &sh).unwrap(), e);
        assert_eq!(
            serde_json::to_string(&e).unwrap(),
            r#"{"coeffs":{"1":"t2 - t1"}}"#
        );

        let sh = shape(4, 2);
        let e = structure_constants(&part("1"), &part("1"), &sh).unwrap();
        let expected: BTreeMap<Partition, BigInt> =
            [(part("2"), BigInt::from(1)), (part("1,1"), BigInt::from(1))].into_iter().collect();
        assert_eq!(e.at_zero(), expected);
        for lam in sh.partitions() {
            let e = structure_constants(&lam, &Partition::empty(), &sh).unwrap();
            assert_eq!(e.coeffs(), &single(&lam, Polynomial::one()));
        }
    }

    #[test]
    fn structure_constants_are_homogeneous() {
        for sh in [shape(4, 2), shape(5, 2)] {
            for ((a, b), e) in structure_constant_table(&sh).unwrap() {
                for (nu, c) in e.coeffs() {
                    assert!(nu.size() <= a.size() + b.size());
                    assert!(c.is_homogeneous());
                    assert_eq!(c.degree(), Some((a.size() + b.size() - nu.size()) as u32));
                }
                assert_eq!(e.reconstruct().unwrap(), schubert_class(&a, &sh).unwrap().mul(&schubert_class(&b, &sh).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn choice_of_minimal_point_is_irrelevant() {
        let sh = shape(5, 2);
        let basis = schubert_basis(&sh).unwrap();
        let parts = sh.partitions();
        for a in &parts {
            for b in &parts {
                let c = basis[a].mul(&basis[b]).unwrap();
                let first = expand_in_basis(&c).unwrap();
                let last = expand_in_basis_by(&c, |cands| cands[cands.len() - 1].clone()).unwrap();
                let mut turn = 0usize;
                let rotating = expand_in_basis_by(&c, |cands| {
                    turn += 1;
                    cands[turn % cands.len()].clone()
                })
                .unwrap();
                assert_eq!(first, last);
                assert_eq!(first, rotating);
            }
        }
    }

    #[test]
    fn non_span_is_rejected() {
        let sh = shape(2, 1);
        let at = PivotSubset::new(vec![1], &sh).unwrap();
        let bad = EqClass::from_restrictions(sh, [(at, Polynomial::one())]).unwrap();
        assert!(matches!(expand_in_basis(&bad), Err(Error::NotInSpan { .. })));
    }

    #[test]
    fn perturbed_leading_data_changes_expansion() {
        // adding a multiple of a basis element shifts exactly that coefficient
        let sh = shape(4, 2);
        let basis = schubert_basis(&sh).unwrap();
        let base = basis[&part("1")].mul(&basis[&part("1")]).unwrap();
        let e0 = expand_in_basis(&base).unwrap();
        for lam in sh.partitions() {
            let bump = p("t1 + 2*t3");
            let e1 = expand_in_basis(&base.add(&basis[&lam].scale(&bump)).unwrap()).unwrap();
            for nu in sh.partitions() {
                let expected = if nu == lam { &e0.coefficient(&nu) + &bump } else { e0.coefficient(&nu) };
                assert_eq!(e1.coefficient(&nu), expected);
            }
        }
    }

    #[test]
    fn positivity_examples() {
        assert_eq!(positivity_certificate(&p("t2 - t1"), 2).unwrap(), Ok(p("y1")));
        assert_eq!(positivity_certificate(&p("t3 - t1"), 3).unwrap(), Ok(p("y1 + y2")));
        assert_eq!(
            positivity_certificate(&p("t1 - t2"), 2).unwrap(),
            Err(PositivityFailure::Negative {
                monomial: Monomial::var(Var::y(1)),
                coefficient: BigInt::from(-1)
            })
        );
        assert!(matches!(
            positivity_certificate(&p("t1"), 3).unwrap(),
            Err(PositivityFailure::ContainsT { .. })
        ));
        assert_eq!(positivity_certificate(&p("3"), 3).unwrap(), Ok(p("3")));
    }

    #[test]
    fn expansion_is_multiplicative() {
        let sh = shape(5, 2);
        let basis = schubert_basis(&sh).unwrap();
        let picks = [part("1"), part("2,1"), part("1,1"), part("3")];
        for a in &picks {
            for b in &picks {
                let ea = expand_in_basis(&basis[a].add(&basis[b]).unwrap()).unwrap();
                let eb = expand_in_basis(&basis[b].scale(&p("t2 - t4"))).unwrap();
                let direct = expand_in_basis(&basis[a].add(&basis[b]).unwrap().mul(&basis[b].scale(&p("t2 - t4"))).unwrap()).unwrap();
                assert_eq!(multiply_expansions(&ea, &eb).unwrap(), direct);
            }
        }
    }
}
