use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::ser::SerializeMap;

use crate::combinatorics::{
    partition_to_subset, subset_to_partition, tangent_weights, GrassmannianShape, Partition, PivotSubset,
};
use crate::error::{Error, Result};
use crate::poly::{elementary_symmetric_polys, Family, LinearForm, Polynomial};
use crate::schur::restrict_schur;

/// An equivariant class on `Gr(k, n)`, given by its restrictions to the
/// fixed points `p_I`. Zero restrictions are not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqClass {
    shape: GrassmannianShape,
    restrictions: BTreeMap<PivotSubset, Polynomial>,
}

impl EqClass {
    pub fn zero(shape: GrassmannianShape) -> EqClass {
        EqClass {
            shape,
            restrictions: BTreeMap::new(),
        }
    }

    /// The image of `c ∈ Λ`: `c` at every fixed point.
    pub fn constant(shape: GrassmannianShape, c: Polynomial) -> EqClass {
        EqClass::from_fn(shape, |_| c.clone())
    }

    pub fn one(shape: GrassmannianShape) -> EqClass {
        EqClass::constant(shape, Polynomial::one())
    }

    pub fn from_fn<F: FnMut(&PivotSubset) -> Polynomial>(shape: GrassmannianShape, mut f: F) -> EqClass {
        let restrictions = shape
            .subsets()
            .into_iter()
            .map(|s| {
                let p = f(&s);
                (s, p)
            })
            .filter(|(_, p)| !p.is_zero())
            .collect();
        EqClass { shape, restrictions }
    }

    /// From explicit restrictions; keys must be valid subsets of `shape`.
    pub fn from_restrictions<I>(shape: GrassmannianShape, entries: I) -> Result<EqClass>
    where
        I: IntoIterator<Item = (PivotSubset, Polynomial)>,
    {
        let mut restrictions = BTreeMap::new();
        for (s, p) in entries {
            let s = PivotSubset::new(s.elements().to_vec(), &shape)?;
            if !p.is_zero() {
                restrictions.insert(s, p);
            }
        }
        Ok(EqClass { shape, restrictions })
    }

    pub fn shape(&self) -> &GrassmannianShape {
        &self.shape
    }

    pub fn get(&self, at: &PivotSubset) -> Option<&Polynomial> {
        self.restrictions.get(at)
    }

    /// Restriction at `p_I` (zero when not stored).
    pub fn restriction(&self, at: &PivotSubset) -> Polynomial {
        self.restrictions.get(at).cloned().unwrap_or_default()
    }

    /// Fixed points with a nonzero restriction, ascending.
    pub fn support(&self) -> impl Iterator<Item = (&PivotSubset, &Polynomial)> {
        self.restrictions.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.restrictions.is_empty()
    }

    fn check_shape(&self, other: &EqClass) -> Result<()> {
        if self.shape == other.shape {
            Ok(())
        } else {
            Err(Error::ShapeMismatch {
                left: (self.shape.k(), self.shape.n()),
                right: (other.shape.k(), other.shape.n()),
            })
        }
    }

    pub fn add(&self, other: &EqClass) -> Result<EqClass> {
        self.check_shape(other)?;
        let mut restrictions = self.restrictions.clone();
        for (s, p) in &other.restrictions {
            let e = restrictions.entry(s.clone()).or_default();
            *e += p;
            if e.is_zero() {
                restrictions.remove(s);
            }
        }
        Ok(EqClass {
            shape: self.shape,
            restrictions,
        })
    }

    pub fn sub(&self, other: &EqClass) -> Result<EqClass> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> EqClass {
        self.map(|_, p| -p)
    }

    /// Pointwise product; fixed points are multiplied in parallel.
    pub fn mul(&self, other: &EqClass) -> Result<EqClass> {
        self.check_shape(other)?;
        let common: Vec<(&PivotSubset, &Polynomial, &Polynomial)> = self
            .restrictions
            .iter()
            .filter_map(|(s, a)| other.restrictions.get(s).map(|b| (s, a, b)))
            .collect();
        let products: Vec<(PivotSubset, Polynomial)> = common
            .into_par_iter()
            .map(|(s, a, b)| (s.clone(), a * b))
            .collect();
        Ok(EqClass {
            shape: self.shape,
            restrictions: products.into_iter().filter(|(_, p)| !p.is_zero()).collect(),
        })
    }

    pub fn pow(&self, e: u32) -> EqClass {
        self.map(|_, p| p.pow(e))
            .with_missing_as(if e == 0 { Some(Polynomial::one()) } else { None })
    }

    fn with_missing_as(mut self, fill: Option<Polynomial>) -> EqClass {
        if let Some(fill) = fill {
            for s in self.shape.subsets() {
                self.restrictions.entry(s).or_insert_with(|| fill.clone());
            }
        }
        self
    }

    /// Multiplication by a scalar in `Λ`.
    pub fn scale(&self, c: &Polynomial) -> EqClass {
        self.map(|_, p| p * c)
    }

    /// Applies `f` to every stored restriction; zero results are dropped.
    pub fn map<F: FnMut(&PivotSubset, &Polynomial) -> Polynomial>(&self, mut f: F) -> EqClass {
        EqClass {
            shape: self.shape,
            restrictions: self
                .restrictions
                .iter()
                .map(|(s, p)| (s.clone(), f(s, p)))
                .filter(|(_, p)| !p.is_zero())
                .collect(),
        }
    }

    /// Whether every restriction is homogeneous of degree `d`.
    pub fn is_homogeneous_of_degree(&self, d: u32) -> bool {
        self.restrictions
            .values()
            .all(|p| p.is_homogeneous() && p.degree() == Some(d))
    }
}

/// All `C(n, k)` fixed points, one per line: `{1,2}: t3 - t1`.
impl fmt::Display for EqClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.shape.subsets().iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{s}: {}", self.restriction(s))?;
        }
        Ok(())
    }
}

/// `{"n":4,"k":2,"restrictions":{"{1,2}":"...", ...}}` with every fixed point.
impl serde::Serialize for EqClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Restrictions<'a>(&'a EqClass);
        impl serde::Serialize for Restrictions<'_> {
            fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let subsets = self.0.shape.subsets();
                let mut map = s.serialize_map(Some(subsets.len()))?;
                for sub in &subsets {
                    map.serialize_entry(&sub.to_string(), &self.0.restriction(sub))?;
                }
                map.end()
            }
        }
        let mut map = s.serialize_map(Some(3))?;
        map.serialize_entry("n", &self.shape.n())?;
        map.serialize_entry("k", &self.shape.k())?;
        map.serialize_entry("restrictions", &Restrictions(self))?;
        map.end()
    }
}

impl crate::expr::Algebra for EqClass {
    type Error = Error;

    fn add(self, rhs: Self) -> Result<Self> {
        EqClass::add(&self, &rhs)
    }

    fn sub(self, rhs: Self) -> Result<Self> {
        EqClass::sub(&self, &rhs)
    }

    fn mul(self, rhs: Self) -> Result<Self> {
        EqClass::mul(&self, &rhs)
    }

    fn neg(self) -> Self {
        EqClass::neg(&self)
    }
}

/// `∏_{i∈I, j∉I, i<j} (t_j - t_i)`: the restriction of `[Ω_I]` at `p_I`.
pub fn euler_class(at: &PivotSubset, shape: &GrassmannianShape) -> Polynomial {
    crate::combinatorics::normal_weights(at, shape)
        .iter()
        .map(LinearForm::to_polynomial)
        .product()
}

/// Product of all tangent weights at `p_I`.
pub fn tangent_euler_class(at: &PivotSubset, shape: &GrassmannianShape) -> Polynomial {
    tangent_weights(at, shape)
        .iter()
        .map(LinearForm::to_polynomial)
        .product()
}

/// `[Ω_λ]^T`, restricting at `p_J` to `s_λ(t^{λ(J)} | u)`.
pub fn schubert_class(lambda: &Partition, shape: &GrassmannianShape) -> Result<EqClass> {
    shape.check_fits(lambda)?;
    let values: Vec<(PivotSubset, Polynomial)> = shape
        .subsets()
        .into_par_iter()
        .map(|s| {
            let mu = subset_to_partition(&s, shape);
            restrict_schur(lambda, &mu, shape).map(|p| (s, p))
        })
        .collect::<Result<_>>()?;
    EqClass::from_restrictions(*shape, values)
}

/// `t_i -> t_{n+1-i}` on values and `I -> {n+1-i}` on keys.
pub fn reverse_class(c: &EqClass) -> EqClass {
    let shape = *c.shape();
    let n = shape.n() as u32;
    let restrictions = c
        .support()
        .map(|(s, p)| {
            let flipped = p.substitute_partial(|v| {
                (v.family() == Family::T).then(|| Polynomial::t(n + 1 - v.index()))
            });
            (s.reversed(&shape), flipped)
        })
        .collect();
    EqClass { shape, restrictions }
}

/// The dual of `λ` under the pairing: the partition of `w_0(I(λ))`, i.e. the
/// complement of `λ` in the box rotated by 180 degrees.
pub fn dual_partition(lambda: &Partition, shape: &GrassmannianShape) -> Result<Partition> {
    let at = partition_to_subset(lambda, shape)?;
    Ok(subset_to_partition(&at.reversed(shape), shape))
}

/// `[Ω̃_λ]^T`, the opposite Schubert class: the reversal of `[Ω_{λ̃}]^T`.
/// Its restriction at `p_{I(λ)}` is `∏_{i∈I, j∉I, i>j} (t_j - t_i)`.
pub fn opposite_schubert_class(lambda: &Partition, shape: &GrassmannianShape) -> Result<EqClass> {
    let dual = dual_partition(lambda, shape)?;
    Ok(reverse_class(&schubert_class(&dual, shape)?))
}

/// The ζ class on `P^{n-1} = Gr(1, n)`, restricting to `-t_i` at `p_{i}`.
pub fn projective_zeta(n: usize) -> Result<EqClass> {
    let shape = GrassmannianShape::new(n, 1)?;
    Ok(EqClass::from_fn(shape, |s| -Polynomial::t(s.elements()[0] as u32)))
}

/// Equivariant class of the fixed point `p_I`.
pub fn point_class(at: &PivotSubset, shape: &GrassmannianShape) -> EqClass {
    EqClass::from_fn(*shape, |s| {
        if s == at {
            tangent_euler_class(at, shape)
        } else {
            Polynomial::zero()
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TautologicalBundle {
    /// Tautological subbundle, fiber weights `t_j`, `j ∈ J`.
    Sub,
    /// Its dual, weights `-t_j`, `j ∈ J`.
    SubDual,
    /// Universal quotient, weights `t_j`, `j ∉ J`.
    Quotient,
}

impl TautologicalBundle {
    pub fn rank(self, shape: &GrassmannianShape) -> usize {
        match self {
            TautologicalBundle::Sub | TautologicalBundle::SubDual => shape.k(),
            TautologicalBundle::Quotient => shape.cols(),
        }
    }

    pub fn fiber_weights(self, at: &PivotSubset, shape: &GrassmannianShape) -> Vec<Polynomial> {
        match self {
            TautologicalBundle::Sub => at.elements().iter().map(|&j| Polynomial::t(j as u32)).collect(),
            TautologicalBundle::SubDual => at.elements().iter().map(|&j| -Polynomial::t(j as u32)).collect(),
            TautologicalBundle::Quotient => at
                .complement(shape)
                .into_iter()
                .map(|j| Polynomial::t(j as u32))
                .collect(),
        }
    }
}

/// `c_i^T` of a tautological bundle: `e_i` of its fiber weights at each point.
pub fn chern_class_taut(bundle: TautologicalBundle, i: usize, shape: &GrassmannianShape) -> Result<EqClass> {
    let rank = bundle.rank(shape);
    if i > rank {
        return Err(Error::IndexOutOfRange { index: i, max: rank });
    }
    Ok(EqClass::from_fn(*shape, |s| {
        elementary_symmetric_polys(i, &bundle.fiber_weights(s, shape)).expect("checked rank")
    }))
}
