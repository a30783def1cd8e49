use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, Var};
use crate::error::{Error, Result};
use crate::expr::{Algebra, Expr, Leaf};

/// Sparse multivariate polynomial with big-integer coefficients.
///
/// No stored coefficient is zero, so structural equality is mathematical
/// equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial::default()
    }

    pub fn one() -> Polynomial {
        Polynomial::constant(1)
    }

    pub fn constant<C: Into<BigInt>>(c: C) -> Polynomial {
        Polynomial::term(Monomial::one(), c)
    }

    pub fn var(v: Var) -> Polynomial {
        Polynomial::term(Monomial::var(v), 1)
    }

    /// `t_index` as a polynomial.
    pub fn t(index: u32) -> Polynomial {
        Polynomial::var(Var::t(index))
    }

    pub fn term<C: Into<BigInt>>(m: Monomial, c: C) -> Polynomial {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(terms: I) -> Polynomial {
        let mut p = Polynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending term order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The constant term.
    pub fn constant_term(&self) -> BigInt {
        self.coefficient(&Monomial::one())
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// All variables with a nonzero exponent somewhere.
    pub fn variables(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.vars()).collect()
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigInt) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact quotient `self / divisor`, by single-divisor multivariate
    /// division in graded-lexicographic order.
    ///
    /// Fails with [`Error::NotDivisible`] carrying the full remainder when it
    /// is nonzero.
    pub fn exact_divide(&self, divisor: &Polynomial) -> Result<Polynomial> {
        let (lead_m, lead_c) = divisor
            .leading_term()
            .map(|(m, c)| (m.clone(), c.clone()))
            .expect("division by the zero polynomial");
        if divisor.terms.len() == 1 && lead_c.is_one() && lead_m.is_one() {
            return Ok(self.clone());
        }
        let tail: Vec<(Monomial, BigInt)> = divisor
            .terms
            .iter()
            .rev()
            .skip(1)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();

        let mut rest = self.terms.clone();
        let mut quotient = BTreeMap::new();
        let mut remainder = Polynomial::zero();
        while let Some((m, c)) = rest.pop_last() {
            let step = m.checked_div(&lead_m).and_then(|qm| {
                let (qc, r) = c.div_rem(&lead_c);
                r.is_zero().then_some((qm, qc))
            });
            match step {
                Some((qm, qc)) => {
                    for (tm, tc) in &tail {
                        let prod = qm.mul(tm);
                        let delta = -(&qc * tc);
                        match rest.entry(prod) {
                            Entry::Vacant(e) => {
                                e.insert(delta);
                            }
                            Entry::Occupied(mut e) => {
                                *e.get_mut() += delta;
                                if e.get().is_zero() {
                                    e.remove();
                                }
                            }
                        }
                    }
                    quotient.insert(qm, qc);
                }
                None => remainder.add_term(m, c),
            }
        }
        if remainder.is_zero() {
            Ok(Polynomial { terms: quotient })
        } else {
            Err(Error::NotDivisible { remainder })
        }
    }

    /// Image under the ring homomorphism sending each variable to `images(v)`.
    pub fn substitute_with<F>(&self, mut images: F) -> Result<Polynomial>
    where
        F: FnMut(Var) -> Option<Polynomial>,
    {
        let mut image_of: HashMap<Var, Vec<Polynomial>> = HashMap::new();
        for v in self.variables() {
            let img = images(v).ok_or(Error::UnmappedVariable(v))?;
            image_of.insert(v, vec![Polynomial::one(), img]);
        }
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut prod = Polynomial::constant(c.clone());
            for &(v, e) in m.powers() {
                let powers = image_of.get_mut(&v).expect("collected above");
                while powers.len() <= e as usize {
                    let next = &powers[powers.len() - 1] * &powers[1];
                    powers.push(next);
                }
                prod = &prod * &powers[e as usize];
                if prod.is_zero() {
                    break;
                }
            }
            out += prod;
        }
        Ok(out)
    }

    pub fn substitute(&self, map: &HashMap<Var, Polynomial>) -> Result<Polynomial> {
        self.substitute_with(|v| map.get(&v).cloned())
    }

    /// Substitutes only the variables `images` answers for; others stay.
    pub fn substitute_partial<F>(&self, mut images: F) -> Polynomial
    where
        F: FnMut(Var) -> Option<Polynomial>,
    {
        self.substitute_with(|v| Some(images(v).unwrap_or_else(|| Polynomial::var(v))))
            .expect("total map")
    }

    /// Evaluates at an integer point.
    pub fn evaluate<F>(&self, mut value: F) -> Result<BigInt>
    where
        F: FnMut(Var) -> Option<BigInt>,
    {
        let p = self.substitute_with(|v| value(v).map(Polynomial::constant))?;
        Ok(p.constant_term())
    }

    pub fn all_coefficients_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Homogeneous component of the given degree.
    pub fn homogeneous_part(&self, degree: u32) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }
}

impl From<BigInt> for Polynomial {
    fn from(c: BigInt) -> Self {
        Polynomial::constant(c)
    }
}

impl From<i64> for Polynomial {
    fn from(c: i64) -> Self {
        Polynomial::constant(c)
    }
}

impl From<Var> for Polynomial {
    fn from(v: Var) -> Self {
        Polynomial::var(v)
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl AddAssign<Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: Polynomial) {
        if self.terms.len() < rhs.terms.len() {
            let lhs = std::mem::replace(self, rhs);
            *self += lhs;
            return;
        }
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl SubAssign<Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: Polynomial) {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        self += rhs;
        self
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(mut self, rhs: Polynomial) -> Polynomial {
        self -= rhs;
        self
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(mut self) -> Polynomial {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -self.clone()
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let (small, large) = if self.terms.len() <= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        if small.terms.len() == 1 {
            let (m, c) = small.terms.iter().next().expect("one term");
            return large.mul_monomial(m, c);
        }
        let mut acc: HashMap<Monomial, BigInt> =
            HashMap::with_capacity(small.terms.len() * large.terms.len());
        for (ma, ca) in &small.terms {
            for (mb, cb) in &large.terms {
                let prod = ca * cb;
                match acc.entry(ma.mul(mb)) {
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += prod;
                    }
                }
            }
        }
        Polynomial {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Mul<&Polynomial> for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        &self * rhs
    }
}

impl std::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Polynomial {
        iter.fold(Polynomial::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for Polynomial {
    fn product<I: Iterator<Item = Polynomial>>(iter: I) -> Polynomial {
        iter.fold(Polynomial::one(), |a, b| &a * &b)
    }
}

/// Canonical text: terms by descending term order, e.g. `-3*t1^2*t2 + t1 - 4`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl Algebra for Polynomial {
    type Error = Error;

    fn add(self, rhs: Self) -> Result<Self> {
        Ok(self + rhs)
    }

    fn sub(self, rhs: Self) -> Result<Self> {
        Ok(self - rhs)
    }

    fn mul(self, rhs: Self) -> Result<Self> {
        Ok(&self * &rhs)
    }

    fn neg(self) -> Self {
        -self
    }
}

/// Parses the canonical text format, and more generally any expression in
/// the variables `t_i, x_i, u_i, y_i` built from `+ - * ^` and parentheses.
impl FromStr for Polynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Polynomial> {
        Expr::parse(s)?.evaluate(&mut |leaf| match leaf {
            Leaf::Int(n) => Ok(Polynomial::constant(n.clone())),
            Leaf::Atom(a) => Var::parse(a)
                .map(Polynomial::var)
                .ok_or_else(|| Error::Parse(format!("unknown variable {a:?}"))),
        })
    }
}

impl serde::Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&p("t1 + t2") * &p("t1 - t2"), p("t1^2 - t2^2"));
    }

    #[test]
    fn additive_identity() {
        let a = p("3*t1*t2 - x1 + 7");
        assert_eq!(&a + &Polynomial::zero(), a);
    }

    #[test]
    fn vandermonde_round_trip() {
        let f1 = p("t2 - t1");
        let f2 = p("t3 - t1");
        let f3 = p("t3 - t2");
        let v = &(&f1 * &f2) * &f3;
        let q = v.exact_divide(&f3).unwrap();
        let q = q.exact_divide(&f2).unwrap();
        let q = q.exact_divide(&f1).unwrap();
        assert!(q.is_one());
    }

    #[test]
    fn exact_divide_examples() {
        assert_eq!(p("t2^2 - t1^2").exact_divide(&p("t2 - t1")).unwrap(), p("t1 + t2"));
        let a = p("t1^3 - 2*u4 + 5");
        assert_eq!(a.exact_divide(&Polynomial::one()).unwrap(), a);
        match p("t2 - t1").exact_divide(&p("t3 - t1")) {
            Err(Error::NotDivisible { remainder }) => assert!(!remainder.is_zero()),
            other => panic!("expected NotDivisible, got {other:?}"),
        }
    }

    #[test]
    fn exact_divide_rejects_non_integral_quotient() {
        assert!(p("t1").exact_divide(&Polynomial::constant(2)).is_err());
        assert_eq!(p("4*t1 + 2").exact_divide(&Polynomial::constant(2)).unwrap(), p("2*t1 + 1"));
    }

    #[test]
    fn canonical_rendering() {
        assert_eq!(p("t2 - t1").to_string(), "t2 - t1");
        assert_eq!(p("-3*t1^2*t2").to_string(), "-3*t1^2*t2");
        assert_eq!(p("t1 + t2*t2 - 4").to_string(), "t2^2 + t1 - 4");
        assert_eq!(p("x1 - u1").to_string(), "-u1 + x1");
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert_eq!(p("-1").to_string(), "-1");
    }

    #[test]
    fn degree_of_zero_is_sentinel() {
        assert_eq!(Polynomial::zero().degree(), None);
        assert_eq!(Polynomial::one().degree(), Some(0));
        assert_eq!(p("t1^2*t3 + t2").degree(), Some(3));
    }

    #[test]
    fn substitute_examples() {
        let q = p("x1 - u1");
        let out = q
            .substitute_with(|v| match v {
                v if v == Var::x(1) => Some(-Polynomial::t(1)),
                v if v == Var::u(1) => Some(-Polynomial::t(2)),
                _ => None,
            })
            .unwrap();
        assert_eq!(out, p("t2 - t1"));

        let a = p("t1^2*x2 - 3*u1*y4 + 1");
        let id = a.substitute_with(|v| Some(Polynomial::var(v))).unwrap();
        assert_eq!(id, a);

        let y = p("t1")
            .substitute_with(|v| (v == Var::t(1)).then(|| p("t2 - y1")))
            .unwrap();
        assert_eq!(y, p("t2 - y1"));

        assert_eq!(
            p("t1 + t2").substitute_with(|v| (v == Var::t(1)).then(Polynomial::one)),
            Err(Error::UnmappedVariable(Var::t(2)))
        );
    }

    #[test]
    fn parse_rejects_unknown_names() {
        assert!("z1 + t1".parse::<Polynomial>().is_err());
        assert!("t0".parse::<Polynomial>().is_err());
    }

    fn arb_poly() -> impl Strategy<Value = Polynomial> {
        let var = (0u32..3, 1u32..4).prop_map(|(f, i)| match f {
            0 => Var::t(i),
            1 => Var::x(i),
            _ => Var::u(i),
        });
        let mono = prop::collection::vec((var, 0u32..3), 0..3).prop_map(Monomial::from_powers);
        prop::collection::vec((mono, -5i64..6), 0..6).prop_map(|ts| {
            Polynomial::from_terms(ts.into_iter().map(|(m, c)| (m, BigInt::from(c))))
        })
    }

    proptest! {
        #[test]
        fn add_sub_cancel(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!(&(&a + &b) - &b, a);
        }

        #[test]
        fn mul_then_divide(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let ab = &a * &b;
            prop_assert_eq!(ab.exact_divide(&b).unwrap(), a);
        }

        #[test]
        fn text_round_trip(a in arb_poly()) {
            prop_assert_eq!(a.to_string().parse::<Polynomial>().unwrap(), a);
        }

        #[test]
        fn substitute_is_homomorphism(a in arb_poly(), b in arb_poly(),
                                      imgs in prop::collection::vec(arb_poly(), 9)) {
            let map = |v: Var| {
                let f = match v.family() {
                    crate::poly::Family::T => 0,
                    crate::poly::Family::X => 1,
                    _ => 2,
                };
                Some(imgs[f * 3 + v.index() as usize - 1].clone())
            };
            let lhs = (&a * &b).substitute_with(map).unwrap();
            let rhs = &a.substitute_with(map).unwrap() * &b.substitute_with(map).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
