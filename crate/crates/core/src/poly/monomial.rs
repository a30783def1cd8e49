use std::cmp::Ordering;
use std::fmt;

/// Variable families, listed in term-order position: every `t` variable is
/// smaller than every `x` variable, and so on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// Equivariant parameters t_1..t_n.
    T,
    /// Chern roots of the dual tautological bundle.
    X,
    /// Shift variables of double Schur functions.
    U,
    /// Simple-root differences y_i = t_{i+1} - t_i.
    Y,
}

impl Family {
    pub fn symbol(self) -> char {
        match self {
            Family::T => 't',
            Family::X => 'x',
            Family::U => 'u',
            Family::Y => 'y',
        }
    }

    pub fn from_symbol(c: char) -> Option<Family> {
        match c {
            't' => Some(Family::T),
            'x' => Some(Family::X),
            'u' => Some(Family::U),
            'y' => Some(Family::Y),
            _ => None,
        }
    }
}

/// A single indeterminate, e.g. `t3`. Indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    family: Family,
    index: u32,
}

impl Var {
    pub fn new(family: Family, index: u32) -> Var {
        assert!(index >= 1, "variable indices start at 1");
        Var { family, index }
    }

    pub fn t(index: u32) -> Var {
        Var::new(Family::T, index)
    }

    pub fn x(index: u32) -> Var {
        Var::new(Family::X, index)
    }

    pub fn u(index: u32) -> Var {
        Var::new(Family::U, index)
    }

    pub fn y(index: u32) -> Var {
        Var::new(Family::Y, index)
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn index(self) -> u32 {
        self.index
    }

    /// Parses `t12`, `x1`, ... Returns `None` for anything else.
    pub fn parse(s: &str) -> Option<Var> {
        let mut chars = s.chars();
        let family = Family::from_symbol(chars.next()?)?;
        let rest = chars.as_str();
        if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let index: u32 = rest.parse().ok()?;
        (index >= 1).then(|| Var::new(family, index))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.symbol(), self.index)
    }
}

/// A power product of variables.
///
/// Stored as `(variable, exponent)` pairs sorted by variable, exponents
/// nonzero. Ordered graded-lexicographically: total degree first, then the
/// exponent of the largest variable, and so on downward.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    degree: u32,
    powers: Vec<(Var, u32)>,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    pub fn var(v: Var) -> Monomial {
        Monomial::from_powers([(v, 1)])
    }

    /// Builds a monomial from arbitrary (possibly repeated, zero) powers.
    pub fn from_powers<I: IntoIterator<Item = (Var, u32)>>(powers: I) -> Monomial {
        let mut powers: Vec<(Var, u32)> = powers.into_iter().filter(|&(_, e)| e > 0).collect();
        powers.sort_by_key(|&(v, _)| v);
        powers.dedup_by(|b, a| {
            if a.0 == b.0 {
                a.1 += b.1;
                true
            } else {
                false
            }
        });
        let degree = powers.iter().map(|&(_, e)| e).sum();
        Monomial { degree, powers }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.powers.is_empty()
    }

    pub fn powers(&self) -> &[(Var, u32)] {
        &self.powers
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.powers
            .binary_search_by_key(&v, |&(w, _)| w)
            .map(|i| self.powers[i].1)
            .unwrap_or(0)
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.powers.iter().map(|&(v, _)| v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut powers = Vec::with_capacity(self.powers.len() + other.powers.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.powers, &other.powers);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    powers.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    powers.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    powers.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        powers.extend_from_slice(&a[i..]);
        powers.extend_from_slice(&b[j..]);
        Monomial {
            degree: self.degree + other.degree,
            powers,
        }
    }

    /// `self / other` if `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        if other.degree > self.degree {
            return None;
        }
        let mut powers = Vec::with_capacity(self.powers.len());
        let mut j = 0;
        for &(v, e) in &self.powers {
            if j < other.powers.len() && other.powers[j].0 < v {
                return None;
            }
            if j < other.powers.len() && other.powers[j].0 == v {
                let d = other.powers[j].1;
                j += 1;
                match e.cmp(&d) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => powers.push((v, e - d)),
                }
            } else {
                powers.push((v, e));
            }
        }
        if j < other.powers.len() {
            return None;
        }
        Some(Monomial {
            degree: self.degree - other.degree,
            powers,
        })
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            let mut a = self.powers.iter().rev();
            let mut b = other.powers.iter().rev();
            loop {
                match (a.next(), b.next()) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (Some(&(va, ea)), Some(&(vb, eb))) => {
                        if va != vb {
                            return va.cmp(&vb);
                        }
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                    }
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.powers.is_empty() {
            return write!(f, "1");
        }
        for (i, &(v, e)) in self.powers.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: &[(Var, u32)]) -> Monomial {
        Monomial::from_powers(p.iter().copied())
    }

    #[test]
    fn grlex_order() {
        let t1 = Var::t(1);
        let t2 = Var::t(2);
        let x1 = Var::x(1);
        assert!(m(&[(t2, 1)]) > m(&[(t1, 1)]));
        assert!(m(&[(x1, 1)]) > m(&[(t2, 1)]));
        assert!(m(&[(t1, 2)]) > m(&[(t2, 1)]));
        assert!(m(&[(t2, 2)]) > m(&[(t1, 1), (t2, 1)]));
        assert!(m(&[(t1, 1), (t2, 1)]) > m(&[(t1, 2)]));
        assert!(m(&[]) < m(&[(t1, 1)]));
    }

    #[test]
    fn mul_and_div() {
        let a = m(&[(Var::t(1), 2), (Var::u(3), 1)]);
        let b = m(&[(Var::t(1), 1), (Var::t(2), 1)]);
        let ab = a.mul(&b);
        assert_eq!(ab.to_string(), "t1^3*t2*u3");
        assert_eq!(ab.checked_div(&b), Some(a.clone()));
        assert_eq!(ab.checked_div(&a), Some(b.clone()));
        assert_eq!(a.checked_div(&b), None);
        assert_eq!(a.checked_div(&Monomial::one()), Some(a));
    }

    #[test]
    fn var_parse() {
        assert_eq!(Var::parse("t12"), Some(Var::t(12)));
        assert_eq!(Var::parse("y1"), Some(Var::y(1)));
        assert_eq!(Var::parse("t0"), None);
        assert_eq!(Var::parse("z1"), None);
        assert_eq!(Var::parse("t"), None);
    }
}
