//! Class expressions for `--class`.
//!
//! Sums, differences, products and powers of
//! - `s[2,1]` or `s21` (one digit per part, `s0` for the empty partition): Schubert classes
//! - `o[2,1]` or `o21`: opposite Schubert classes
//! - `zeta`: `c_1` of the dual tautological subbundle
//! - `ind[1,3]`: 1 at the fixed point `{1,3}` and 0 elsewhere (not a class in general)
//! - `t3`: the constant class `t_3`
//! - integers

use eqschub_core::expr::{Expr, Leaf};
use eqschub_core::combinatorics::parse_subset;
use eqschub_core::gkm::{opposite_schubert_class, schubert_class, EqClass};
use eqschub_core::{Error, GrassmannianShape, Partition, Polynomial, Var};

use crate::zeta_class;

fn partition_suffix(rest: &str) -> Result<Partition, Error> {
    if let Some(inner) = rest.strip_prefix('[') {
        let inner = inner
            .strip_suffix(']')
            .ok_or_else(|| Error::Parse(format!("unclosed bracket in {rest:?}")))?;
        return inner.parse();
    }
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("bad partition suffix {rest:?}")));
    }
    Partition::new(rest.bytes().map(|b| (b - b'0') as usize).collect())
}

fn atom(name: &str, shape: &GrassmannianShape) -> Result<EqClass, Error> {
    if name == "zeta" {
        return zeta_class(shape);
    }
    if let Some(rest) = name.strip_prefix("ind") {
        let at = parse_subset(rest.trim_start_matches('[').trim_end_matches(']'), shape)?;
        return EqClass::from_restrictions(*shape, [(at, Polynomial::one())]);
    }
    if let Some(rest) = name.strip_prefix('s') {
        return schubert_class(&partition_suffix(rest)?, shape);
    }
    if let Some(rest) = name.strip_prefix('o') {
        return opposite_schubert_class(&partition_suffix(rest)?, shape);
    }
    if let Some(v) = Var::parse(name).filter(|v| v.family() == eqschub_core::poly::Family::T) {
        if v.index() as usize > shape.n() {
            return Err(Error::IndexOutOfRange {
                index: v.index() as usize,
                max: shape.n(),
            });
        }
        return Ok(EqClass::constant(*shape, Polynomial::var(v)));
    }
    Err(Error::Parse(format!("unknown class {name:?}")))
}

pub fn parse_class(input: &str, shape: &GrassmannianShape) -> Result<EqClass, Error> {
    Expr::parse(input)?.evaluate(&mut |leaf| match leaf {
        Leaf::Int(n) => Ok(EqClass::constant(*shape, Polynomial::constant(n.clone()))),
        Leaf::Atom(name) => atom(name, shape),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use eqschub_core::gkm::projective_zeta;

    fn shape(n: usize, k: usize) -> GrassmannianShape {
        GrassmannianShape::new(n, k).unwrap()
    }

    #[test]
    fn atoms() {
        let sh = shape(5, 2);
        let lam: Partition = "2,1".parse().unwrap();
        let s21 = schubert_class(&lam, &sh).unwrap();
        assert_eq!(parse_class("s21", &sh).unwrap(), s21);
        assert_eq!(parse_class("s[2,1]", &sh).unwrap(), s21);
        assert_eq!(parse_class("s0", &sh).unwrap(), EqClass::one(sh));
        assert_eq!(parse_class("s[]", &sh).unwrap(), EqClass::one(sh));
        assert_eq!(parse_class("o[2,1]", &sh).unwrap(), opposite_schubert_class(&lam, &sh).unwrap());
        assert_eq!(parse_class("zeta", &shape(4, 1)).unwrap(), projective_zeta(4).unwrap());
        assert!(parse_class("t6", &sh).is_err());
        assert!(parse_class("s4", &sh).is_err());
        assert!(parse_class("q1", &sh).is_err());
        assert!(parse_class("s[2,1", &sh).is_err());
        let ind = parse_class("ind[1,3]", &sh).unwrap();
        assert_eq!(ind.support().count(), 1);
        assert!(parse_class("ind[1,6]", &sh).is_err());
    }

    #[test]
    fn arithmetic() {
        let sh = shape(4, 2);
        let s1 = parse_class("s1", &sh).unwrap();
        assert_eq!(parse_class("s1^2", &sh).unwrap(), s1.mul(&s1).unwrap());
        assert_eq!(
            parse_class("2*s1 - t1", &sh).unwrap(),
            s1.add(&s1).unwrap().sub(&EqClass::constant(sh, Polynomial::t(1))).unwrap()
        );
        assert_eq!(parse_class("s1^0", &sh).unwrap(), EqClass::one(sh));
        assert_eq!(parse_class("-(s2 + s11) + s2 + s11", &sh).unwrap(), EqClass::zero(sh));
    }
}
