use thiserror::Error;

use crate::poly::{Polynomial, Var};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not divisible: remainder {remainder}")]
    NotDivisible { remainder: Polynomial },
    #[error("not a polynomial: ({numerator}) / {denominator}")]
    NotPolynomial {
        numerator: Polynomial,
        denominator: String,
    },
    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("no image given for variable {0}")]
    UnmappedVariable(Var),
    #[error("partition {partition} does not fit in the {rows}x{cols} box")]
    DoesNotFitBox {
        partition: String,
        rows: usize,
        cols: usize,
    },
    #[error("partition {partition} has more than {k} rows")]
    TooManyRows { partition: String, k: usize },
    #[error("shape mismatch: Gr({}, {}) vs Gr({}, {})", .left.0, .left.1, .right.0, .right.1)]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("class is not in the Schubert span: restriction at {subset} leaves remainder {remainder}")]
    NotInSpan { subset: String, remainder: Polynomial },
    #[error("invalid Grassmannian Gr({k}, {n}): need 1 <= k <= n - 1")]
    InvalidShape { n: usize, k: usize },
    #[error("invalid pivot subset: {0}")]
    InvalidSubset(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("linear form is identically zero")]
    ZeroLinearForm,
    #[error("parse error: {0}")]
    Parse(String),
}
