//! Exact subtraction-free rational expressions.
//!
//! Everything here is immutable and exact: coefficients are [`Rational`]s,
//! there is no floating point anywhere, and the constant zero cannot be
//! represented as a [`PosRatExpr`].

mod parse;
mod poly;
mod ratexpr;

use std::collections::BTreeMap;

use crate::rational::Rational;

pub use parse::{parse_expr, print_expr, ParseError, ParseErrorKind};
pub use poly::{Exponents, LaurentPoly, Monomial, PosPoly};
pub use ratexpr::PosRatExpr;

/// Variable assignment used for exact evaluation.
pub type Point = BTreeMap<String, Rational>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("denominator evaluates to zero")]
    ZeroDenominator,
    #[error("expression is identically zero")]
    ZeroExpression,
    #[error("positivity violated: {0}")]
    NotPositive(String),
}

/// Builds a [`Point`] from `(name, value)` pairs.
pub fn point<'a, I: IntoIterator<Item = (&'a str, Rational)>>(pairs: I) -> Point {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// `add`, `mul` and `div` as free functions.
pub fn add(a: &PosRatExpr, b: &PosRatExpr) -> PosRatExpr {
    a.add(b)
}

pub fn mul(a: &PosRatExpr, b: &PosRatExpr) -> PosRatExpr {
    a.mul(b)
}

pub fn div(a: &PosRatExpr, b: &PosRatExpr) -> PosRatExpr {
    a.div(b)
}

pub fn expr_equal(a: &PosRatExpr, b: &PosRatExpr) -> bool {
    a.equals(b)
}
