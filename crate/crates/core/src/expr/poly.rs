//! Sparse multivariate (Laurent) polynomials over exact rationals.

use std::collections::BTreeMap;
use std::fmt;

use crate::rational::Rational;

use super::{ExprError, Point};

/// A sparse exponent vector keyed by variable name. Zero exponents are never
/// stored, so structural equality is equality of monomials.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Exponents(BTreeMap<String, i32>);

impl Exponents {
    pub fn one() -> Self {
        Exponents(BTreeMap::new())
    }

    pub fn var(name: &str) -> Self {
        Exponents::from_pairs([(name, 1)])
    }

    pub fn from_pairs<'a, I: IntoIterator<Item = (&'a str, i32)>>(pairs: I) -> Self {
        let mut out = Exponents::one();
        for (name, e) in pairs {
            out.bump(name, e);
        }
        out
    }

    fn bump(&mut self, name: &str, by: i32) {
        if by == 0 {
            return;
        }
        let slot = self.0.entry(name.to_string()).or_insert(0);
        *slot += by;
        if *slot == 0 {
            self.0.remove(name);
        }
    }

    pub fn get(&self, name: &str) -> i32 {
        self.0.get(name).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, i32)> {
        self.0.iter().map(|(k, &v)| (k.as_str(), v))
    }

    pub fn mul(&self, other: &Exponents) -> Exponents {
        let mut out = self.clone();
        for (name, e) in other.iter() {
            out.bump(name, e);
        }
        out
    }

    pub fn pow(&self, k: i32) -> Exponents {
        Exponents(
            self.0
                .iter()
                .filter(|_| k != 0)
                .map(|(n, &e)| (n.clone(), e * k))
                .collect(),
        )
    }

    pub fn is_polynomial(&self) -> bool {
        self.0.values().all(|&e| e >= 0)
    }

    pub fn total_degree(&self) -> i64 {
        self.0.values().map(|&e| e as i64).sum()
    }

    pub fn eval(&self, point: &Point) -> Result<Rational, ExprError> {
        let mut acc = Rational::one();
        for (name, e) in self.iter() {
            let v = point
                .get(name)
                .ok_or_else(|| ExprError::UnboundVariable(name.to_string()))?;
            if v.is_zero() && e < 0 {
                return Err(ExprError::ZeroDenominator);
            }
            acc = acc * v.pow(e);
        }
        Ok(acc)
    }
}

impl fmt::Debug for Exponents {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.0.iter()).finish()
    }
}

/// A coefficient times a (Laurent) monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub coeff: Rational,
    pub exps: Exponents,
}

/// A finite sum of monomials with nonzero rational coefficients. The zero
/// polynomial is the empty map; negative exponents are allowed.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Exponents, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(Rational::one(), Exponents::one())
    }

    pub fn constant(c: Rational) -> Self {
        LaurentPoly::monomial(c, Exponents::one())
    }

    pub fn var(name: &str) -> Self {
        LaurentPoly::monomial(Rational::one(), Exponents::var(name))
    }

    pub fn monomial(coeff: Rational, exps: Exponents) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(coeff, exps);
        p
    }

    pub fn add_term(&mut self, coeff: Rational, exps: Exponents) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(c) => {
                let sum = &*c + &coeff;
                if sum.is_zero() {
                    self.terms.remove(&exps);
                } else {
                    *c = sum;
                }
            }
            None => {
                self.terms.insert(exps, coeff);
            }
        }
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
                .is_some_and(|(e, c)| e.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending exponent-vector order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn all_positive(&self) -> bool {
        self.terms.values().all(Rational::is_positive)
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(Exponents::is_polynomial)
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(c.clone(), e.clone());
        }
        out
    }

    pub fn scale(&self, k: &Rational) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e, c) in self.terms() {
            out.add_term(c * k, e.clone());
        }
        out
    }

    pub fn mul_monomial(&self, coeff: &Rational, exps: &Exponents) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e, c) in self.terms() {
            out.add_term(c * coeff, e.mul(exps));
        }
        out
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                out.add_term(c1 * c2, e1.mul(e2));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut out = LaurentPoly::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Variables occurring with a nonzero exponent somewhere.
    pub fn variables(&self) -> Vec<String> {
        let mut vs: Vec<String> = self
            .terms
            .keys()
            .flat_map(|e| e.iter().map(|(n, _)| n.to_string()))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn eval(&self, point: &Point) -> Result<Rational, ExprError> {
        let mut acc = Rational::zero();
        for (e, c) in self.terms() {
            acc = acc + c * &e.eval(point)?;
        }
        Ok(acc)
    }

    /// Smallest exponent of `name` over all terms (zero when absent).
    pub(crate) fn min_exponent(&self, name: &str) -> i32 {
        self.terms.keys().map(|e| e.get(name)).min().unwrap_or(0)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::parse::print_laurent(self))
    }
}

/// A nonempty polynomial with strictly positive coefficients and
/// nonnegative exponents.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PosPoly(LaurentPoly);

impl PosPoly {
    pub fn new(poly: LaurentPoly) -> Result<Self, ExprError> {
        if poly.is_zero() {
            return Err(ExprError::ZeroExpression);
        }
        if !poly.all_positive() {
            return Err(ExprError::NotPositive(format!("{poly:?}")));
        }
        if !poly.is_polynomial() {
            return Err(ExprError::NotPositive(format!(
                "negative exponent in {poly:?}"
            )));
        }
        Ok(PosPoly(poly))
    }

    pub fn one() -> Self {
        PosPoly(LaurentPoly::one())
    }

    pub fn as_laurent(&self) -> &LaurentPoly {
        &self.0
    }

    pub fn into_laurent(self) -> LaurentPoly {
        self.0
    }

    pub fn monomials(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.0.terms().map(|(e, c)| Monomial {
            coeff: c.clone(),
            exps: e.clone(),
        })
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }
}

impl fmt::Debug for PosPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.0, f)
    }
}
