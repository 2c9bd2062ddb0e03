use std::collections::BTreeMap;
use std::fmt;

use crate::rational::Rational;

use super::poly::{Exponents, LaurentPoly, PosPoly};
use super::{ExprError, Point};

/// A subtraction-free rational function `numerator / denominator`.
///
/// Both parts are expanded [`PosPoly`]s. Canonicalization moves every
/// negative power into the denominator and strips common monomial content,
/// so for each variable the smallest exponent across all terms of both
/// parts is zero. Polynomial gcds are never taken; equality is decided by
/// cross-multiplication in [`PosRatExpr::equals`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PosRatExpr {
    num: PosPoly,
    den: PosPoly,
}

impl PosRatExpr {
    /// Builds the canonical form of `num / den` from Laurent polynomials.
    /// Fails if either part is zero or has a non-positive coefficient.
    pub fn from_laurent(num: LaurentPoly, den: LaurentPoly) -> Result<Self, ExprError> {
        if num.is_zero() || den.is_zero() {
            return Err(ExprError::ZeroExpression);
        }
        if !num.all_positive() || !den.all_positive() {
            return Err(ExprError::NotPositive(format!("({num:?})/({den:?})")));
        }
        let mut vars = num.variables();
        vars.extend(den.variables());
        vars.sort();
        vars.dedup();
        let shift = Exponents::from_pairs(vars.iter().map(|v| {
            let m = num.min_exponent(v).min(den.min_exponent(v));
            (v.as_str(), -m)
        }));
        // A monomial denominator is kept monic.
        let scale = match den.terms().next() {
            Some((_, c)) if den.len() == 1 => c.recip(),
            _ => Rational::one(),
        };
        let num = num.mul_monomial(&scale, &shift);
        let den = den.mul_monomial(&scale, &shift);
        Ok(PosRatExpr {
            num: PosPoly::new(num)?,
            den: PosPoly::new(den)?,
        })
    }

    pub fn from_poly(p: LaurentPoly) -> Result<Self, ExprError> {
        PosRatExpr::from_laurent(p, LaurentPoly::one())
    }

    pub fn var(name: &str) -> Self {
        PosRatExpr::from_poly(LaurentPoly::var(name)).expect("variable is positive")
    }

    /// A positive constant. Fails for zero or negative values.
    pub fn constant(c: Rational) -> Result<Self, ExprError> {
        if !c.is_positive() {
            return Err(ExprError::NotPositive(c.to_string()));
        }
        PosRatExpr::from_poly(LaurentPoly::constant(c))
    }

    pub fn one() -> Self {
        PosRatExpr {
            num: PosPoly::one(),
            den: PosPoly::one(),
        }
    }

    pub fn numerator(&self) -> &PosPoly {
        &self.num
    }

    pub fn denominator(&self) -> &PosPoly {
        &self.den
    }

    pub fn add(&self, other: &PosRatExpr) -> PosRatExpr {
        let (a, b) = (self.parts(), other.parts());
        let res = if self.den == other.den {
            PosRatExpr::from_laurent(a.0.add(b.0), a.1.clone())
        } else {
            PosRatExpr::from_laurent(a.0.mul(b.1).add(&b.0.mul(a.1)), a.1.mul(b.1))
        };
        res.expect("sum of positive expressions is positive")
    }

    pub fn mul(&self, other: &PosRatExpr) -> PosRatExpr {
        let (a, b) = (self.parts(), other.parts());
        PosRatExpr::from_laurent(a.0.mul(b.0), a.1.mul(b.1))
            .expect("product of positive expressions is positive")
    }

    pub fn div(&self, other: &PosRatExpr) -> PosRatExpr {
        self.mul(&other.recip())
    }

    pub fn recip(&self) -> PosRatExpr {
        PosRatExpr {
            num: self.den.clone(),
            den: self.num.clone(),
        }
    }

    pub fn pow(&self, k: i32) -> PosRatExpr {
        let base = if k < 0 { self.recip() } else { self.clone() };
        let k = k.unsigned_abs();
        let (n, d) = base.parts();
        PosRatExpr::from_laurent(n.pow(k), d.pow(k)).expect("power of positive expression")
    }

    /// Equality as rational functions: `a.num * b.den == b.num * a.den`.
    pub fn equals(&self, other: &PosRatExpr) -> bool {
        let (a, b) = (self.parts(), other.parts());
        a.0.mul(b.1) == b.0.mul(a.1)
    }

    pub fn evaluate(&self, point: &Point) -> Result<Rational, ExprError> {
        let n = self.num.as_laurent().eval(point)?;
        let d = self.den.as_laurent().eval(point)?;
        if d.is_zero() {
            return Err(ExprError::ZeroDenominator);
        }
        Ok(n / d)
    }

    /// Replaces each bound variable by an expression; unbound variables stay.
    pub fn substitute(&self, bindings: &BTreeMap<String, PosRatExpr>) -> PosRatExpr {
        if bindings.is_empty() {
            return self.clone();
        }
        let sub_poly = |p: &PosPoly| -> PosRatExpr {
            let mut acc: Option<PosRatExpr> = None;
            for m in p.monomials() {
                let mut term = PosRatExpr::constant(m.coeff).expect("positive coefficient");
                for (name, e) in m.exps.iter() {
                    let factor = match bindings.get(name) {
                        Some(expr) => expr.pow(e),
                        None => PosRatExpr::var(name).pow(e),
                    };
                    term = term.mul(&factor);
                }
                acc = Some(match acc {
                    Some(a) => a.add(&term),
                    None => term,
                });
            }
            acc.expect("PosPoly is nonempty")
        };
        sub_poly(&self.num).div(&sub_poly(&self.den))
    }

    /// Variables that occur in the canonical form.
    pub fn variables(&self) -> Vec<String> {
        let mut v = self.num.as_laurent().variables();
        v.extend(self.den.as_laurent().variables());
        v.sort();
        v.dedup();
        v
    }

    fn parts(&self) -> (&LaurentPoly, &LaurentPoly) {
        (self.num.as_laurent(), self.den.as_laurent())
    }
}

impl fmt::Display for PosRatExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::parse::print_expr(self))
    }
}

impl fmt::Debug for PosRatExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;

    fn p(s: &str) -> PosRatExpr {
        parse_expr(s, &["c", "x0", "x1", "x2", "x3", "a", "b", "y"]).unwrap()
    }

    #[test]
    fn laurent_exponents_move_to_denominator() {
        let e = p("c*x0/x1 + x0*x2^3/(x1^2*x3)");
        assert_eq!(e.to_string(), "(c*x0*x1*x3 + x0*x2^3)/(x1^2*x3)");
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(p("x0").add(&p("x1")).to_string(), "x0 + x1");
        assert_eq!(p("x0").div(&p("x1")).to_string(), "x0/x1");
        assert!(p("x0/x1").mul(&p("x1/x0")).equals(&PosRatExpr::one()));
    }

    #[test]
    fn equality_examples() {
        assert!(p("x0/x1").equals(&p("x0*x2/(x1*x2)")));
        assert!(p("x0+x1").equals(&p("x1+x0")));
        assert!(!p("x0").equals(&p("x1")));
        // Non-monomial common factors are not cancelled but still compare equal.
        let a = p("(x0+x1)*x2/((x0+x1)*x3)");
        assert!(a.equals(&p("x2/x3")));
        assert_ne!(a, p("x2/x3"));
    }

    #[test]
    fn substitution_examples() {
        let mut b = BTreeMap::new();
        b.insert("x0".to_string(), p("c*y"));
        assert!(p("x0/x1").substitute(&b).equals(&p("c*y/x1")));

        let mut b = BTreeMap::new();
        b.insert("x0".to_string(), p("a/b"));
        b.insert("x1".to_string(), PosRatExpr::one());
        assert!(p("x0+x1").substitute(&b).equals(&p("(a+b)/b")));

        assert_eq!(p("x0").substitute(&BTreeMap::new()), p("x0"));
    }

    #[test]
    fn evaluation_examples() {
        let pt = |vals: &[(&str, i64)]| -> Point {
            vals.iter().map(|(k, v)| (k.to_string(), Rational::from_int(*v))).collect()
        };
        let e = p("x0*x2^3/(x1^2*x3)");
        let v = e.evaluate(&pt(&[("x0", 1), ("x1", 1), ("x2", 2), ("x3", 1)])).unwrap();
        assert_eq!(v, Rational::from_int(8));

        let e = p("(c*x0*x1*x3 + x0*x2^3)/(x1^2*x3)");
        let v = e
            .evaluate(&pt(&[("c", 2), ("x0", 1), ("x1", 1), ("x2", 1), ("x3", 1)]))
            .unwrap();
        assert_eq!(v, Rational::from_int(3));

        let e = p("3*x0 + 2/5 + x1^2");
        let ones = pt(&[("x0", 1), ("x1", 1)]);
        assert_eq!(e.evaluate(&ones).unwrap(), Rational::new(22, 5));

        assert!(matches!(
            p("x0").evaluate(&Point::new()),
            Err(ExprError::UnboundVariable(v)) if v == "x0"
        ));
        assert!(matches!(
            p("1/(x0+x1)").evaluate(&pt(&[("x0", 1), ("x1", -1)])),
            Err(ExprError::ZeroDenominator)
        ));
    }
}
