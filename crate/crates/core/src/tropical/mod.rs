//! Max-plus piecewise-linear functions and ultra-discretization.
//!
//! A [`PLFunction`] is a difference of two max-plus polynomials, each a
//! finite maximum of integer affine forms. [`ultra_discretize`] sends a
//! subtraction-free rational expression to such a difference by the degree
//! valuation: monomials become their exponent vectors, sums become maxima,
//! quotients become differences, and positive constants vanish.
//!
//! Equality of PL functions is only ever decided by exhaustive evaluation
//! over integer boxes (see [`pl_equal_on_box`]); no dominated-form pruning is
//! attempted.

mod boxsearch;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::expr::{PosPoly, PosRatExpr};

pub use boxsearch::{
    find_first, pl_equal_on_box, BoxComparison, IntBox, DEFAULT_BOX_CAP,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TropicalError {
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("box has {points} points, above the cap of {cap}")]
    BoxTooLarge { points: u128, cap: u64 },
    #[error("invalid box: {0}")]
    InvalidBox(String),
    #[error("a max-plus polynomial needs at least one form")]
    EmptyMaxPlus,
}

/// An integer affine form `const + Σ coeff·var`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, Default)]
pub struct LinForm {
    coeffs: BTreeMap<String, i64>,
    #[serde(rename = "const")]
    constant: i64,
}

impl LinForm {
    pub fn new<'a, I: IntoIterator<Item = (&'a str, i64)>>(coeffs: I, constant: i64) -> Self {
        let mut f = LinForm::constant(constant);
        for (v, c) in coeffs {
            f.bump(v, c);
        }
        f
    }

    pub fn constant(k: i64) -> Self {
        LinForm {
            coeffs: BTreeMap::new(),
            constant: k,
        }
    }

    pub fn var(name: &str) -> Self {
        LinForm::new([(name, 1)], 0)
    }

    fn bump(&mut self, v: &str, by: i64) {
        if by == 0 {
            return;
        }
        let slot = self.coeffs.entry(v.to_string()).or_insert(0);
        *slot += by;
        if *slot == 0 {
            self.coeffs.remove(v);
        }
    }

    pub fn coeff(&self, v: &str) -> i64 {
        self.coeffs.get(v).copied().unwrap_or(0)
    }

    pub fn constant_term(&self) -> i64 {
        self.constant
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&str, i64)> {
        self.coeffs.iter().map(|(k, &v)| (k.as_str(), v))
    }

    pub fn add(&self, other: &LinForm) -> LinForm {
        let mut out = self.clone();
        out.constant += other.constant;
        for (v, c) in other.coeffs() {
            out.bump(v, c);
        }
        out
    }

    pub fn neg(&self) -> LinForm {
        LinForm {
            coeffs: self.coeffs.iter().map(|(k, &v)| (k.clone(), -v)).collect(),
            constant: -self.constant,
        }
    }

    /// Replaces `var` by the integer `value`.
    pub fn specialize(&self, var: &str, value: i64) -> LinForm {
        let mut out = self.clone();
        if let Some(c) = out.coeffs.remove(var) {
            out.constant += c * value;
        }
        out
    }

    pub fn eval(&self, point: &BTreeMap<String, i64>) -> Result<i64, TropicalError> {
        let mut acc = self.constant;
        for (v, c) in self.coeffs() {
            let x = point
                .get(v)
                .ok_or_else(|| TropicalError::UnboundVariable(v.to_string()))?;
            acc += c * x;
        }
        Ok(acc)
    }
}

impl fmt::Display for LinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.constant != 0 || self.coeffs.is_empty() {
            parts.push(self.constant.to_string());
        }
        for (v, c) in self.coeffs() {
            parts.push(match c {
                1 => v.to_string(),
                -1 => format!("-{v}"),
                _ => format!("{c}{v}"),
            });
        }
        let s = parts.join("+").replace("+-", "-");
        f.write_str(&s)
    }
}

impl fmt::Debug for LinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `max` over a nonempty set of forms; exact duplicates are merged.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<LinForm>", into = "Vec<LinForm>")]
pub struct MaxPlusPoly {
    forms: BTreeSet<LinForm>,
}

impl MaxPlusPoly {
    pub fn new<I: IntoIterator<Item = LinForm>>(forms: I) -> Result<Self, TropicalError> {
        let forms: BTreeSet<LinForm> = forms.into_iter().collect();
        if forms.is_empty() {
            return Err(TropicalError::EmptyMaxPlus);
        }
        Ok(MaxPlusPoly { forms })
    }

    pub fn single(form: LinForm) -> Self {
        MaxPlusPoly {
            forms: BTreeSet::from([form]),
        }
    }

    pub fn zero_form() -> Self {
        MaxPlusPoly::single(LinForm::constant(0))
    }

    pub fn forms(&self) -> impl Iterator<Item = &LinForm> {
        self.forms.iter()
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Tropical sum: `max(self, other)`.
    pub fn max(&self, other: &MaxPlusPoly) -> MaxPlusPoly {
        MaxPlusPoly {
            forms: self.forms.union(&other.forms).cloned().collect(),
        }
    }

    /// Tropical product: `self + other`, expanded over pairs of forms.
    pub fn plus(&self, other: &MaxPlusPoly) -> MaxPlusPoly {
        let forms = self
            .forms
            .iter()
            .flat_map(|a| other.forms.iter().map(move |b| a.add(b)))
            .collect();
        MaxPlusPoly { forms }
    }

    pub fn specialize(&self, var: &str, value: i64) -> MaxPlusPoly {
        MaxPlusPoly {
            forms: self.forms.iter().map(|f| f.specialize(var, value)).collect(),
        }
    }

    pub fn eval(&self, point: &BTreeMap<String, i64>) -> Result<i64, TropicalError> {
        let mut best = i64::MIN;
        for f in &self.forms {
            best = best.max(f.eval(point)?);
        }
        Ok(best)
    }

    pub fn is_zero_form(&self) -> bool {
        self.forms.len() == 1 && self.forms.iter().next() == Some(&LinForm::constant(0))
    }
}

impl TryFrom<Vec<LinForm>> for MaxPlusPoly {
    type Error = TropicalError;
    fn try_from(v: Vec<LinForm>) -> Result<Self, Self::Error> {
        MaxPlusPoly::new(v)
    }
}

impl From<MaxPlusPoly> for Vec<LinForm> {
    fn from(p: MaxPlusPoly) -> Self {
        p.forms.into_iter().collect()
    }
}

impl fmt::Display for MaxPlusPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.forms.len() == 1 {
            return write!(f, "{}", self.forms.iter().next().expect("nonempty"));
        }
        let inner: Vec<String> = self.forms.iter().map(ToString::to_string).collect();
        write!(f, "max({})", inner.join(", "))
    }
}

impl fmt::Debug for MaxPlusPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A tropical rational function `plus − minus`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PLFunction {
    pub plus: MaxPlusPoly,
    pub minus: MaxPlusPoly,
}

impl PLFunction {
    pub fn new(plus: MaxPlusPoly, minus: MaxPlusPoly) -> Self {
        PLFunction { plus, minus }
    }

    /// A plain max-plus polynomial (`minus` is the zero form).
    pub fn from_max(plus: MaxPlusPoly) -> Self {
        PLFunction {
            plus,
            minus: MaxPlusPoly::zero_form(),
        }
    }

    pub fn form(f: LinForm) -> Self {
        PLFunction::from_max(MaxPlusPoly::single(f))
    }

    pub fn constant(k: i64) -> Self {
        PLFunction::form(LinForm::constant(k))
    }

    pub fn var(name: &str) -> Self {
        PLFunction::form(LinForm::var(name))
    }

    /// `max(a − b, c − d) = max(a + d, c + b) − (b + d)`.
    pub fn max(&self, other: &PLFunction) -> PLFunction {
        let left = self.plus.plus(&other.minus);
        let right = other.plus.plus(&self.minus);
        PLFunction::new(left.max(&right), self.minus.plus(&other.minus))
    }

    pub fn add(&self, other: &PLFunction) -> PLFunction {
        PLFunction::new(self.plus.plus(&other.plus), self.minus.plus(&other.minus))
    }

    pub fn sub(&self, other: &PLFunction) -> PLFunction {
        PLFunction::new(self.plus.plus(&other.minus), self.minus.plus(&other.plus))
    }

    pub fn specialize(&self, var: &str, value: i64) -> PLFunction {
        PLFunction::new(
            self.plus.specialize(var, value),
            self.minus.specialize(var, value),
        )
    }

    pub fn eval(&self, point: &BTreeMap<String, i64>) -> Result<i64, TropicalError> {
        Ok(self.plus.eval(point)? - self.minus.eval(point)?)
    }

    pub fn variables(&self) -> Vec<String> {
        let mut vs: Vec<String> = self
            .plus
            .forms()
            .chain(self.minus.forms())
            .flat_map(|f| f.coeffs().map(|(v, _)| v.to_string()))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// Dense form over a fixed variable order, for fast repeated evaluation.
    pub fn compile(&self, vars: &[&str]) -> Result<CompiledPl, TropicalError> {
        Ok(CompiledPl {
            width: vars.len(),
            plus: compile_poly(&self.plus, vars)?,
            minus: compile_poly(&self.minus, vars)?,
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("PLFunction is serializable")
    }
}

impl fmt::Display for PLFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.minus.is_zero_form() {
            write!(f, "{}", self.plus)
        } else {
            write!(f, "{} - {}", self.plus, self.minus)
        }
    }
}

impl fmt::Debug for PLFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn eval_pl(f: &PLFunction, point: &BTreeMap<String, i64>) -> Result<i64, TropicalError> {
    f.eval(point)
}

fn compile_poly(p: &MaxPlusPoly, vars: &[&str]) -> Result<Vec<i64>, TropicalError> {
    // Row layout: [coeff_0, .., coeff_{n-1}, const].
    let mut rows = Vec::with_capacity(p.len() * (vars.len() + 1));
    for f in p.forms() {
        for (v, _) in f.coeffs() {
            if !vars.contains(&v) {
                return Err(TropicalError::UnboundVariable(v.to_string()));
            }
        }
        rows.extend(vars.iter().map(|v| f.coeff(v)));
        rows.push(f.constant_term());
    }
    Ok(rows)
}

/// A [`PLFunction`] laid out densely over a fixed variable order.
#[derive(Debug, Clone)]
pub struct CompiledPl {
    width: usize,
    plus: Vec<i64>,
    minus: Vec<i64>,
}

impl CompiledPl {
    #[inline]
    fn max_rows(rows: &[i64], width: usize, x: &[i64]) -> i64 {
        rows.chunks_exact(width + 1)
            .map(|r| r[width] + r[..width].iter().zip(x).map(|(a, b)| a * b).sum::<i64>())
            .max()
            .expect("nonempty")
    }

    /// Evaluates at `x`, given in the compile-time variable order.
    #[inline]
    pub fn eval(&self, x: &[i64]) -> i64 {
        debug_assert_eq!(x.len(), self.width);
        Self::max_rows(&self.plus, self.width, x) - Self::max_rows(&self.minus, self.width, x)
    }
}

fn poly_forms(p: &PosPoly) -> MaxPlusPoly {
    MaxPlusPoly::new(p.monomials().map(|m| {
        LinForm::new(m.exps.iter().map(|(v, e)| (v, e as i64)), 0)
    }))
    .expect("PosPoly is nonempty")
}

/// The degree valuation applied structurally: `c·x^a ↦ ⟨a, x⟩`, sums to
/// maxima, the quotient to a difference.
pub fn ultra_discretize(expr: &PosRatExpr) -> PLFunction {
    PLFunction::new(poly_forms(expr.numerator()), poly_forms(expr.denominator()))
}
