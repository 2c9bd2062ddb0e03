//! The 15-dimensional level-zero fundamental module `W(ϖ_1)` of G2^(1).
//!
//! Basis order: `1,2,3,4,5,6, 0_1, 0_2, ∅, 6̄,5̄,4̄,3̄,2̄,1̄`. Matrices act on
//! column vectors: entry `(u, v)` is the coefficient of `u` in `op(v)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cartan::CartanData;
use crate::expr::{Exponents, ExprError, LaurentPoly, PosRatExpr};
use crate::Rational;

pub const DIM: usize = 15;

pub const NAMES: [&str; DIM] = [
    "1", "2", "3", "4", "5", "6", "0_1", "0_2", "empty", "6bar", "5bar", "4bar", "3bar", "2bar",
    "1bar",
];

/// Classical weights `(k_0, k_1, k_2)` over `Λ_0, Λ_1, Λ_2`.
pub const WEIGHTS: [[i64; 3]; DIM] = [
    [-2, 1, 0],
    [-1, -1, 3],
    [-1, 0, 1],
    [-1, 1, -1],
    [0, -1, 2],
    [-1, 2, -3],
    [0, 0, 0],
    [0, 0, 0],
    [0, 0, 0],
    [1, -2, 3],
    [0, 1, -2],
    [1, -1, 1],
    [1, 0, -1],
    [1, 1, -3],
    [2, -1, 0],
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Basis(pub usize);

impl Basis {
    pub fn from_name(s: &str) -> Option<Basis> {
        NAMES.iter().position(|n| *n == s).map(Basis)
    }

    pub fn name(self) -> &'static str {
        NAMES[self.0]
    }

    pub fn weight(self) -> [i64; 3] {
        WEIGHTS[self.0]
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RepKind {
    E,
    F,
}

// (source, target, coefficient), basis names as above.
const F0: &[(&str, &str, i64)] = &[
    ("0_2", "1", 1),
    ("6bar", "2", 1),
    ("4bar", "3", 1),
    ("3bar", "4", 1),
    ("2bar", "6", 1),
    ("1bar", "empty", 1),
    ("empty", "1", 2),
];
const E0: &[(&str, &str, i64)] = &[
    ("1", "empty", 1),
    ("2", "6bar", 1),
    ("3", "4bar", 1),
    ("4", "3bar", 1),
    ("6", "2bar", 1),
    ("0_2", "1bar", 1),
    ("empty", "1bar", 2),
];
const F1: &[(&str, &str, i64)] = &[
    ("1", "2", 1),
    ("4", "5", 1),
    ("6", "0_2", 1),
    ("0_1", "6bar", 3),
    ("0_2", "6bar", 2),
    ("5bar", "4bar", 1),
    ("2bar", "1bar", 1),
    ("empty", "6bar", 1),
];
const E1: &[(&str, &str, i64)] = &[
    ("2", "1", 1),
    ("5", "4", 1),
    ("0_1", "6", 3),
    ("0_2", "6", 2),
    ("6bar", "0_2", 1),
    ("4bar", "5bar", 1),
    ("1bar", "2bar", 1),
    ("empty", "6", 1),
];
const F2: &[(&str, &str, i64)] = &[
    ("2", "3", 1),
    ("3", "4", 2),
    ("4", "6", 3),
    ("5", "0_1", 1),
    ("0_1", "5bar", 2),
    ("0_2", "5bar", 1),
    ("6bar", "4bar", 1),
    ("4bar", "3bar", 2),
    ("3bar", "2bar", 3),
];
const E2: &[(&str, &str, i64)] = &[
    ("3", "2", 3),
    ("4", "3", 2),
    ("6", "4", 1),
    ("0_1", "5", 2),
    ("0_2", "5", 1),
    ("5bar", "0_1", 1),
    ("4bar", "6bar", 3),
    ("3bar", "4bar", 2),
    ("2bar", "3bar", 1),
];

/// Nonzero actions `(source, target, coefficient)` of `e_i` or `f_i`.
pub fn table(kind: RepKind, i: usize) -> Vec<(Basis, Basis, i64)> {
    let t = match (kind, i) {
        (RepKind::F, 0) => F0,
        (RepKind::E, 0) => E0,
        (RepKind::F, 1) => F1,
        (RepKind::E, 1) => E1,
        (RepKind::F, 2) => F2,
        (RepKind::E, 2) => E2,
        _ => panic!("index {i} out of range"),
    };
    t.iter()
        .map(|(s, d, k)| {
            (
                Basis::from_name(s).expect("known name"),
                Basis::from_name(d).expect("known name"),
                *k,
            )
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RepError {
    #[error("the parameter of Y_i must be nonzero")]
    ZeroParameter,
    #[error("index {0} is not in {{0,1,2}}")]
    BadIndex(usize),
    #[error("a vector of W(ϖ1) has 15 coordinates, got {0}")]
    BadLength(usize),
}

/// Exact coordinates in the fixed basis order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Rational>", into = "Vec<Rational>")]
pub struct FundRepVector(Vec<Rational>);

impl FundRepVector {
    pub fn zero() -> Self {
        FundRepVector(vec![Rational::zero(); DIM])
    }

    pub fn basis(b: Basis) -> Self {
        let mut v = FundRepVector::zero();
        v.0[b.0] = Rational::one();
        v
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn get(&self, b: Basis) -> &Rational {
        &self.0[b.0]
    }

    pub fn scale(&self, k: &Rational) -> Self {
        FundRepVector(self.0.iter().map(|v| v * k).collect())
    }
}

impl TryFrom<Vec<Rational>> for FundRepVector {
    type Error = RepError;
    fn try_from(v: Vec<Rational>) -> Result<Self, RepError> {
        if v.len() != DIM {
            return Err(RepError::BadLength(v.len()));
        }
        Ok(FundRepVector(v))
    }
}

impl From<FundRepVector> for Vec<Rational> {
    fn from(v: FundRepVector) -> Self {
        v.0
    }
}

/// A 15×15 exact matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct RepOperator(Vec<Vec<Rational>>);

impl RepOperator {
    pub fn zero() -> Self {
        RepOperator(vec![vec![Rational::zero(); DIM]; DIM])
    }

    pub fn identity() -> Self {
        let mut m = RepOperator::zero();
        for k in 0..DIM {
            m.0[k][k] = Rational::one();
        }
        m
    }

    pub fn generator(kind: RepKind, i: usize) -> Self {
        let mut m = RepOperator::zero();
        for (s, d, k) in table(kind, i) {
            m.0[d.0][s.0] = Rational::from_int(k);
        }
        m
    }

    pub fn entry(&self, row: Basis, col: Basis) -> &Rational {
        &self.0[row.0][col.0]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(Rational::is_zero)
    }

    pub fn mul(&self, o: &RepOperator) -> RepOperator {
        let mut out = RepOperator::zero();
        for r in 0..DIM {
            for k in 0..DIM {
                if self.0[r][k].is_zero() {
                    continue;
                }
                for c in 0..DIM {
                    if !o.0[k][c].is_zero() {
                        out.0[r][c] = &out.0[r][c] + &(&self.0[r][k] * &o.0[k][c]);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, o: &RepOperator) -> RepOperator {
        RepOperator(
            self.0
                .iter()
                .zip(&o.0)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
        )
    }

    pub fn sub(&self, o: &RepOperator) -> RepOperator {
        self.add(&o.scale(&Rational::from_int(-1)))
    }

    pub fn scale(&self, k: &Rational) -> RepOperator {
        RepOperator(self.0.iter().map(|r| r.iter().map(|x| x * k).collect()).collect())
    }

    pub fn pow(&self, n: u32) -> RepOperator {
        (0..n).fold(RepOperator::identity(), |acc, _| acc.mul(self))
    }

    pub fn apply(&self, v: &FundRepVector) -> FundRepVector {
        FundRepVector(
            self.0
                .iter()
                .map(|row| row.iter().zip(&v.0).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }
}

impl fmt::Debug for RepOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.0 {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

impl Serialize for RepOperator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

pub fn rep_apply(kind: RepKind, i: usize, v: &FundRepVector) -> Result<FundRepVector, RepError> {
    if i > 2 {
        return Err(RepError::BadIndex(i));
    }
    Ok(RepOperator::generator(kind, i).apply(v))
}

/// Degree at which the exponential series of `f_i` is cut off.
fn series_len(i: usize) -> u32 {
    if i == 2 {
        3
    } else {
        2
    }
}

fn factorial(k: u32) -> i64 {
    (1..=k as i64).product()
}

/// `Y_i(c) = (Σ_k f_i^k / (k! c^k)) · α_i^∨(c)`.
pub fn rep_y(i: usize, c: &Rational) -> Result<RepOperator, RepError> {
    if i > 2 {
        return Err(RepError::BadIndex(i));
    }
    if c.is_zero() {
        return Err(RepError::ZeroParameter);
    }
    let f = RepOperator::generator(RepKind::F, i);
    let mut series = RepOperator::zero();
    for k in 0..=series_len(i) {
        let coeff = Rational::new(1, factorial(k)) * c.pow(-(k as i32));
        series = series.add(&f.pow(k).scale(&coeff));
    }
    let mut torus = RepOperator::zero();
    for (b, w) in WEIGHTS.iter().enumerate() {
        torus.0[b][b] = c.pow(w[i] as i32);
    }
    Ok(series.mul(&torus))
}

/// Applies `Y_i(var)` to a vector of Laurent polynomials.
fn apply_y_symbolic(i: usize, var: &str, v: &[LaurentPoly]) -> Vec<LaurentPoly> {
    // Torus part first.
    let mut cur: Vec<LaurentPoly> = v
        .iter()
        .enumerate()
        .map(|(b, p)| p.mul_monomial(&Rational::one(), &Exponents::from_pairs([(var, WEIGHTS[b][i] as i32)])))
        .collect();
    let mut out = cur.clone();
    let f = table(RepKind::F, i);
    for k in 1..=series_len(i) {
        let mut next = vec![LaurentPoly::zero(); DIM];
        for (s, d, a) in &f {
            let term = cur[s.0].scale(&Rational::from_int(*a));
            next[d.0] = next[d.0].add(&term);
        }
        cur = next;
        let coeff = Rational::new(1, factorial(k));
        let shift = Exponents::from_pairs([(var, -(k as i32))]);
        for b in 0..DIM {
            out[b] = out[b].add(&cur[b].mul_monomial(&coeff, &shift));
        }
    }
    out
}

/// The components `X_u` of `v_1(x) = Y_0(x0)Y_1(x1)Y_2(x2)Y_1(x3)Y_2(x4)Y_1(x5)|1⟩`
/// as Laurent polynomials, in basis order.
pub fn v1_laurent() -> Vec<LaurentPoly> {
    let mut v = vec![LaurentPoly::zero(); DIM];
    v[0] = LaurentPoly::one();
    for (i, var) in [(1, "x5"), (2, "x4"), (1, "x3"), (2, "x2"), (1, "x1"), (0, "x0")] {
        v = apply_y_symbolic(i, var, &v);
    }
    v
}

/// The components of `v_1(x)` as positive rational expressions; fails if
/// any component is zero or has a non-positive coefficient.
pub fn v1_expand() -> Result<Vec<PosRatExpr>, ExprError> {
    v1_laurent()
        .into_iter()
        .map(|p| PosRatExpr::from_laurent(p, LaurentPoly::one()))
        .collect()
}

/// Witness of a violated structural property of the tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepViolation {
    pub check: String,
    pub detail: String,
}

fn violation(check: &str, detail: String) -> RepViolation {
    RepViolation {
        check: check.into(),
        detail,
    }
}

/// `e_i` raises weights by `α_i`, `f_i` lowers them by `α_i`.
pub fn check_gradation(cartan: &CartanData) -> Result<(), RepViolation> {
    for i in 0..3 {
        let alpha = cartan.simple_root(i);
        for kind in [RepKind::E, RepKind::F] {
            for (s, d, _) in table(kind, i) {
                let (ws, wd) = (s.weight(), d.weight());
                let ok = (0..3).all(|k| {
                    let diff = wd[k] - ws[k];
                    match kind {
                        RepKind::E => diff == alpha.coeffs()[k],
                        RepKind::F => diff == -alpha.coeffs()[k],
                    }
                });
                if !ok {
                    return Err(violation(
                        "gradation",
                        format!("{kind:?}_{i}: {s} -> {d} does not shift the weight by α_{i}"),
                    ));
                }
            }
        }
    }
    Ok(())
}

/// `e_0^3 = f_0^3 = e_1^3 = f_1^3 = 0`, `e_2^4 = f_2^4 = 0`, and the lower
/// powers are nonzero.
pub fn check_nilpotency() -> Result<(), RepViolation> {
    for i in 0..3 {
        let n = series_len(i) + 1;
        for kind in [RepKind::E, RepKind::F] {
            let g = RepOperator::generator(kind, i);
            if !g.pow(n).is_zero() || g.pow(n - 1).is_zero() {
                return Err(violation(
                    "nilpotency",
                    format!("{kind:?}_{i} is not nilpotent of order exactly {n}"),
                ));
            }
        }
    }
    Ok(())
}

/// `(e_i f_i − f_i e_i) v = ⟨α_i^∨, wt v⟩ v` on every basis vector.
pub fn check_commutators() -> Result<(), RepViolation> {
    for i in 0..3 {
        let e = RepOperator::generator(RepKind::E, i);
        let f = RepOperator::generator(RepKind::F, i);
        let h = e.mul(&f).sub(&f.mul(&e));
        for b in 0..DIM {
            let v = FundRepVector::basis(Basis(b));
            let want = v.scale(&Rational::from_int(WEIGHTS[b][i]));
            if h.apply(&v) != want {
                return Err(violation(
                    "commutator",
                    format!("[e_{i}, f_{i}] on {}", NAMES[b]),
                ));
            }
        }
    }
    Ok(())
}
