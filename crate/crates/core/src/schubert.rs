//! Geometric crystal structure on `Y_{i_1}(c_1)⋯Y_{i_k}(c_k)`.
//!
//! For a word `(i_1,…,i_k)` and an index `i`, put
//! `P_m = c_1^{a_{i_1,i}} ⋯ c_{m-1}^{a_{i_{m-1},i}} · c_m` for the positions
//! `m` with `i_m = i`. Then
//!
//! ```text
//! ε_i = Σ_m 1/P_m,        γ_i = Π_m c_m^{a_{i_m,i}},
//! C_j = c_j · (Σ_{m≤j} c/P_m + Σ_{m>j} 1/P_m) / (Σ_{m<j} c/P_m + Σ_{m≥j} 1/P_m),
//! ```
//!
//! and `e_i^c` replaces each `c_j` by `C_j`. At positions with `i_j ≠ i` the
//! two sums coincide and `C_j = c_j`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cartan::{CartanData, CartanError, Word};
use crate::expr::{Exponents, LaurentPoly, PosRatExpr};
use crate::sample;
use crate::Rational;

/// Name of the action parameter in symbolic output.
pub const PARAM: &str = "c";

/// `c1, …, ck`.
pub fn default_vars(k: usize) -> Vec<String> {
    (1..=k).map(|m| format!("c{m}")).collect()
}

fn check(cartan: &CartanData, word: &Word, i: usize, vars: &[&str]) -> Result<(), CartanError> {
    cartan.check_index(i)?;
    word.validate(cartan)?;
    if vars.len() != word.len() {
        return Err(CartanError::Invalid(format!(
            "{} variable names for a word of length {}",
            vars.len(),
            word.len()
        )));
    }
    Ok(())
}

/// Exponent vector of `1/P_m`.
fn inv_partial(cartan: &CartanData, word: &Word, i: usize, m: usize, vars: &[&str]) -> Exponents {
    let w = word.indices();
    Exponents::from_pairs(
        (0..m)
            .map(|l| (vars[l], -(cartan.a(w[l], i) as i32)))
            .chain([(vars[m], -1)]),
    )
}

/// The coordinates `(C_1, …, C_k)` of `e_i^c`, in the parameter `c` and the
/// given coordinate names.
pub fn schubert_action(
    cartan: &CartanData,
    word: &Word,
    i: usize,
    vars: &[&str],
) -> Result<Vec<PosRatExpr>, CartanError> {
    check(cartan, word, i, vars)?;
    let w = word.indices();
    let k = w.len();
    let terms: Vec<(usize, Exponents)> = (0..k)
        .filter(|&m| w[m] == i)
        .map(|m| (m, inv_partial(cartan, word, i, m, vars)))
        .collect();
    let c = Exponents::var(PARAM);
    let mut out = Vec::with_capacity(k);
    for j in 0..k {
        let cj = PosRatExpr::var(vars[j]);
        if w[j] != i {
            out.push(cj);
            continue;
        }
        let mut num = LaurentPoly::zero();
        let mut den = LaurentPoly::zero();
        for (m, e) in &terms {
            let with_c = e.mul(&c);
            num.add_term(Rational::one(), if *m <= j { with_c.clone() } else { e.clone() });
            den.add_term(Rational::one(), if *m < j { with_c } else { e.clone() });
        }
        let ratio = PosRatExpr::from_laurent(num, den).expect("positive sums");
        out.push(cj.mul(&ratio));
    }
    Ok(out)
}

pub fn schubert_epsilon(
    cartan: &CartanData,
    word: &Word,
    i: usize,
    vars: &[&str],
) -> Result<PosRatExpr, CartanError> {
    check(cartan, word, i, vars)?;
    if !word.contains(i) {
        return Err(CartanError::IndexAbsent(i));
    }
    let mut sum = LaurentPoly::zero();
    for m in (0..word.len()).filter(|&m| word.indices()[m] == i) {
        sum.add_term(Rational::one(), inv_partial(cartan, word, i, m, vars));
    }
    Ok(PosRatExpr::from_laurent(sum, LaurentPoly::one()).expect("positive sum"))
}

pub fn schubert_gamma(
    cartan: &CartanData,
    word: &Word,
    i: usize,
    vars: &[&str],
) -> Result<PosRatExpr, CartanError> {
    check(cartan, word, i, vars)?;
    let e = Exponents::from_pairs(
        word.indices()
            .iter()
            .zip(vars)
            .map(|(&im, v)| (*v, cartan.a(im, i) as i32)),
    );
    Ok(PosRatExpr::from_laurent(LaurentPoly::monomial(Rational::one(), e), LaurentPoly::one())
        .expect("monomial"))
}

/// Exact one-parameter actions `e_i^c` on points with positive rational
/// coordinates.
pub trait GeometricAction {
    fn dim(&self) -> usize;
    fn e(&self, i: usize, c: &Rational, x: &[Rational]) -> Vec<Rational>;
}

/// The Schubert-cell crystal evaluated numerically.
#[derive(Debug, Clone)]
pub struct SchubertCell {
    pub cartan: CartanData,
    pub word: Word,
}

impl SchubertCell {
    pub fn new(cartan: CartanData, word: Word) -> Result<Self, CartanError> {
        word.validate(&cartan)?;
        Ok(SchubertCell { cartan, word })
    }

    /// `1/P_m` for each position `m` with `i_m = i`.
    fn inv_partials(&self, i: usize, x: &[Rational]) -> Vec<(usize, Rational)> {
        let w = self.word.indices();
        let mut prefix = Rational::one();
        let mut out = Vec::new();
        for m in 0..w.len() {
            if w[m] == i {
                out.push((m, (&prefix * &x[m]).recip()));
            }
            prefix = prefix * x[m].pow(self.cartan.a(w[m], i) as i32);
        }
        out
    }

    pub fn eps(&self, i: usize, x: &[Rational]) -> Result<Rational, CartanError> {
        if !self.word.contains(i) {
            return Err(CartanError::IndexAbsent(i));
        }
        Ok(self.inv_partials(i, x).into_iter().map(|(_, v)| v).sum())
    }

    pub fn gamma(&self, i: usize, x: &[Rational]) -> Rational {
        self.word
            .indices()
            .iter()
            .zip(x)
            .map(|(&im, v)| v.pow(self.cartan.a(im, i) as i32))
            .product()
    }
}

impl GeometricAction for SchubertCell {
    fn dim(&self) -> usize {
        self.word.len()
    }

    fn e(&self, i: usize, c: &Rational, x: &[Rational]) -> Vec<Rational> {
        let w = self.word.indices();
        let terms = self.inv_partials(i, x);
        (0..w.len())
            .map(|j| {
                if w[j] != i {
                    return x[j].clone();
                }
                let (mut num, mut den) = (Rational::zero(), Rational::zero());
                for (m, t) in &terms {
                    let ct = c * t;
                    num = num + if *m <= j { ct.clone() } else { t.clone() };
                    den = den + if *m < j { ct } else { t.clone() };
                }
                &x[j] * &(num / den)
            })
            .collect()
    }
}

/// Exponents `(p, q)` of `c1^p c2^q` for the left-hand side, read left to
/// right; its letters alternate `i, j, i, …`. The right-hand side has the
/// same exponents in reverse order on the letters `j, i, j, …`.
type Exps = (i32, i32);

fn relation(aij: i64, aji: i64) -> Option<Vec<(&'static str, Vec<Exps>)>> {
    let v = match (aij, aji) {
        (0, 0) => vec![("commute", vec![(1, 0), (0, 1)])],
        (-1, -1) => vec![("length3", vec![(1, 0), (1, 1), (0, 1)])],
        (-2, -1) => vec![("length4", vec![(1, 0), (2, 1), (1, 1), (0, 1)])],
        (-3, -1) => vec![
            ("corrected", vec![(1, 0), (3, 1), (2, 1), (3, 2), (1, 1), (0, 1)]),
            ("legacy", vec![(1, 0), (1, 1), (2, 3), (1, 2), (1, 3), (0, 1)]),
        ],
        _ => return None,
    };
    Some(v)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VermaCounterexample {
    pub sample: usize,
    pub c1: Rational,
    pub c2: Rational,
    pub x: Vec<Rational>,
    pub lhs: Vec<Rational>,
    pub rhs: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VariantOutcome {
    pub name: String,
    pub holds: bool,
    pub counterexample: Option<VermaCounterexample>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VermaReport {
    pub i: usize,
    pub j: usize,
    pub a_ij: i64,
    pub a_ji: i64,
    pub samples: usize,
    pub seed: u64,
    pub variants: Vec<VariantOutcome>,
    /// True when some variant holds on every sample.
    pub holds: bool,
    /// Names of the variants that held on every sample.
    pub variant_used: Vec<String>,
}

fn apply_word<A: GeometricAction + ?Sized>(
    action: &A,
    factors: impl Iterator<Item = (usize, Rational)>,
    x: &[Rational],
) -> Vec<Rational> {
    let mut y = x.to_vec();
    for (idx, c) in factors {
        y = action.e(idx, &c, &y);
    }
    y
}

/// Compares both sides of the Verma relation for `(i, j)` at `samples`
/// seeded random points `(c1, c2, x)`.
pub fn verma_check<A: GeometricAction + ?Sized>(
    cartan: &CartanData,
    i: usize,
    j: usize,
    action: &A,
    samples: usize,
    seed: u64,
) -> Result<VermaReport, CartanError> {
    cartan.check_index(i)?;
    cartan.check_index(j)?;
    let (aij, aji) = (cartan.a(i, j), cartan.a(j, i));
    // The listed relations have |a_ij| >= |a_ji|; otherwise swap roles.
    let (p, q, rel) = match relation(aij, aji) {
        Some(r) => (i, j, r),
        None => match relation(aji, aij) {
            Some(r) if i != j => (j, i, r),
            _ => return Err(CartanError::UnsupportedPair(aij, aji)),
        },
    };
    let mut rng = sample::rng(seed);
    let draws: Vec<(Rational, Rational, Vec<Rational>)> = (0..samples)
        .map(|_| {
            let c1 = sample::positive_rational(&mut rng);
            let c2 = sample::positive_rational(&mut rng);
            let x = sample::positive_point(&mut rng, action.dim());
            (c1, c2, x)
        })
        .collect();
    let mut variants = Vec::new();
    for (name, lhs) in rel {
        let param = |c1: &Rational, c2: &Rational, (a, b): Exps| c1.pow(a) * c2.pow(b);
        let n = lhs.len();
        let mut counterexample = None;
        for (s, (c1, c2, x)) in draws.iter().enumerate() {
            // Rightmost factor acts first.
            let left = apply_word(
                action,
                (0..n).rev().map(|k| (if k % 2 == 0 { p } else { q }, param(c1, c2, lhs[k]))),
                x,
            );
            let right = apply_word(
                action,
                (0..n).rev().map(|k| {
                    (if k % 2 == 0 { q } else { p }, param(c1, c2, lhs[n - 1 - k]))
                }),
                x,
            );
            if left != right {
                counterexample = Some(VermaCounterexample {
                    sample: s,
                    c1: c1.clone(),
                    c2: c2.clone(),
                    x: x.clone(),
                    lhs: left,
                    rhs: right,
                });
                break;
            }
        }
        variants.push(VariantOutcome {
            name: name.to_string(),
            holds: counterexample.is_none(),
            counterexample,
        });
    }
    let variant_used: Vec<String> = variants
        .iter()
        .filter(|v| v.holds)
        .map(|v| v.name.clone())
        .collect();
    Ok(VermaReport {
        i,
        j,
        a_ij: aij,
        a_ji: aji,
        samples,
        seed,
        holds: !variant_used.is_empty(),
        variants,
        variant_used,
    })
}

/// Numeric values of the named coordinates, for evaluating symbolic output.
pub fn bind(vars: &[&str], x: &[Rational], c: Option<&Rational>) -> BTreeMap<String, Rational> {
    let mut p: BTreeMap<String, Rational> =
        vars.iter().map(|v| v.to_string()).zip(x.iter().cloned()).collect();
    if let Some(c) = c {
        p.insert(PARAM.to_string(), c.clone());
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;

    const X: &[&str] = &["x0", "x1", "x2", "x3", "x4", "x5"];
    const ALL: &[&str] = &["c", "x0", "x1", "x2", "x3", "x4", "x5", "c1"];

    fn p(s: &str) -> PosRatExpr {
        parse_expr(s, ALL).unwrap()
    }

    #[test]
    fn single_letter_word() {
        let g = CartanData::g2_affine();
        let w = Word::new(vec![1]).unwrap();
        let act = schubert_action(&g, &w, 1, &["c1"]).unwrap();
        assert!(act[0].equals(&p("c*c1")));
        assert!(schubert_epsilon(&g, &w, 1, &["c1"]).unwrap().equals(&p("1/c1")));
        assert!(schubert_gamma(&g, &w, 1, &["c1"]).unwrap().equals(&p("c1^2")));
        assert_eq!(
            schubert_epsilon(&g, &w, 2, &["c1"]),
            Err(CartanError::IndexAbsent(2))
        );
        assert!(schubert_action(&g, &w, 5, &["c1"]).is_err());
    }

    #[test]
    fn epsilon_and_gamma_on_v1_word() {
        let g = CartanData::g2_affine();
        let w = Word::g2_v1();
        let e1 = schubert_epsilon(&g, &w, 1, X).unwrap();
        assert!(e1.equals(&p("x0/x1 + x0*x2^3/(x1^2*x3) + x0*x2^3*x4^3/(x1^2*x3^2*x5)")));
        let e2 = schubert_epsilon(&g, &w, 2, X).unwrap();
        assert!(e2.equals(&p("x1/x2 + x1*x3/(x2^2*x4)")));
        let g1 = schubert_gamma(&g, &w, 1, X).unwrap();
        assert!(g1.equals(&p("x1^2*x3^2*x5^2/(x0*x2^3*x4^3)")));
        let g0 = schubert_gamma(&g, &w, 0, X).unwrap();
        assert!(g0.equals(&p("x0^2/(x1*x3*x5)")));
        let g2 = schubert_gamma(&g, &w, 2, X).unwrap();
        assert!(g2.equals(&p("x2^2*x4^2/(x1*x3*x5)")));
    }

    #[test]
    fn action_multipliers_on_v1_word() {
        let g = CartanData::g2_affine();
        let w = Word::g2_v1();
        let a2 = schubert_action(&g, &w, 2, X).unwrap();
        let c2 = p("(c*x1/x2 + x1*x3/(x2^2*x4))/(x1/x2 + x1*x3/(x2^2*x4))");
        let c4 = p("c*(x1/x2 + x1*x3/(x2^2*x4))/(c*x1/x2 + x1*x3/(x2^2*x4))");
        assert!(a2[2].equals(&c2.mul(&p("x2"))));
        assert!(a2[4].equals(&c4.mul(&p("x4"))));
        for k in [0, 1, 3, 5] {
            assert!(a2[k].equals(&PosRatExpr::var(X[k])));
        }
        let a1 = schubert_action(&g, &w, 1, X).unwrap();
        let t1 = "x0/x1";
        let t2 = "x0*x2^3/(x1^2*x3)";
        let t3 = "x0*x2^3*x4^3/(x1^2*x3^2*x5)";
        let c1 = p(&format!("(c*{t1} + {t2} + {t3})/({t1} + {t2} + {t3})"));
        let c3 = p(&format!("(c*{t1} + c*{t2} + {t3})/(c*{t1} + {t2} + {t3})"));
        let c5 = p(&format!("c*({t1} + {t2} + {t3})/(c*{t1} + c*{t2} + {t3})"));
        assert!(a1[1].equals(&c1.mul(&p("x1"))));
        assert!(a1[3].equals(&c3.mul(&p("x3"))));
        assert!(a1[5].equals(&c5.mul(&p("x5"))));
    }

    #[test]
    fn numeric_matches_symbolic() {
        let g = CartanData::g2_affine();
        let cell = SchubertCell::new(g.clone(), Word::g2_v1()).unwrap();
        let mut rng = sample::rng(3);
        for _ in 0..10 {
            let x = sample::positive_point(&mut rng, 6);
            let c = sample::positive_rational(&mut rng);
            for i in 0..3 {
                let sym = schubert_action(&g, &Word::g2_v1(), i, X).unwrap();
                let pt = bind(X, &x, Some(&c));
                let num = cell.e(i, &c, &x);
                for k in 0..6 {
                    assert_eq!(sym[k].evaluate(&pt).unwrap(), num[k]);
                }
                let eps = schubert_epsilon(&g, &Word::g2_v1(), i, X).unwrap();
                assert_eq!(eps.evaluate(&pt).unwrap(), cell.eps(i, &x).unwrap());
            }
        }
    }

    #[test]
    fn c_equal_one_is_identity() {
        let g = CartanData::g2_affine();
        for i in 0..3 {
            for (k, e) in schubert_action(&g, &Word::g2_v1(), i, X).unwrap().iter().enumerate() {
                let mut b = BTreeMap::new();
                b.insert(PARAM.to_string(), PosRatExpr::one());
                assert!(e.substitute(&b).equals(&PosRatExpr::var(X[k])));
            }
        }
    }

    #[test]
    fn verma_simple_cases() {
        let g = CartanData::g2_affine();
        let cell = SchubertCell::new(g.clone(), Word::g2_v1()).unwrap();
        let r = verma_check(&g, 0, 2, &cell, 10, 1).unwrap();
        assert!(r.holds);
        assert_eq!(r.variant_used, vec!["commute".to_string()]);
        let r = verma_check(&g, 0, 1, &cell, 10, 1).unwrap();
        assert!(r.holds);
        assert_eq!(r.variant_used, vec!["length3".to_string()]);
        assert!(matches!(
            verma_check(&g, 1, 1, &cell, 1, 1),
            Err(CartanError::UnsupportedPair(2, 2))
        ));
    }

    #[test]
    fn verma_length4_on_b2_cell() {
        // Rank-2 type with a_01 = -2, a_10 = -1 on a reduced word of the
        // longest element.
        let c = CartanData::new(
            vec!["0".into(), "1".into()],
            vec![vec![2, -2], vec![-1, 2]],
            vec![1, 1],
            vec![1, 1],
        )
        .unwrap();
        let cell = SchubertCell::new(c.clone(), Word::new(vec![0, 1, 0, 1]).unwrap()).unwrap();
        let r = verma_check(&c, 0, 1, &cell, 10, 5).unwrap();
        assert_eq!(r.a_ij, -2);
        assert!(r.holds, "{r:?}");
    }
}
