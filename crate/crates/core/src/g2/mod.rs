//! The positive affine geometric crystal of type G2^(1) on
//! `v_1(x) = Y_0(x_0)Y_1(x_1)Y_2(x_2)Y_1(x_3)Y_2(x_4)Y_1(x_5)|1⟩`.
//!
//! `e_1^c`, `e_2^c` are the Schubert-cell actions on the word
//! `(0,1,2,1,2,1)`; `e_0^c` is given by the explicit multipliers built from
//! the polynomials `D, E, F, G, H` below. Everything is exact.

pub mod rep;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::cartan::CartanData;
use crate::expr::{parse_expr, PosRatExpr};
use crate::cartan::Word;
use crate::schubert::{schubert_action, schubert_epsilon, schubert_gamma, GeometricAction};
use crate::Rational;

pub use rep::{rep_apply, rep_y, Basis, RepOperator, RepKind};

/// Names of the coordinates, in order.
pub const XS: [&str; 6] = ["x0", "x1", "x2", "x3", "x4", "x5"];
/// Symbolic universe: the action parameter and the six coordinates.
pub const VARS: [&str; 7] = ["c", "x0", "x1", "x2", "x3", "x4", "x5"];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum G2Error {
    #[error("coordinate {0} is not positive")]
    NonPositive(usize),
    #[error("the parameter c must be positive, got {0}")]
    BadParameter(Rational),
    #[error("index {0} is not in {{0,1,2}}")]
    BadIndex(usize),
    #[error("expected 6 coordinates, got {0}")]
    BadLength(usize),
}

/// A point `(x_0, …, x_5)` of `V_1` with positive rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Rational>", into = "Vec<Rational>")]
pub struct GeometricPoint([Rational; 6]);

impl GeometricPoint {
    pub fn new(x: Vec<Rational>) -> Result<Self, G2Error> {
        let arr: [Rational; 6] = x.try_into().map_err(|v: Vec<_>| G2Error::BadLength(v.len()))?;
        if let Some(k) = arr.iter().position(|v| !v.is_positive()) {
            return Err(G2Error::NonPositive(k));
        }
        Ok(GeometricPoint(arr))
    }

    pub fn ones() -> Self {
        GeometricPoint(std::array::from_fn(|_| Rational::one()))
    }

    pub fn coords(&self) -> &[Rational; 6] {
        &self.0
    }

    /// As an evaluation point for the symbolic forms, optionally with `c`.
    pub fn bind(&self, c: Option<&Rational>) -> BTreeMap<String, Rational> {
        crate::schubert::bind(&XS, &self.0, c)
    }
}

impl TryFrom<Vec<Rational>> for GeometricPoint {
    type Error = G2Error;
    fn try_from(v: Vec<Rational>) -> Result<Self, G2Error> {
        GeometricPoint::new(v)
    }
}

impl From<GeometricPoint> for Vec<Rational> {
    fn from(p: GeometricPoint) -> Self {
        p.0.into()
    }
}

fn check_index(i: usize) -> Result<(), G2Error> {
    if i < 3 {
        Ok(())
    } else {
        Err(G2Error::BadIndex(i))
    }
}

/// The polynomials `D, E, F, G, H` at `(c, x)`.
pub fn defgh(c: &Rational, x: &[Rational; 6]) -> [Rational; 5] {
    let [x0, x1, x2, x3, x4, x5] = x;
    let m1 = x0 * x0 * x2.pow(3) * x3;
    let m2 = x1 * &x2.pow(3) * x3 * x3 * x5;
    let t1 = x1 * &x3.pow(3);
    let t2 = x1 * x2 * x3 * x3 * x4;
    let t3 = x1 * x2 * x2 * x3 * x4 * x4;
    let t4 = x2.pow(3) * x3 * x3;
    let t5 = x2.pow(3) * x1 * x4.pow(3);
    let t6 = x2.pow(3) * x1 * x3 * x5;
    let k = |n: i64| Rational::from_int(n);
    let one = Rational::one();
    let two_c = &k(2) * c;
    let inner = |a1: &Rational, a2: &Rational, a3: &Rational, a5: &Rational, a6: &Rational| {
        x0 * &(a1 * &t1 + a2 * &t2 + a3 * &t3 + t4.clone() + a5 * &t5 + a6 * &t6)
    };
    let cc = c * c;
    let d = &cc * &m1 + m2.clone() + c * &inner(&one, &k(3), &k(3), &one, &one);
    let e = m1.clone() + m2.clone() + inner(&one, &k(3), &k(3), &one, &one);
    let f = c * &m1 + m2.clone() + inner(c, &(&k(3) * c), &(&k(3) * c), c, c);
    let g = c * &m1 + m2.clone() + inner(&one, &(&k(2) + c), &(&one + &two_c), c, c);
    let h = c * &m1 + m2 + inner(&one, &k(3), &k(3), &one, c);
    [d, e, f, g, h]
}

/// The G2^(1) geometric crystal `χ` on `V_1`.
#[derive(Debug, Clone, Copy, Default)]
pub struct G2Crystal;

impl G2Crystal {
    pub fn cartan(&self) -> CartanData {
        CartanData::g2_affine()
    }

    /// Coordinate multipliers of `e_i^c`.
    pub fn multipliers(&self, i: usize, c: &Rational, x: &[Rational; 6]) -> [Rational; 6] {
        let one = Rational::one;
        match i {
            0 => {
                let [d, e, f, g, h] = defgh(c, x);
                let ce = c * &e;
                [
                    &d / &ce,
                    &f / &ce,
                    &g / &ce,
                    &(&d * &h) / &(&(c * &ce) * &f),
                    &d / &(c * &g),
                    &d / &(c * &h),
                ]
            }
            1 => {
                let [x0, x1, x2, x3, x4, x5] = x;
                let t1 = x0 / x1;
                let t2 = x0 * &x2.pow(3) / (x1 * x1 * x3);
                let t3 = x0 * &x2.pow(3) * x4.pow(3) / (x1 * x1 * x3 * x3 * x5);
                let ct1 = c * &t1;
                let ct2 = c * &t2;
                let s = &t1 + &t2 + t3.clone();
                [
                    one(),
                    (&ct1 + &t2 + t3.clone()) / s.clone(),
                    one(),
                    (&ct1 + &ct2 + t3.clone()) / (&ct1 + &t2 + t3.clone()),
                    one(),
                    (c * &s) / (&ct1 + &ct2 + t3),
                ]
            }
            2 => {
                let [_, x1, x2, x3, x4, _] = x;
                let t1 = x1 / x2;
                let t2 = x1 * x3 / (x2 * x2 * x4);
                let ct1 = c * &t1;
                [
                    one(),
                    one(),
                    (&ct1 + &t2) / (&t1 + &t2),
                    one(),
                    (c * &(&t1 + &t2)) / (&ct1 + &t2),
                    one(),
                ]
            }
            _ => panic!("index {i} out of range"),
        }
    }

    pub fn eps(&self, i: usize, x: &[Rational; 6]) -> Rational {
        let [x0, x1, x2, x3, x4, x5] = x;
        match i {
            0 => {
                let e = &defgh(&Rational::one(), x)[1];
                e / &(x0.pow(3) * x2.pow(3) * x3)
            }
            1 => {
                x0 / x1
                    + x0 * &x2.pow(3) / (x1 * x1 * x3)
                    + x0 * &x2.pow(3) * x4.pow(3) / (x1 * x1 * x3 * x3 * x5)
            }
            2 => x1 / x2 + x1 * x3 / (x2 * x2 * x4),
            _ => panic!("index {i} out of range"),
        }
    }

    pub fn gamma(&self, i: usize, x: &[Rational; 6]) -> Rational {
        let [x0, x1, x2, x3, x4, x5] = x;
        match i {
            0 => x0 * x0 / (x1 * x3 * x5),
            1 => (x1 * x3 * x5).pow(2) / (x0 * &(x2 * x4).pow(3)),
            2 => (x2 * x4).pow(2) / (x1 * x3 * x5),
            _ => panic!("index {i} out of range"),
        }
    }
}

impl GeometricAction for G2Crystal {
    fn dim(&self) -> usize {
        6
    }

    fn e(&self, i: usize, c: &Rational, x: &[Rational]) -> Vec<Rational> {
        let x: &[Rational; 6] = x.try_into().expect("six coordinates");
        self.multipliers(i, c, x)
            .iter()
            .zip(x)
            .map(|(m, v)| m * v)
            .collect()
    }
}

pub fn geom_e(i: usize, c: &Rational, x: &GeometricPoint) -> Result<GeometricPoint, G2Error> {
    check_index(i)?;
    if !c.is_positive() {
        return Err(G2Error::BadParameter(c.clone()));
    }
    GeometricPoint::new(G2Crystal.e(i, c, x.coords()))
}

pub fn geom_eps(i: usize, x: &GeometricPoint) -> Result<Rational, G2Error> {
    check_index(i)?;
    Ok(G2Crystal.eps(i, x.coords()))
}

pub fn geom_gamma(i: usize, x: &GeometricPoint) -> Result<Rational, G2Error> {
    check_index(i)?;
    Ok(G2Crystal.gamma(i, x.coords()))
}

/// Symbolic multipliers, `ε_i` and `γ_i` over `(c, x0, …, x5)`.
#[derive(Debug, Clone)]
pub struct GeomSymbolic {
    pub multipliers: [PosRatExpr; 6],
    pub epsilon: PosRatExpr,
    pub gamma: PosRatExpr,
}

const D_TXT: &str = "c^2*x0^2*x2^3*x3 + x1*x2^3*x3^2*x5 + c*x0*(x1*x3^3 + 3*x1*x2*x3^2*x4 \
    + 3*x1*x2^2*x3*x4^2 + x2^3*(x3^2 + x1*x4^3 + x1*x3*x5))";
const E_TXT: &str = "x0^2*x2^3*x3 + x1*x2^3*x3^2*x5 + x0*(x1*x3^3 + 3*x1*x2*x3^2*x4 \
    + 3*x1*x2^2*x3*x4^2 + x2^3*(x3^2 + x1*x4^3 + x1*x3*x5))";
const F_TXT: &str = "c*x0^2*x2^3*x3 + x1*x2^3*x3^2*x5 + x0*(c*x1*x3^3 + 3*c*x1*x2*x3^2*x4 \
    + 3*c*x1*x2^2*x3*x4^2 + x2^3*(x3^2 + c*x1*x4^3 + c*x1*x3*x5))";
const G_TXT: &str = "c*x0^2*x2^3*x3 + x1*x2^3*x3^2*x5 + x0*(x1*x3^3 + (2 + c)*x1*x2*x3^2*x4 \
    + (1 + 2*c)*x1*x2^2*x3*x4^2 + x2^3*(x3^2 + c*x1*x4^3 + c*x1*x3*x5))";
const H_TXT: &str = "c*x0^2*x2^3*x3 + x1*x2^3*x3^2*x5 + x0*(x1*x3^3 + 3*x1*x2*x3^2*x4 \
    + 3*x1*x2^2*x3*x4^2 + x2^3*(x3^2 + x1*x4^3 + c*x1*x3*x5))";

const T1: &str = "x0/x1";
const T2: &str = "x0*x2^3/(x1^2*x3)";
const T3: &str = "x0*x2^3*x4^3/(x1^2*x3^2*x5)";
const S1: &str = "x1/x2";
const S2: &str = "x1*x3/(x2^2*x4)";

fn p(s: &str) -> PosRatExpr {
    parse_expr(s, &VARS).expect("built-in formula parses")
}

/// `D, E, F, G, H` as expressions in `(c, x)`.
pub fn defgh_symbolic() -> [PosRatExpr; 5] {
    [D_TXT, E_TXT, F_TXT, G_TXT, H_TXT].map(p)
}

fn build_symbolic(i: usize) -> GeomSymbolic {
    let one = PosRatExpr::one;
    match i {
        0 => {
            let [d, e, f, g, h] = defgh_symbolic();
            let c = PosRatExpr::var("c");
            let ce = c.mul(&e);
            GeomSymbolic {
                multipliers: [
                    d.div(&ce),
                    f.div(&ce),
                    g.div(&ce),
                    d.mul(&h).div(&c.mul(&ce).mul(&f)),
                    d.div(&c.mul(&g)),
                    d.div(&c.mul(&h)),
                ],
                epsilon: e.div(&p("x0^3*x2^3*x3")),
                gamma: p("x0^2/(x1*x3*x5)"),
            }
        }
        1 => GeomSymbolic {
            multipliers: [
                one(),
                p(&format!("(c*{T1} + {T2} + {T3})/({T1} + {T2} + {T3})")),
                one(),
                p(&format!("(c*{T1} + c*{T2} + {T3})/(c*{T1} + {T2} + {T3})")),
                one(),
                p(&format!("c*({T1} + {T2} + {T3})/(c*{T1} + c*{T2} + {T3})")),
            ],
            epsilon: p(&format!("{T1} + {T2} + {T3}")),
            gamma: p("x1^2*x3^2*x5^2/(x0*x2^3*x4^3)"),
        },
        2 => GeomSymbolic {
            multipliers: [
                one(),
                one(),
                p(&format!("(c*{S1} + {S2})/({S1} + {S2})")),
                one(),
                p(&format!("c*({S1} + {S2})/(c*{S1} + {S2})")),
                one(),
            ],
            epsilon: p(&format!("{S1} + {S2}")),
            gamma: p("x2^2*x4^2/(x1*x3*x5)"),
        },
        _ => unreachable!(),
    }
}

/// Symbolic forms of `e_i^c`, `ε_i`, `γ_i`; built once and cached.
pub fn geom_symbolic(i: usize) -> Result<&'static GeomSymbolic, G2Error> {
    static CACHE: OnceLock<[GeomSymbolic; 3]> = OnceLock::new();
    check_index(i)?;
    Ok(&CACHE.get_or_init(|| [0, 1, 2].map(build_symbolic))[i])
}

/// First failure among the sampled geometric-crystal axioms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomFailure {
    pub axiom: String,
    pub i: usize,
    pub j: Option<usize>,
    pub x: Vec<Rational>,
    pub c: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub samples: usize,
    pub seed: u64,
    pub checks: usize,
    pub failure: Option<AxiomFailure>,
}

/// At seeded positive points: `γ_j(e_i^c x) = c^{a_ij} γ_j(x)`,
/// `ε_i(e_i^c x) = c^{-1} ε_i(x)` and `e_i^c e_i^{c'} = e_i^{cc'}`.
pub fn check_axioms(samples: usize, seed: u64) -> AxiomReport {
    let cartan = G2Crystal.cartan();
    let mut rng = crate::sample::rng(seed);
    let mut checks = 0;
    for _ in 0..samples {
        let x: [Rational; 6] = crate::sample::positive_point(&mut rng, 6).try_into().expect("six");
        let c = crate::sample::positive_rational(&mut rng);
        let c2 = crate::sample::positive_rational(&mut rng);
        let fail = |axiom: &str, i, j| AxiomFailure { axiom: axiom.into(), i, j, x: x.to_vec(), c: c.clone() };
        for i in 0..3 {
            let y: [Rational; 6] = G2Crystal.e(i, &c, &x).try_into().expect("six");
            for j in 0..3 {
                checks += 1;
                let want = c.pow(cartan.a(i, j) as i32) * G2Crystal.gamma(j, &x);
                if G2Crystal.gamma(j, &y) != want {
                    return AxiomReport { samples, seed, checks, failure: Some(fail("gamma", i, Some(j))) };
                }
            }
            checks += 2;
            if G2Crystal.eps(i, &y) != c.recip() * G2Crystal.eps(i, &x) {
                return AxiomReport { samples, seed, checks, failure: Some(fail("epsilon", i, None)) };
            }
            let twice = G2Crystal.e(i, &c2, &y);
            if twice != G2Crystal.e(i, &(&c * &c2), &x) {
                return AxiomReport { samples, seed, checks, failure: Some(fail("group_law", i, None)) };
            }
        }
    }
    AxiomReport { samples, seed, checks, failure: None }
}

/// Agreement of the Schubert-cell formulas on the word `(0,1,2,1,2,1)` with
/// the closed forms: `γ_i` for every `i`, `ε_i` and `e_i^c` for `i = 1, 2`.
/// (`e_0^c` does not come from the cell, so its `ε_0` differs by design.)
pub fn closed_form_checks() -> Vec<(String, bool)> {
    let cartan = CartanData::g2_affine();
    let word = Word::g2_v1();
    let mut out = Vec::new();
    for i in 0..3 {
        let sym = geom_symbolic(i).expect("valid index");
        let g = schubert_gamma(&cartan, &word, i, &XS).expect("valid word");
        out.push((format!("gamma_{i}"), g.equals(&sym.gamma)));
        if i == 0 {
            continue;
        }
        let e = schubert_epsilon(&cartan, &word, i, &XS).expect("index occurs");
        out.push((format!("epsilon_{i}"), e.equals(&sym.epsilon)));
        let act = schubert_action(&cartan, &word, i, &XS).expect("valid word");
        let ok = act
            .iter()
            .zip(&sym.multipliers)
            .zip(XS)
            .all(|((a, m), x)| a.equals(&PosRatExpr::var(x).mul(m)));
        out.push((format!("e_{i}"), ok));
    }
    out
}
