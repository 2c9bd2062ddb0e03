//! The ultra-discretized G2(1) crystal on `Z^6` and the map `Ω` onto the
//! D4(3) limit crystal.
//!
//! Operators are stored as piecewise-linear shifts with the parameter `c`
//! kept live; `ẽ_i` specializes `c = 1` and `f̃_i` specializes `c = −1`.
//! The hand-written shifts follow the max-expressions coordinate by
//! coordinate; [`auto_derive`] produces the same functions by tropicalizing
//! the symbolic geometric action.

mod verify;

pub use verify::{
    compare_auto_hand, convexity_check, lemma_instance, verify_iso, AutoHandReport, ConvexityReport, IsoCounterexample,
    IsoReport, ShiftComparison,
};

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::d43::{zero_case, z_vec, CrystalElem, D43Error};
use crate::g2::{geom_symbolic, G2Error, XS};
use crate::schubert::PARAM;
use crate::tropical::{ultra_discretize, CompiledPl, LinForm, PLFunction, TropicalError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum UdError {
    #[error("index {0} out of range (expected 0, 1 or 2)")]
    BadIndex(usize),
    #[error(transparent)]
    Crystal(#[from] D43Error),
    #[error(transparent)]
    Tropical(#[from] TropicalError),
    #[error(transparent)]
    Geometric(#[from] G2Error),
    #[error("case conditions at {x:?} fire as {fired:?}")]
    CaseOverlap { x: [i64; 6], fired: Vec<usize> },
    #[error("box radius must be at least 1, got {0}")]
    BadRadius(i64),
}

/// `(x0, …, x5) ∈ Z^6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct UdPoint(pub [i64; 6]);

impl UdPoint {
    pub const ZERO: UdPoint = UdPoint([0; 6]);

    fn shifted(&self, d: [i64; 6]) -> UdPoint {
        let mut x = self.0;
        for k in 0..6 {
            x[k] += d[k];
        }
        UdPoint(x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GreekVector {
    pub alpha: i64,
    pub beta: i64,
    pub gamma: i64,
    pub delta: i64,
    pub epsilon: i64,
    pub phi: i64,
    pub psi: i64,
    pub xi: i64,
}

impl GreekVector {
    pub fn as_array(&self) -> [i64; 8] {
        [self.alpha, self.beta, self.gamma, self.delta, self.epsilon, self.phi, self.psi, self.xi]
    }
}

/// Coefficients of `α, β, γ, δ, ε, φ, ψ, ξ` on `x0..x5`.
pub const GREEK_COEFFS: [[i64; 6]; 8] = [
    [2, 0, 3, 1, 0, 0],
    [0, 1, 3, 2, 0, 1],
    [1, 1, 0, 3, 0, 0],
    [1, 1, 1, 2, 1, 0],
    [1, 1, 2, 1, 2, 0],
    [1, 0, 3, 2, 0, 0],
    [1, 1, 3, 0, 3, 0],
    [1, 1, 3, 1, 0, 1],
];

pub const GREEK_NAMES: [&str; 8] = ["alpha", "beta", "gamma", "delta", "epsilon", "phi", "psi", "xi"];

fn dot(a: &[i64; 6], x: &[i64; 6]) -> i64 {
    a.iter().zip(x).map(|(p, q)| p * q).sum()
}

pub fn greek(x: &UdPoint) -> GreekVector {
    let v = GREEK_COEFFS.map(|row| dot(&row, &x.0));
    let [alpha, beta, gamma, delta, epsilon, phi, psi, xi] = v;
    // δ and ε are the two interior points of the segment [γ, ψ].
    assert!(3 * delta == 2 * gamma + psi && 3 * epsilon == gamma + 2 * psi);
    GreekVector { alpha, beta, gamma, delta, epsilon, phi, psi, xi }
}

fn lin(coeffs: [i64; 6], k: i64) -> LinForm {
    LinForm::new(XS.iter().copied().zip(coeffs), k)
}

fn check_index(i: usize) -> Result<(), UdError> {
    if i > 2 {
        return Err(UdError::BadIndex(i));
    }
    Ok(())
}

const A_FORM: [i64; 6] = [1, -1, 0, 0, 0, 0];
const B_FORM: [i64; 6] = [1, -2, 3, -1, 0, 0];
const C_FORM: [i64; 6] = [1, -2, 3, -2, 3, -1];
const L_FORM: [i64; 6] = [0, 1, -1, 0, 0, 0];
const M_FORM: [i64; 6] = [0, 1, -2, 1, -1, 0];

pub fn ud_eps(i: usize, x: &UdPoint) -> Result<i64, UdError> {
    check_index(i)?;
    let x = &x.0;
    Ok(match i {
        0 => *greek(&UdPoint(*x)).as_array().iter().max().unwrap() - (3 * x[0] + 3 * x[2] + x[3]),
        1 => dot(&A_FORM, x).max(dot(&B_FORM, x)).max(dot(&C_FORM, x)),
        _ => dot(&L_FORM, x).max(dot(&M_FORM, x)),
    })
}

pub fn ud_wt(i: usize, x: &UdPoint) -> Result<i64, UdError> {
    check_index(i)?;
    let x = &x.0;
    Ok(match i {
        0 => 2 * x[0] - x[1] - x[3] - x[5],
        1 => 2 * (x[1] + x[3] + x[5]) - x[0] - 3 * x[2] - 3 * x[4],
        _ => 2 * (x[2] + x[4]) - x[1] - x[3] - x[5],
    })
}

/// `ε_i + wt_i`.
pub fn ud_phi(i: usize, x: &UdPoint) -> Result<i64, UdError> {
    Ok(ud_eps(i, x)? + ud_wt(i, x)?)
}

pub fn omega(x: &UdPoint) -> CrystalElem {
    let [x0, x1, x2, x3, x4, x5] = x.0;
    CrystalElem([x5, x4 - x5, x3 - 2 * x4, 2 * x2 - x3, x1 - x2, x0 - x1])
}

pub fn omega_inv(b: &CrystalElem) -> Result<UdPoint, UdError> {
    let b = CrystalElem::new(b.0)?.0;
    let [b1, b2, b3, b3b, b2b, b1b] = b;
    let x2 = b1 + b2 + (b3 + b3b) / 2;
    Ok(UdPoint([x2 + b2b + b1b, x2 + b2b, x2, 2 * b1 + 2 * b2 + b3, b1 + b2, b1]))
}

/// `max_k (n_k·c + form_k)`.
fn max_c(terms: &[(i64, LinForm)]) -> PLFunction {
    terms
        .iter()
        .map(|(n, f)| PLFunction::form(LinForm::new([(PARAM, *n)], 0).add(f)))
        .reduce(|a, b| a.max(&b))
        .expect("nonempty")
}

fn c_times(n: i64) -> PLFunction {
    PLFunction::form(LinForm::new([(PARAM, n)], 0))
}

fn greek_forms() -> [LinForm; 8] {
    GREEK_COEFFS.map(|row| lin(row, 0))
}

/// Tropical images of the polynomials `D, E, F, G, H`, with `c` live.
pub fn ud_defgh() -> [PLFunction; 5] {
    let [al, be, ga, de, ep, ph, ps, xi] = greek_forms();
    let d = max_c(&[
        (2, al.clone()),
        (0, be.clone()),
        (1, ga.clone()),
        (1, de.clone()),
        (1, ep.clone()),
        (1, ph.clone()),
        (1, ps.clone()),
        (1, xi.clone()),
    ]);
    let e = max_c(&[
        (0, al.clone()),
        (0, be.clone()),
        (0, ga.clone()),
        (0, de.clone()),
        (0, ep.clone()),
        (0, ph.clone()),
        (0, ps.clone()),
        (0, xi.clone()),
    ]);
    let f = max_c(&[
        (1, al.clone()),
        (0, be.clone()),
        (1, ga.clone()),
        (1, de.clone()),
        (1, ep.clone()),
        (0, ph.clone()),
        (1, ps.clone()),
        (1, xi.clone()),
    ]);
    // (2 + c) and (1 + 2c) tropicalize to max(0, c).
    let g = max_c(&[
        (1, al.clone()),
        (0, be.clone()),
        (0, ga.clone()),
        (0, de.clone()),
        (1, de.clone()),
        (0, ep.clone()),
        (1, ep.clone()),
        (0, ph.clone()),
        (1, ps.clone()),
        (1, xi.clone()),
    ]);
    let h = max_c(&[(1, al), (0, be), (0, ga), (0, de), (0, ep), (0, ph), (0, ps), (1, xi)]);
    [d, e, f, g, h]
}

/// `Ξ_1..Ξ_5` (index `j` as in the coordinate it shifts), `c` live.
pub fn hand_xi(j: usize) -> Option<PLFunction> {
    let (a, b, cc) = (lin(A_FORM, 0), lin(B_FORM, 0), lin(C_FORM, 0));
    let (l, m) = (lin(L_FORM, 0), lin(M_FORM, 0));
    Some(match j {
        1 => max_c(&[(1, a.clone()), (0, b.clone()), (0, cc.clone())]).sub(&max_c(&[(0, a), (0, b), (0, cc)])),
        3 => max_c(&[(1, a.clone()), (1, b.clone()), (0, cc.clone())]).sub(&max_c(&[(1, a), (0, b), (0, cc)])),
        5 => max_c(&[(1, a.clone()), (1, b.clone()), (1, cc.clone())]).sub(&max_c(&[(1, a), (1, b), (0, cc)])),
        2 => max_c(&[(1, l.clone()), (0, m.clone())]).sub(&max_c(&[(0, l), (0, m)])),
        4 => max_c(&[(1, l.clone()), (1, m.clone())]).sub(&max_c(&[(1, l), (0, m)])),
        _ => return None,
    })
}

/// `Ψ_0..Ψ_5`, `c` live. `Ψ_3` is the tropical image of the `x3`
/// multiplier `D·H / (c²·E·F)`; see [`psi3_as_printed`].
pub fn hand_psi(j: usize) -> Option<PLFunction> {
    let [d, e, f, g, h] = ud_defgh();
    Some(match j {
        0 => d.sub(&c_times(1)).sub(&e),
        1 => f.sub(&c_times(1)).sub(&e),
        2 => g.sub(&c_times(1)).sub(&e),
        3 => d.add(&h).sub(&c_times(2)).sub(&e).sub(&f),
        4 => d.sub(&c_times(1)).sub(&g),
        5 => d.sub(&c_times(1)).sub(&h),
        _ => return None,
    })
}

/// The `Ψ_3` display taken literally: its middle two maxima are identical
/// and cancel, leaving `UD(D) − UD(G) − 2c`. Meaningful at `c = 1` only.
pub fn psi3_as_printed() -> PLFunction {
    let [d, _, _, g, h] = ud_defgh();
    d.add(&h).sub(&h).sub(&g).sub(&c_times(2))
}

/// Coordinate shifts of the hand-written `ẽ_i` / `f̃_i` with `c` live;
/// `None` marks an identically zero shift.
pub fn hand_shifts(i: usize) -> Result<[Option<PLFunction>; 6], UdError> {
    check_index(i)?;
    Ok(match i {
        0 => [0, 1, 2, 3, 4, 5].map(hand_psi),
        1 => [None, hand_xi(1), None, hand_xi(3), None, hand_xi(5)],
        _ => [None, None, hand_xi(2), None, hand_xi(4), None],
    })
}

/// Tropicalization of the symbolic `e_i^c` multipliers, `ε_i` and `γ_i`.
#[derive(Debug, Clone, Serialize)]
pub struct AutoDerived {
    pub index: usize,
    /// Shift of `x_j` is `UD(multiplier_j)`, with `c` live.
    pub shifts: [PLFunction; 6],
    pub epsilon: PLFunction,
    pub weight: PLFunction,
}

impl AutoDerived {
    pub fn specialize(&self, c: i64) -> [PLFunction; 6] {
        self.shifts.clone().map(|f| f.specialize(PARAM, c))
    }

    pub fn to_json(&self, c: Option<i64>) -> serde_json::Value {
        let shifts: Vec<serde_json::Value> = self
            .shifts
            .iter()
            .map(|f| match c {
                Some(c) => f.specialize(PARAM, c).to_json(),
                None => f.to_json(),
            })
            .collect();
        serde_json::json!({
            "index": self.index,
            "c": c,
            "shifts": shifts,
            "epsilon": self.epsilon.to_json(),
            "weight": self.weight.to_json(),
        })
    }
}

pub fn auto_derive(i: usize) -> Result<AutoDerived, UdError> {
    let sym = geom_symbolic(i)?;
    Ok(AutoDerived {
        index: i,
        shifts: sym.multipliers.clone().map(|m| ultra_discretize(&m)),
        epsilon: ultra_discretize(&sym.epsilon),
        weight: ultra_discretize(&sym.gamma),
    })
}

/// Compiled shifts for `ẽ_i` (c = 1) and `f̃_i` (c = −1).
struct Ops {
    e: [[Option<CompiledPl>; 6]; 3],
    f: [[Option<CompiledPl>; 6]; 3],
}

fn compile_at(f: &PLFunction, c: i64) -> CompiledPl {
    f.specialize(PARAM, c).compile(&XS).expect("shifts only involve c and x0..x5")
}

fn ops() -> &'static Ops {
    static OPS: OnceLock<Ops> = OnceLock::new();
    OPS.get_or_init(|| {
        let hand = [0, 1, 2].map(|i| hand_shifts(i).expect("valid index"));
        let auto0 = auto_derive(0).expect("index 0 derives");
        let e = hand.clone().map(|s| s.map(|f| f.map(|f| compile_at(&f, 1))));
        let mut f = hand.map(|s| s.map(|f| f.map(|f| compile_at(&f, -1))));
        // No hand display exists for f̃_0: take it from the derivation.
        f[0] = auto0.shifts.map(|g| Some(compile_at(&g, -1)));
        Ops { e, f }
    })
}

fn apply(shifts: &[Option<CompiledPl>; 6], x: &UdPoint) -> UdPoint {
    let d = std::array::from_fn(|k| shifts[k].as_ref().map_or(0, |f| f.eval(&x.0)));
    x.shifted(d)
}

/// `ẽ_i` on `Z^6` (total).
pub fn ud_e(i: usize, x: &UdPoint) -> Result<UdPoint, UdError> {
    check_index(i)?;
    Ok(apply(&ops().e[i], x))
}

/// `f̃_i` on `Z^6` (total).
pub fn ud_f(i: usize, x: &UdPoint) -> Result<UdPoint, UdError> {
    check_index(i)?;
    Ok(apply(&ops().f[i], x))
}

/// `Ψ` at `c = 1` implied by each of the cases (e1)..(e6).
pub const CASE_PSI: [[i64; 6]; 6] = [
    [-1, -1, -1, -2, -1, -1],
    [0, -1, -1, -1, 0, 0],
    [0, 0, -1, -2, 0, 0],
    [0, 0, 0, -2, -1, 0],
    [0, 0, 0, -1, -1, -1],
    [1, 0, 0, 0, 0, 0],
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseReport {
    pub point: UdPoint,
    /// 1-based case number.
    pub case: usize,
    pub tag: String,
    pub psi: [i64; 6],
    /// The `(E_i)` case of `z(Ω(x))`, which must agree.
    pub combinatorial_case: usize,
}

/// Which of (e1)..(e6) hold at `x`; (e4'), (e4'') count as (e4).
pub fn case_conditions(x: &UdPoint) -> [bool; 6] {
    let g = greek(x);
    let (al, be, ga, de, ep, ph, ps, xi) = (g.alpha, g.beta, g.gamma, g.delta, g.epsilon, g.phi, g.psi, g.xi);
    let gt = |top: i64, rest: &[i64]| rest.iter().all(|&v| top > v);
    let ge = |top: i64, rest: &[i64]| rest.iter().all(|&v| top >= v);
    [
        gt(be, &[al, ga, de, ep, ph, ps, xi]),
        ge(ph, &[be]) && gt(ph, &[al, ga, de, ep, ps, xi]),
        ge(ga, &[be, ph]) && gt(ga, &[al, de, ep, ps, xi]),
        (ge(ps, &[be, ga, de, ep, ph]) && gt(ps, &[al, xi]))
            || (ge(de, &[be, ga, ep, ph, ps]) && gt(de, &[al, xi]))
            || (ge(ep, &[be, ga, de, ph, ps]) && gt(ep, &[al, xi])),
        ge(xi, &[be, ga, de, ep, ph, ps]) && gt(xi, &[al]),
        ge(al, &[be, ga, de, ep, ph, ps, xi]),
    ]
}

pub fn case_classify(x: &UdPoint) -> Result<CaseReport, UdError> {
    let conds = case_conditions(x);
    let fired: Vec<usize> = (0..6).filter(|&k| conds[k]).map(|k| k + 1).collect();
    if fired.len() != 1 {
        return Err(UdError::CaseOverlap { x: x.0, fired });
    }
    let case = fired[0];
    Ok(CaseReport {
        point: *x,
        case,
        tag: format!("e{case}"),
        psi: CASE_PSI[case - 1],
        combinatorial_case: zero_case(z_vec(&omega(x))?, true),
    })
}
