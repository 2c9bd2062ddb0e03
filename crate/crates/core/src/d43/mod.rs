//! The D4(3) crystals `B_l` (level `l`) and their limit `B_inf`.
//!
//! Elements are 6-tuples `(b1, b2, b3, b3bar, b2bar, b1bar)`. The two
//! crystals share every operator and statistic except `ε_0` / `φ_0`, which
//! carry an extra `l` in the level context. In `B_l` an operator whose result
//! leaves the set gives `None` (the null element).

mod crystal;
mod perfect;

pub use crystal::{crystal_graph, Crystal, CrystalGraph, Edge, Ext, TElem, TLambda, Tensor, TensorElem};
pub use perfect::{is_perfect, is_perfect_capped, PerfectReport, DEFAULT_PERFECT_CAP};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cartan::{CartanData, ClassicalWeight};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum D43Error {
    #[error("parity violation: b3 and b3bar must agree mod 2 in {0}")]
    Parity(CrystalElem),
    #[error("{elem} is not an element of B_{level}")]
    NotInBl { elem: CrystalElem, level: i64 },
    #[error("level must be positive, got {0}")]
    BadLevel(i64),
    #[error("{elem} is not a minimal element of B_{level}")]
    NotMinimal { elem: CrystalElem, level: i64 },
    #[error("index {0} out of range (expected 0, 1 or 2)")]
    BadIndex(usize),
    #[error("level {level} exceeds the enumeration cap {cap}")]
    OverCap { level: i64, cap: i64 },
}

/// Which crystal an element lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Context {
    Level(i64),
    Limit,
}

/// `(b1, b2, b3, b3bar, b2bar, b1bar)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CrystalElem(pub [i64; 6]);

impl CrystalElem {
    pub const ZERO: CrystalElem = CrystalElem([0; 6]);

    pub fn new(b: [i64; 6]) -> Result<Self, D43Error> {
        let e = CrystalElem(b);
        if (b[2] - b[3]).rem_euclid(2) != 0 {
            return Err(D43Error::Parity(e));
        }
        Ok(e)
    }

    pub fn entries(&self) -> [i64; 6] {
        self.0
    }

    /// Node id used in graph exports: `b1_b2_b3_b3b_b2b_b1b`.
    pub fn node_id(&self) -> String {
        self.0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("_")
    }
}

impl fmt::Display for CrystalElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = self.0;
        write!(f, "({},{},{},{},{},{})", b[0], b[1], b[2], b[3], b[4], b[5])
    }
}

impl fmt::Debug for CrystalElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An element paired with its context, in the external JSON layout.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElemJson {
    pub b: [i64; 6],
    pub context: Context,
}

/// `Some(b)` or the null element `0`.
pub type MaybeElem = Option<CrystalElem>;

const B1: usize = 0;
const B2: usize = 1;
const B3: usize = 2;
const B3B: usize = 3;
const B2B: usize = 4;
const B1B: usize = 5;

fn pos(x: i64) -> i64 {
    x.max(0)
}

fn check_parity(b: &CrystalElem) -> Result<(), D43Error> {
    CrystalElem::new(b.0).map(|_| ())
}

/// `(z1, z2, z3, z4)`.
pub fn z_vec(b: &CrystalElem) -> Result<[i64; 4], D43Error> {
    check_parity(b)?;
    let b = b.0;
    Ok([b[B1B] - b[B1], b[B2B] - b[B3B], b[B3] - b[B2], (b[B3B] - b[B3]) / 2])
}

pub fn s_of(b: &CrystalElem) -> Result<i64, D43Error> {
    check_parity(b)?;
    let b = b.0;
    Ok(b[B1] + b[B2] + (b[B3] + b[B3B]) / 2 + b[B2B] + b[B1B])
}

pub fn a_list(b: &CrystalElem) -> Result<[i64; 6], D43Error> {
    let [z1, z2, z3, z4] = z_vec(b)?;
    Ok([
        0,
        z1,
        z1 + z2,
        z1 + z2 + 3 * z4,
        z1 + z2 + z3 + 3 * z4,
        2 * z1 + z2 + z3 + 3 * z4,
    ])
}

/// The conditions `(E_1)..(E_6)` (or `(F_1)..(F_6)` when `strict` is false
/// on the `<` side), returned as six booleans.
pub fn zero_conditions(z: [i64; 4], for_e: bool) -> [bool; 6] {
    let [z1, z2, z3, z4] = z;
    let lt = |x: i64| if for_e { x < 0 } else { x <= 0 };
    let ge = |x: i64| if for_e { x >= 0 } else { x > 0 };
    [
        lt(z1 + z2 + z3 + 3 * z4) && lt(z1 + z2 + 3 * z4) && lt(z1 + z2) && lt(z1),
        lt(z1 + z2 + z3 + 3 * z4) && lt(z2 + 3 * z4) && lt(z2) && ge(z1),
        lt(z1 + z3 + 3 * z4) && lt(z3 + 3 * z4) && lt(z4) && ge(z2) && ge(z1 + z2),
        ge(z1 + z2 + 3 * z4) && ge(z2 + 3 * z4) && ge(z4) && lt(z3) && lt(z1 + z3),
        ge(z1 + z2 + z3 + 3 * z4) && ge(z3 + 3 * z4) && ge(z3) && lt(z1),
        ge(z1 + z2 + z3 + 3 * z4) && ge(z1 + z3 + 3 * z4) && ge(z1 + z3) && ge(z1),
    ]
}

/// The unique firing case (1-based).
///
/// # Panics
/// If the conditions do not partition `Z^4` at `z` — a transcription bug.
pub fn zero_case(z: [i64; 4], for_e: bool) -> usize {
    let conds = zero_conditions(z, for_e);
    let hits: Vec<usize> = (0..6).filter(|&k| conds[k]).map(|k| k + 1).collect();
    assert!(
        hits.len() == 1,
        "{} conditions at z = {z:?} fire as {hits:?}",
        if for_e { "E" } else { "F" }
    );
    hits[0]
}

/// Unconstrained `ẽ_i` (the `B_inf` rule).
fn raw_e(i: usize, b: &CrystalElem) -> Result<CrystalElem, D43Error> {
    let mut r = b.0;
    let b = b.0;
    match i {
        0 => {
            let z = z_vec(&CrystalElem(b))?;
            match zero_case(z, true) {
                1 => r[B1] -= 1,
                2 => {
                    r[B3] -= 1;
                    r[B3B] -= 1;
                    r[B1B] += 1;
                }
                3 => {
                    r[B3] -= 2;
                    r[B2B] += 1;
                }
                4 => {
                    r[B2] -= 1;
                    r[B3B] += 2;
                }
                5 => {
                    r[B1] -= 1;
                    r[B3] += 1;
                    r[B3B] += 1;
                }
                _ => r[B1B] += 1,
            }
        }
        1 => {
            let d = b[B2B] - b[B3B];
            let u = b[B2] - b[B3];
            if d >= pos(u) {
                r[B2B] += 1;
                r[B1B] -= 1;
            } else if d < 0 && 0 <= b[B3] - b[B2] {
                r[B3] += 1;
                r[B3B] -= 1;
            } else {
                debug_assert!(pos(d) < u);
                r[B1] += 1;
                r[B2] -= 1;
            }
        }
        2 => {
            if b[B3B] >= b[B3] {
                r[B3B] += 2;
                r[B2B] -= 1;
            } else {
                r[B2] += 1;
                r[B3] -= 2;
            }
        }
        _ => return Err(D43Error::BadIndex(i)),
    }
    Ok(CrystalElem(r))
}

/// Unconstrained `f̃_i` (the `B_inf` rule).
fn raw_f(i: usize, b: &CrystalElem) -> Result<CrystalElem, D43Error> {
    let mut r = b.0;
    let b = b.0;
    match i {
        0 => {
            let z = z_vec(&CrystalElem(b))?;
            match zero_case(z, false) {
                1 => r[B1] += 1,
                2 => {
                    r[B3] += 1;
                    r[B3B] += 1;
                    r[B1B] -= 1;
                }
                3 => {
                    r[B3] += 2;
                    r[B2B] -= 1;
                }
                4 => {
                    r[B2] += 1;
                    r[B3B] -= 2;
                }
                5 => {
                    r[B1] += 1;
                    r[B3] -= 1;
                    r[B3B] -= 1;
                }
                _ => r[B1B] -= 1,
            }
        }
        1 => {
            let d = b[B2B] - b[B3B];
            let u = b[B2] - b[B3];
            if pos(d) <= u {
                r[B1] -= 1;
                r[B2] += 1;
            } else if d <= 0 && 0 < b[B3] - b[B2] {
                r[B3] -= 1;
                r[B3B] += 1;
            } else {
                debug_assert!(d > pos(u));
                r[B2B] -= 1;
                r[B1B] += 1;
            }
        }
        2 => {
            if b[B3B] <= b[B3] {
                r[B2] -= 1;
                r[B3] += 2;
            } else {
                r[B3B] -= 2;
                r[B2B] += 1;
            }
        }
        _ => return Err(D43Error::BadIndex(i)),
    }
    Ok(CrystalElem(r))
}

/// `B_l` (for `Context::Level(l)`) or `B_inf`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct D43 {
    ctx: Context,
}

impl D43 {
    pub fn level(l: i64) -> Result<Self, D43Error> {
        if l < 1 {
            return Err(D43Error::BadLevel(l));
        }
        Ok(D43 { ctx: Context::Level(l) })
    }

    pub fn limit() -> Self {
        D43 { ctx: Context::Limit }
    }

    pub fn context(&self) -> Context {
        self.ctx
    }

    pub fn cartan() -> CartanData {
        CartanData::d43_affine()
    }

    pub fn contains(&self, b: &CrystalElem) -> bool {
        if check_parity(b).is_err() {
            return false;
        }
        match self.ctx {
            Context::Limit => true,
            Context::Level(l) => b.0.iter().all(|&v| v >= 0) && s_of(b).is_ok_and(|s| s <= l),
        }
    }

    pub fn validate(&self, b: &CrystalElem) -> Result<(), D43Error> {
        check_parity(b)?;
        match self.ctx {
            Context::Level(level) if !self.contains(b) => Err(D43Error::NotInBl { elem: *b, level }),
            _ => Ok(()),
        }
    }

    fn truncate(&self, r: CrystalElem) -> MaybeElem {
        self.contains(&r).then_some(r)
    }

    pub fn e_tilde(&self, i: usize, b: &CrystalElem) -> Result<MaybeElem, D43Error> {
        self.validate(b)?;
        raw_e(i, b).map(|r| self.truncate(r))
    }

    pub fn f_tilde(&self, i: usize, b: &CrystalElem) -> Result<MaybeElem, D43Error> {
        self.validate(b)?;
        raw_f(i, b).map(|r| self.truncate(r))
    }

    fn offset(&self) -> i64 {
        match self.ctx {
            Context::Level(l) => l,
            Context::Limit => 0,
        }
    }

    pub fn eps(&self, i: usize, b: &CrystalElem) -> Result<i64, D43Error> {
        let [z1, z2, z3, z4] = z_vec(b)?;
        let v = b.0;
        Ok(match i {
            0 => {
                let a = a_list(b)?;
                self.offset() - s_of(b)? + a.iter().max().unwrap() - (2 * z1 + z2 + z3 + 3 * z4)
            }
            1 => v[B1B] + pos(v[B3B] - v[B2B] + pos(v[B2] - v[B3])),
            2 => v[B2B] + pos(v[B3] - v[B3B]) / 2,
            _ => return Err(D43Error::BadIndex(i)),
        })
    }

    pub fn phi(&self, i: usize, b: &CrystalElem) -> Result<i64, D43Error> {
        let v = b.0;
        check_parity(b)?;
        Ok(match i {
            0 => self.offset() - s_of(b)? + a_list(b)?.iter().max().unwrap(),
            1 => v[B1] + pos(v[B3] - v[B2] + pos(v[B2B] - v[B3B])),
            2 => v[B2] + pos(v[B3B] - v[B3]) / 2,
            _ => return Err(D43Error::BadIndex(i)),
        })
    }

    /// `Σ (φ_i − ε_i) Λ_i`.
    pub fn wt(&self, b: &CrystalElem) -> Result<ClassicalWeight, D43Error> {
        (0..3)
            .map(|i| Ok(self.phi(i, b)? - self.eps(i, b)?))
            .collect::<Result<Vec<_>, _>>()
            .map(ClassicalWeight::new)
    }

    /// `ε(b) = Σ ε_i Λ_i`.
    pub fn eps_weight(&self, b: &CrystalElem) -> Result<ClassicalWeight, D43Error> {
        (0..3).map(|i| self.eps(i, b)).collect::<Result<Vec<_>, _>>().map(ClassicalWeight::new)
    }

    pub fn phi_weight(&self, b: &CrystalElem) -> Result<ClassicalWeight, D43Error> {
        (0..3).map(|i| self.phi(i, b)).collect::<Result<Vec<_>, _>>().map(ClassicalWeight::new)
    }

    pub fn to_json(&self, b: &CrystalElem) -> ElemJson {
        ElemJson { b: b.0, context: self.ctx }
    }
}

/// All of `B_l`, in lexicographic order of the tuple.
pub fn enumerate_bl(l: i64) -> Result<Vec<CrystalElem>, D43Error> {
    if l < 1 {
        return Err(D43Error::BadLevel(l));
    }
    let mut out = Vec::new();
    for b1 in 0..=l {
        for b2 in 0..=l - b1 {
            for b3 in 0..=2 * (l - b1 - b2) {
                for b3b in 0..=2 * (l - b1 - b2) - b3 {
                    if (b3 + b3b) % 2 != 0 {
                        continue;
                    }
                    let used = b1 + b2 + (b3 + b3b) / 2;
                    for b2b in 0..=l - used {
                        for b1b in 0..=l - used - b2b {
                            out.push(CrystalElem([b1, b2, b3, b3b, b2b, b1b]));
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `(α, β, β, β, β, α)` with `2α + 3β ≤ l`, in lexicographic order.
pub fn minimal_closed_form(l: i64) -> Vec<CrystalElem> {
    let mut out = Vec::new();
    for a in 0..=l / 2 {
        for b in 0..=(l - 2 * a) / 3 {
            out.push(CrystalElem([a, b, b, b, b, a]));
        }
    }
    out.sort();
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct MinimalReport {
    pub level: i64,
    /// `{b : <c, ε(b)> = l}` computed from the ε_i formulas.
    pub by_definition: Vec<CrystalElem>,
    pub closed_form: Vec<CrystalElem>,
    pub agree: bool,
}

pub fn minimal_elements(l: i64) -> Result<MinimalReport, D43Error> {
    let crystal = D43::level(l)?;
    let cartan = D43::cartan();
    let mut by_definition = Vec::new();
    for b in enumerate_bl(l)? {
        if cartan.level(&crystal.eps_weight(&b)?) == l {
            by_definition.push(b);
        }
    }
    let closed_form = minimal_closed_form(l);
    Ok(MinimalReport { level: l, agree: by_definition == closed_form, by_definition, closed_form })
}

/// `f_(l,b0)`: subtract `α` from `b1, b1bar` and `β` from the other four.
pub fn coherent_embed(l: i64, b0: &CrystalElem, b: &CrystalElem) -> Result<CrystalElem, D43Error> {
    let bl = D43::level(l)?;
    let [a, be, be2, be3, be4, a2] = b0.0;
    let is_min = a == a2 && be == be2 && be == be3 && be == be4 && a >= 0 && be >= 0 && 2 * a + 3 * be <= l;
    if !is_min {
        return Err(D43Error::NotMinimal { elem: *b0, level: l });
    }
    bl.validate(b)?;
    let v = b.0;
    Ok(CrystalElem([v[0] - a, v[1] - be, v[2] - be, v[3] - be, v[4] - be, v[5] - a]))
}

/// Outcome of checking that `f_(l,b0)` is a crystal embedding of
/// `T_ε(b0) ⊗ B_l ⊗ T_−φ(b0)` into `B_inf`.
#[derive(Debug, Clone, Serialize)]
pub struct EmbedReport {
    pub level: i64,
    pub b0: CrystalElem,
    pub minimal_to_b_inf: bool,
    /// Operator applications compared (non-null on the tensor side).
    pub checked: usize,
    /// Applications that are null on the tensor side (no constraint).
    pub null: usize,
    pub failure: Option<String>,
}

impl EmbedReport {
    pub fn ok(&self) -> bool {
        self.minimal_to_b_inf && self.failure.is_none()
    }
}

pub fn check_embedding(l: i64, b0: &CrystalElem) -> Result<EmbedReport, D43Error> {
    let bl = D43::level(l)?;
    let binf = D43::limit();
    let lam = bl.eps_weight(b0)?;
    let mu = bl.phi_weight(b0)?.neg();
    let src = Tensor(Tensor(TLambda::new(lam.clone()), bl), TLambda::new(mu.clone()));
    let wrap = |b: CrystalElem| TensorElem::new(TensorElem::new(TElem, b), TElem);
    let mut rep = EmbedReport {
        level: l,
        b0: *b0,
        minimal_to_b_inf: coherent_embed(l, b0, b0)? == CrystalElem::ZERO,
        checked: 0,
        null: 0,
        failure: None,
    };
    'outer: for b in enumerate_bl(l)? {
        let x = wrap(b);
        let img = coherent_embed(l, b0, &b)?;
        if src.wt(&x) != binf.wt(&img)? {
            rep.failure = Some(format!("wt differs at {b}"));
            break;
        }
        for i in 0..3 {
            if src.eps(i, &x) != Ext::Fin(binf.eps(i, &img)?) || src.phi(i, &x) != Ext::Fin(binf.phi(i, &img)?) {
                rep.failure = Some(format!("ε_{i}/φ_{i} differ at {b}"));
                break 'outer;
            }
            for (name, lhs, rhs) in [
                ("e", src.e(i, &x), binf.e_tilde(i, &img)?),
                ("f", src.f(i, &x), binf.f_tilde(i, &img)?),
            ] {
                let Some(y) = lhs else {
                    rep.null += 1;
                    continue;
                };
                rep.checked += 1;
                let mapped = coherent_embed(l, b0, &y.left.right)?;
                if Some(mapped) != rhs {
                    rep.failure = Some(format!("{name}_{i} does not commute at {b}"));
                    break 'outer;
                }
            }
        }
    }
    Ok(rep)
}
