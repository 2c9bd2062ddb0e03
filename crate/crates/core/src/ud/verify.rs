//! Exhaustive box checks: auto-derived vs hand-written shifts, the
//! `Ω`-equivariance, and the convexity identity behind `ε_0`.

use rand::Rng;
use serde::Serialize;

use super::{
    auto_derive, greek_forms, hand_shifts, lin, omega, psi3_as_printed, ud_e, ud_eps, ud_f, ud_wt, UdError, UdPoint,
    A_FORM, B_FORM, C_FORM, L_FORM, M_FORM,
};
use crate::d43::D43;
use crate::g2::XS;
use crate::sample;
use crate::schubert::PARAM;
use crate::tropical::{
    find_first, pl_equal_on_box, BoxComparison, IntBox, LinForm, MaxPlusPoly, PLFunction, TropicalError, DEFAULT_BOX_CAP,
};
use crate::Rational;

fn max_of(forms: impl IntoIterator<Item = LinForm>) -> PLFunction {
    PLFunction::from_max(MaxPlusPoly::new(forms).expect("nonempty"))
}

/// `ε_i` on `Z^6` as a max-plus expression.
pub(super) fn hand_eps(i: usize) -> PLFunction {
    match i {
        0 => max_of(greek_forms()).sub(&PLFunction::form(lin([3, 0, 3, 1, 0, 0], 0))),
        1 => max_of([lin(A_FORM, 0), lin(B_FORM, 0), lin(C_FORM, 0)]),
        _ => max_of([lin(L_FORM, 0), lin(M_FORM, 0)]),
    }
}

pub(super) fn hand_wt(i: usize) -> PLFunction {
    PLFunction::form(match i {
        0 => lin([2, -1, 0, -1, 0, -1], 0),
        1 => lin([-1, 2, -3, 2, -3, 2], 0),
        _ => lin([0, -1, 2, -1, 2, -1], 0),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ShiftComparison {
    pub index: usize,
    /// `x0..x5` for a coordinate shift, or `epsilon` / `weight`.
    pub target: String,
    pub c: Option<i64>,
    pub result: BoxComparison,
}

#[derive(Debug, Clone, Serialize)]
pub struct AutoHandReport {
    pub radius: i64,
    pub comparisons: Vec<ShiftComparison>,
    /// The literal `Ψ_3` display against the derived shift of `x3`, `c = 1`.
    pub psi3_as_printed: BoxComparison,
    pub all_equal: bool,
}

fn cube(radius: i64) -> Result<IntBox, UdError> {
    if radius < 1 {
        return Err(UdError::BadRadius(radius));
    }
    Ok(IntBox::cube(&XS, radius))
}

/// Compares [`auto_derive`] against the hand-written shifts (at `c = 1`
/// and `c = −1`) and statistics on `[−radius, radius]^6`.
pub fn compare_auto_hand(indices: &[usize], radius: i64, jobs: usize) -> Result<AutoHandReport, UdError> {
    let bx = cube(radius)?;
    let cmp = |f: &PLFunction, g: &PLFunction| pl_equal_on_box(f, g, &bx, DEFAULT_BOX_CAP, jobs);
    let mut comparisons = Vec::new();
    for &i in indices {
        let auto = auto_derive(i)?;
        let hand = hand_shifts(i)?;
        for c in [1, -1] {
            for (k, (a, h)) in auto.shifts.iter().zip(&hand).enumerate() {
                let h = h.clone().unwrap_or_else(|| PLFunction::constant(0));
                comparisons.push(ShiftComparison {
                    index: i,
                    target: XS[k].to_string(),
                    c: Some(c),
                    result: cmp(&a.specialize(PARAM, c), &h.specialize(PARAM, c))?,
                });
            }
        }
        for (target, a, h) in [("epsilon", &auto.epsilon, hand_eps(i)), ("weight", &auto.weight, hand_wt(i))] {
            comparisons.push(ShiftComparison { index: i, target: target.into(), c: None, result: cmp(a, &h)? });
        }
    }
    let derived3 = auto_derive(0)?.shifts[3].specialize(PARAM, 1);
    let psi3 = cmp(&psi3_as_printed().specialize(PARAM, 1), &derived3)?;
    Ok(AutoHandReport {
        radius,
        all_equal: comparisons.iter().all(|c| c.result.is_equal()),
        comparisons,
        psi3_as_printed: psi3,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsoCounterexample {
    pub x: UdPoint,
    pub i: usize,
    pub check: String,
    pub upstairs: String,
    pub downstairs: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct IsoReport {
    pub radius: i64,
    pub ops: Vec<usize>,
    pub points: u64,
    /// `ẽ`, `f̃`, `ε`, `wt` per index and point.
    pub checks: u64,
    pub holds: bool,
    pub counterexample: Option<IsoCounterexample>,
}

fn probe_point(inf: &D43, x: &UdPoint, ops: &[usize]) -> Result<Option<IsoCounterexample>, UdError> {
    let b = omega(x);
    let bad = |i: usize, check: &str, up: String, down: String| {
        Some(IsoCounterexample { x: *x, i, check: check.into(), upstairs: up, downstairs: down })
    };
    for &i in ops {
        let up = omega(&ud_e(i, x)?);
        let down = inf.e_tilde(i, &b)?.expect("B_inf has no null arrows");
        if up != down {
            return Ok(bad(i, "e", up.to_string(), down.to_string()));
        }
        let up = omega(&ud_f(i, x)?);
        let down = inf.f_tilde(i, &b)?.expect("B_inf has no null arrows");
        if up != down {
            return Ok(bad(i, "f", up.to_string(), down.to_string()));
        }
        let (up, down) = (ud_eps(i, x)?, inf.eps(i, &b)?);
        if up != down {
            return Ok(bad(i, "epsilon", up.to_string(), down.to_string()));
        }
        let (up, down) = (ud_wt(i, x)?, inf.wt(&b)?.pairing(i));
        if up != down {
            return Ok(bad(i, "weight", up.to_string(), down.to_string()));
        }
    }
    Ok(None)
}

/// For every `x ∈ [−radius, radius]^6` and `i ∈ ops`: `Ω ẽ_i = ẽ_i Ω`,
/// `Ω f̃_i = f̃_i Ω`, `ε_i ∘ Ω = ε_i`, `wt_i ∘ Ω = wt_i`. Returns the
/// lexicographically first failure, independent of `jobs`.
pub fn verify_iso(radius: i64, ops: &[usize], jobs: usize, cap: u64) -> Result<IsoReport, UdError> {
    let bx = cube(radius)?;
    let points = bx.len();
    if points > cap as u128 {
        return Err(TropicalError::BoxTooLarge { points, cap }.into());
    }
    for &i in ops {
        if i > 2 {
            return Err(UdError::BadIndex(i));
        }
    }
    let inf = D43::limit();
    let hit = find_first(&bx, jobs, |x| {
        let x = UdPoint(x.try_into().expect("six coordinates"));
        probe_point(&inf, &x, ops).unwrap_or_else(|e| panic!("{e}"))
    });
    let points = points as u64;
    Ok(IsoReport {
        radius,
        ops: ops.to_vec(),
        points,
        checks: points * 4 * ops.len() as u64,
        holds: hit.is_none(),
        counterexample: hit.map(|(_, c)| c),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ConvexityReport {
    pub radius: i64,
    /// Eight-form maximum against the six-form maximum without `δ, ε`.
    pub del_ep: BoxComparison,
    /// `3δ = 2γ + ψ` and `3ε = γ + 2ψ` as linear forms.
    pub identities: bool,
    pub lemma_samples: usize,
    pub lemma_seed: u64,
    pub lemma_counterexample: Option<String>,
}

impl ConvexityReport {
    pub fn holds(&self) -> bool {
        self.del_ep.is_equal() && self.identities && self.lemma_counterexample.is_none()
    }
}

/// Both sides of `max(m_1, …, m_k, Σ t_i m_i) = max(m_1, …, m_k)`.
pub fn lemma_instance(m: &[Rational], t: &[Rational]) -> (Rational, Rational) {
    let comb: Rational = m.iter().zip(t).map(|(a, b)| a * b).sum();
    let rhs = m.iter().max().expect("nonempty").clone();
    (rhs.clone().max(comb), rhs)
}

pub fn convexity_check(radius: i64, jobs: usize, seed: u64, samples: usize) -> Result<ConvexityReport, UdError> {
    let bx = cube(radius)?;
    let g = greek_forms();
    let all = max_of(g.clone());
    let six = max_of([0, 1, 2, 5, 6, 7].map(|k| g[k].clone()));
    let del_ep = pl_equal_on_box(&all, &six, &bx, DEFAULT_BOX_CAP, jobs)?;
    let scaled = |f: &LinForm, k: i64| (0..k).fold(LinForm::constant(0), |acc, _| acc.add(f));
    let identities = scaled(&g[3], 3) == scaled(&g[2], 2).add(&g[6]) && scaled(&g[4], 3) == g[2].add(&scaled(&g[6], 2));

    let mut rng = sample::rng(seed);
    let mut lemma_counterexample = None;
    for _ in 0..samples {
        let k = rng.gen_range(1..=6);
        let m: Vec<Rational> =
            (0..k).map(|_| sample::positive_rational(&mut rng) - sample::positive_rational(&mut rng)).collect();
        let mut w: Vec<i64> = (0..k).map(|_| rng.gen_range(0..=9)).collect();
        if w.iter().all(|&v| v == 0) {
            w[0] = 1;
        }
        let total: i64 = w.iter().sum();
        let t: Vec<Rational> = w.iter().map(|&v| Rational::new(v, total)).collect();
        let (lhs, rhs) = lemma_instance(&m, &t);
        if lhs != rhs {
            lemma_counterexample = Some(format!("m = {m:?}, t = {t:?}"));
            break;
        }
    }
    Ok(ConvexityReport { radius, del_ep, identities, lemma_samples: samples, lemma_seed: seed, lemma_counterexample })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_box_isomorphism() {
        let r = verify_iso(1, &[0, 1, 2], 2, DEFAULT_BOX_CAP).unwrap();
        assert!(r.holds, "{:?}", r.counterexample);
        assert_eq!(r.points, 729);
        assert!(verify_iso(0, &[0], 1, DEFAULT_BOX_CAP).is_err());
        assert!(verify_iso(1, &[3], 1, DEFAULT_BOX_CAP).is_err());
        assert!(matches!(verify_iso(3, &[0], 1, 10), Err(UdError::Tropical(TropicalError::BoxTooLarge { .. }))));
    }

    #[test]
    fn lemma_examples() {
        let m = [Rational::from_int(0), Rational::from_int(3)];
        let t = [Rational::new(1, 3), Rational::new(2, 3)];
        assert_eq!(lemma_instance(&m, &t), (Rational::from_int(3), Rational::from_int(3)));
        let m = vec![Rational::new(5, 2); 3];
        let t = [Rational::new(1, 3), Rational::new(1, 3), Rational::new(1, 3)];
        let (a, b) = lemma_instance(&m, &t);
        assert_eq!(a, b);
    }

    #[test]
    fn convexity_small() {
        let r = convexity_check(2, 1, 11, 200).unwrap();
        assert!(r.holds(), "{r:?}");
    }

    #[test]
    fn hand_and_auto_agree_on_small_box() {
        let r = compare_auto_hand(&[0, 1, 2], 2, 1).unwrap();
        let bad: Vec<_> = r.comparisons.iter().filter(|c| !c.result.is_equal()).collect();
        assert!(bad.is_empty(), "{bad:?}");
    }
}
