//! One pass/fail line per acceptance criterion; nonzero exit on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use udcrystal::cartan::{CartanData, ClassicalWeight};
use udcrystal::d43::{
    check_embedding, coherent_embed, enumerate_bl, is_perfect, minimal_closed_form, minimal_elements, CrystalElem, D43,
};
use udcrystal::g2::rep::{check_commutators, check_gradation, check_nilpotency, v1_expand};
use udcrystal::g2::{check_axioms, closed_form_checks, G2Crystal};
use udcrystal::schubert::verma_check;
use udcrystal::tropical::DEFAULT_BOX_CAP;
use udcrystal::ud::{compare_auto_hand, convexity_check, omega, verify_iso, UdPoint};

// Pinned limits and sizes.
const SEED: u64 = 20_240_601;
const ISO_RADIUS: i64 = 4;
const AUTO_RADIUS: i64 = 4;
const CONVEXITY_RADIUS: i64 = 5;
const AXIOM_SAMPLES: usize = 100;
const VERMA_SAMPLES: usize = 50;
const LEMMA_SAMPLES: usize = 1000;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Brute-force oracle: filter the cube `[0, 2l]^6`.
fn brute_count(l: i64) -> usize {
    let r = 2 * l + 1;
    (0..r.pow(6))
        .filter(|&n| {
            let mut b = [0i64; 6];
            let mut m = n;
            for v in b.iter_mut() {
                *v = m % r;
                m /= r;
            }
            (b[2] - b[3]) % 2 == 0 && 2 * (b[0] + b[1] + b[4] + b[5]) + b[2] + b[3] <= 2 * l
        })
        .count()
}

fn enumeration() -> Outcome {
    let (n1, n2) = (enumerate_bl(1).map_err(|e| e.to_string())?.len(), enumerate_bl(2).map_err(|e| e.to_string())?.len());
    ensure(n1 == 8 && n2 == 35, || format!("|B_1| = {n1}, |B_2| = {n2}"))?;
    ensure(brute_count(1) == n1 && brute_count(2) == n2, || "oracle disagrees".into())?;
    Ok(format!("|B_1| = {n1}, |B_2| = {n2}"))
}

fn minimal() -> Outcome {
    for l in 1..=4 {
        let r = minimal_elements(l).map_err(|e| e.to_string())?;
        ensure(r.agree, || format!("l = {l}: {:?} vs {:?}", r.by_definition, r.closed_form))?;
    }
    for (l, count) in [(1, 1), (2, 2)] {
        let r = is_perfect(l).map_err(|e| e.to_string())?;
        ensure(r.eps_bijective && r.phi_bijective && r.dominant.len() == count, || {
            format!("l = {l}: {:?}", r.witness)
        })?;
    }
    Ok("l = 1..4 closed form; ε, φ bijective for l = 1, 2".into())
}

fn connected() -> Outcome {
    let mut sizes = Vec::new();
    for l in 1..=2 {
        let r = is_perfect(l).map_err(|e| e.to_string())?;
        ensure(r.connected, || format!("l = {l}: {:?}", r.witness))?;
        sizes.push(r.tensor_nodes);
    }
    ensure(sizes == [64, 1225], || format!("sizes {sizes:?}"))?;
    Ok("64 and 1225 nodes, one component each".into())
}

fn isomorphism() -> Outcome {
    let r = verify_iso(ISO_RADIUS, &[0, 1, 2], jobs(), DEFAULT_BOX_CAP).map_err(|e| e.to_string())?;
    ensure(r.holds, || format!("{:?}", r.counterexample))?;
    Ok(format!("{} points, {} checks, jobs = {}", r.points, r.checks, jobs()))
}

fn auto_vs_hand() -> Outcome {
    let r = compare_auto_hand(&[0, 1, 2], AUTO_RADIUS, jobs()).map_err(|e| e.to_string())?;
    let bad: Vec<_> = r.comparisons.iter().filter(|c| !c.result.is_equal()).collect();
    ensure(bad.is_empty(), || format!("{bad:?}"))?;
    let printed = if r.psi3_as_printed.is_equal() { "matches" } else { "differs from" };
    Ok(format!("{} comparisons equal; literal Ψ_3 display {printed} the derived shift", r.comparisons.len()))
}

fn axioms() -> Outcome {
    let r = check_axioms(AXIOM_SAMPLES, SEED);
    ensure(r.failure.is_none(), || format!("{:?}", r.failure))?;
    Ok(format!("{} samples, {} exact checks", r.samples, r.checks))
}

fn verma() -> Outcome {
    let g = CartanData::g2_affine();
    let mut names = Vec::new();
    for (i, j) in [(0, 2), (0, 1), (2, 1)] {
        let r = verma_check(&g, i, j, &G2Crystal, VERMA_SAMPLES, SEED).map_err(|e| e.to_string())?;
        ensure(r.variant_used.len() == 1, || format!("({i},{j}): {:?}", r.variants))?;
        names.push(format!("({i},{j}) {}", r.variant_used[0]));
    }
    Ok(names.join(", "))
}

fn representation() -> Outcome {
    check_gradation(&g2_cartan()).map_err(|v| format!("{v:?}"))?;
    check_nilpotency().map_err(|v| format!("{v:?}"))?;
    check_commutators().map_err(|v| format!("{v:?}"))?;
    let v = v1_expand().map_err(|e| e.to_string())?;
    ensure(v.len() == 15, || format!("{} components", v.len()))?;
    let bad: Vec<String> = closed_form_checks().into_iter().filter(|(_, ok)| !ok).map(|(n, _)| n).collect();
    ensure(bad.is_empty(), || format!("closed forms differ: {bad:?}"))?;
    Ok("gradation, nilpotency, commutators, 15 positive components, cell formulas".into())
}

fn g2_cartan() -> CartanData {
    CartanData::g2_affine()
}

fn convexity() -> Outcome {
    let r = convexity_check(CONVEXITY_RADIUS, jobs(), SEED, LEMMA_SAMPLES).map_err(|e| e.to_string())?;
    ensure(r.holds(), || format!("{r:?}"))?;
    Ok(format!("[-{CONVEXITY_RADIUS},{CONVEXITY_RADIUS}]^6 exhaustive, {LEMMA_SAMPLES} lemma instances"))
}

fn limit() -> Outcome {
    let inf = D43::limit();
    let b = omega(&UdPoint::ZERO);
    ensure(b == CrystalElem::ZERO, || format!("Ω(0) = {b}"))?;
    let zero = ClassicalWeight::zero(3);
    let stats_ok = inf.wt(&b).ok() == Some(zero.clone())
        && inf.eps_weight(&b).ok() == Some(zero.clone())
        && inf.phi_weight(&b).ok() == Some(zero);
    ensure(stats_ok, || "b_inf statistics nonzero".into())?;
    let mut minimal = 0;
    for l in 1..=4 {
        for b0 in minimal_closed_form(l) {
            minimal += 1;
            let img = coherent_embed(l, &b0, &b0).map_err(|e| e.to_string())?;
            ensure(img == CrystalElem::ZERO, || format!("l = {l}, b0 = {b0} ↦ {img}"))?;
        }
    }
    let mut checked = 0;
    for l in 1..=2 {
        for b0 in minimal_closed_form(l) {
            let r = check_embedding(l, &b0).map_err(|e| e.to_string())?;
            ensure(r.ok(), || format!("{r:?}"))?;
            checked += r.checked;
        }
    }
    Ok(format!("{minimal} minimal elements ↦ b_inf; {checked} operator applications commute"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("enumeration", enumeration, Duration::from_secs(1)),
        ("minimal elements", minimal, Duration::from_secs(1)),
        ("perfectness (i)", connected, Duration::from_secs(5)),
        ("isomorphism on [-4,4]^6", isomorphism, Duration::from_secs(300)),
        ("auto-derived = hand formulas", auto_vs_hand, Duration::from_secs(300)),
        ("geometric crystal axioms", axioms, Duration::from_secs(30)),
        ("Verma relations", verma, Duration::from_secs(60)),
        ("representation checks", representation, Duration::from_secs(10)),
        ("convexity", convexity, Duration::from_secs(30)),
        ("limit axioms", limit, Duration::from_secs(30)),
    ];
    let mut failed = 0;
    for (k, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if took > *limit => Err(format!("{detail}; took {took:.2?} > {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS {:>2}. {name}: {detail} ({took:.2?})", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2}. {name}: {why} ({took:.2?})", k + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
