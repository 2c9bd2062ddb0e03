use proptest::prelude::*;

use udcrystal::d43::{zero_case, z_vec, CrystalElem, D43};
use udcrystal::g2::XS;
use udcrystal::schubert::PARAM;
use udcrystal::tropical::{BoxComparison, IntBox, DEFAULT_BOX_CAP};
use udcrystal::ud::{
    auto_derive, case_classify, compare_auto_hand, convexity_check, greek, hand_psi, hand_xi, omega, omega_inv,
    psi3_as_printed, ud_e, ud_eps, ud_f, ud_phi, ud_wt, verify_iso, UdPoint, CASE_PSI,
};

fn each_point(radius: i64, mut f: impl FnMut(UdPoint)) {
    let bx = IntBox::cube(&XS, radius);
    for k in 0..bx.len() as u64 {
        f(UdPoint(bx.point_at(k).try_into().unwrap()));
    }
}

#[test]
fn iso_on_radius_two_with_any_job_count() {
    let one = verify_iso(2, &[0, 1, 2], 1, DEFAULT_BOX_CAP).unwrap();
    assert!(one.holds);
    assert_eq!(one.points, 15625);
    let many = verify_iso(2, &[0, 1, 2], 4, DEFAULT_BOX_CAP).unwrap();
    assert_eq!(serde_json::to_value(&one).unwrap(), serde_json::to_value(&many).unwrap());
}

#[test]
fn single_point_spot_check() {
    let x = UdPoint([1, 1, 1, 2, 1, 1]);
    assert_eq!(omega(&ud_e(0, &x).unwrap()), CrystalElem::ZERO);
    assert_eq!(D43::limit().e_tilde(0, &omega(&x)).unwrap(), Some(CrystalElem::ZERO));
}

#[test]
fn printed_psi3_disagrees_somewhere() {
    let r = compare_auto_hand(&[0], 3, 1).unwrap();
    assert!(r.all_equal);
    // The literal display equals UD(D) − UD(G) − 2, which is not the
    // tropicalized x3 multiplier.
    match &r.psi3_as_printed {
        BoxComparison::Counterexample { point, left, right } => {
            assert_ne!(left, right);
            let x = UdPoint(XS.map(|v| point[v]));
            let want = hand_psi(3).unwrap().specialize(PARAM, 1).compile(&XS).unwrap().eval(&x.0);
            assert_eq!(*right, want);
        }
        other => panic!("expected a mismatch, got {other:?}"),
    }
    let at = |x: [i64; 6]| psi3_as_printed().specialize(PARAM, 1).compile(&XS).unwrap().eval(&x);
    // Case (e6) needs Ψ_3 = 0; the literal display gives −1 at the origin.
    assert_eq!(at([0; 6]), -1);
}

#[test]
fn case_table_matches_psi_and_combinatorial_cases() {
    let psi: Vec<_> = (0..6).map(|j| hand_psi(j).unwrap().specialize(PARAM, 1).compile(&XS).unwrap()).collect();
    each_point(3, |x| {
        let r = case_classify(&x).unwrap();
        assert_eq!(r.case, r.combinatorial_case, "{x:?}");
        let got: Vec<i64> = psi.iter().map(|f| f.eval(&x.0)).collect();
        assert_eq!(got, CASE_PSI[r.case - 1].to_vec(), "{x:?}");
    });
}

#[test]
fn e_conditions_partition_a_box() {
    // zero_case panics unless exactly one condition fires.
    let bx = IntBox::cube(&["z1", "z2", "z3", "z4"], 6);
    for k in 0..bx.len() as u64 {
        let z: [i64; 4] = bx.point_at(k).try_into().unwrap();
        zero_case(z, true);
        zero_case(z, false);
    }
}

#[test]
fn recurrences_and_inversion_on_box() {
    let cartan = D43::cartan();
    each_point(2, |x| {
        for i in 0..3 {
            let y = ud_e(i, &x).unwrap();
            assert_eq!(ud_f(i, &y).unwrap(), x);
            assert_eq!(ud_e(i, &ud_f(i, &x).unwrap()).unwrap(), x);
            assert_eq!(ud_eps(i, &y).unwrap(), ud_eps(i, &x).unwrap() - 1);
            assert_eq!(ud_phi(i, &y).unwrap(), ud_phi(i, &x).unwrap() + 1);
            for j in 0..3 {
                assert_eq!(ud_wt(j, &y).unwrap(), ud_wt(j, &x).unwrap() + cartan.a(j, i));
            }
        }
    });
}

#[test]
fn auto_derived_c_minus_one_matches_downstairs_f() {
    let shifts: Vec<_> = (0..3)
        .map(|i| auto_derive(i).unwrap().specialize(-1).map(|f| f.compile(&XS).unwrap()))
        .collect();
    let inf = D43::limit();
    each_point(2, |x| {
        for (i, s) in shifts.iter().enumerate() {
            let mut y = x.0;
            for k in 0..6 {
                y[k] += s[k].eval(&x.0);
            }
            let down = inf.f_tilde(i, &omega(&x)).unwrap().unwrap();
            assert_eq!(UdPoint(y), omega_inv(&down).unwrap());
        }
    });
}

#[test]
fn hand_xi_at_origin() {
    let at0 = |j| hand_xi(j).unwrap().specialize(PARAM, 1).compile(&XS).unwrap().eval(&[0; 6]);
    assert_eq!([at0(1), at0(3), at0(5)], [1, 0, 0]);
    assert_eq!([at0(2), at0(4)], [1, 0]);
    assert!(hand_xi(0).is_none());
}

#[test]
fn convexity_on_radius_three() {
    let r = convexity_check(3, 2, 99, 300).unwrap();
    assert!(r.holds());
}

proptest! {
    #[test]
    fn omega_roundtrip(b in proptest::array::uniform6(-50i64..50)) {
        let mut b = b;
        b[3] += (b[2] - b[3]).rem_euclid(2);
        let b = CrystalElem::new(b).unwrap();
        prop_assert_eq!(omega(&omega_inv(&b).unwrap()), b);
    }

    #[test]
    fn omega_inv_roundtrip(x in proptest::array::uniform6(-50i64..50)) {
        let x = UdPoint(x);
        let b = omega(&x);
        prop_assert_eq!((b.0[2] + b.0[3]) % 2, 0);
        prop_assert_eq!(omega_inv(&b).unwrap(), x);
    }

    #[test]
    fn greek_identities(x in proptest::array::uniform6(-1000i64..1000)) {
        let g = greek(&UdPoint(x));
        prop_assert_eq!(3 * g.delta, 2 * g.gamma + g.psi);
        prop_assert_eq!(3 * g.epsilon, g.gamma + 2 * g.psi);
    }

    #[test]
    fn equivariance_far_from_origin(x in proptest::array::uniform6(-10_000i64..10_000)) {
        let x = UdPoint(x);
        let inf = D43::limit();
        let b = omega(&x);
        for i in 0..3 {
            prop_assert_eq!(Some(omega(&ud_e(i, &x).unwrap())), inf.e_tilde(i, &b).unwrap());
            prop_assert_eq!(Some(omega(&ud_f(i, &x).unwrap())), inf.f_tilde(i, &b).unwrap());
            prop_assert_eq!(ud_eps(i, &x).unwrap(), inf.eps(i, &b).unwrap());
        }
        let r = case_classify(&x).unwrap();
        prop_assert_eq!(r.case, zero_case(z_vec(&b).unwrap(), true));
    }
}
