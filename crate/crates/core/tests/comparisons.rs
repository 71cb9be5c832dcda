use cohom_core::catalog::{self, compute_space, homotopy_table_of, SpaceId, SpaceSpec, Variant};
use cohom_core::distinguish::{
    check_witness, full_report, invariants_of, isomorphism_search, power_indices_of, VERDICT_DISTINCT,
    VERDICT_GROUPS_DIFFER, VERDICT_UNKNOWN,
};
use cohom_core::homotopy::{first_difference, FibrationSpec};
use cohom_core::GradedRing;
use num_bigint::BigInt;

fn spec(s: SpaceId) -> SpaceSpec {
    SpaceSpec::new(s, Variant::Corrected)
}

fn at_top(s: SpaceId, top: u32) -> GradedRing {
    GradedRing::compute(&catalog::presentation_with_top(s, Variant::Corrected, top).unwrap()).unwrap()
}

#[test]
fn odd_grassmannians_against_projective_spaces() {
    for k in 2..=8u32 {
        let r = full_report(spec(SpaceId::GrassOdd(k)), spec(SpaceId::CP(2 * k - 1)), (2 * k + 1) as usize).unwrap();
        assert!(r.groups_equal, "k={k}");
        assert_eq!(r.first_power_index_difference, Some(k), "k={k}");
        assert_eq!(r.pi_first_difference, Some((2 * k - 1) as usize), "k={k}");
        assert_eq!(r.verdict, VERDICT_DISTINCT);
        assert_eq!(r.iso_search.result, "none within bound");
    }
}

#[test]
fn verdicts_are_symmetric() {
    let spaces = [
        SpaceId::CP(3),
        SpaceId::CP(5),
        SpaceId::GrassOdd(2),
        SpaceId::GrassOdd(3),
        SpaceId::GrassEven(3),
        SpaceId::S2xS2,
        SpaceId::CP(2),
    ];
    for a in spaces {
        for b in spaces {
            let ab = full_report(spec(a), spec(b), 8).unwrap();
            let ba = full_report(spec(b), spec(a), 8).unwrap();
            assert_eq!(ab.verdict, ba.verdict, "{a} vs {b}");
            if a == b {
                assert_eq!(ab.verdict, VERDICT_UNKNOWN);
            }
        }
    }
    let r = full_report(spec(SpaceId::GrassEven(4)), spec(SpaceId::CP(6)), 8).unwrap();
    assert_eq!((r.verdict.as_str(), r.first_group_mismatch), (VERDICT_GROUPS_DIFFER, Some(6)));
}

// Every witness the search produces is a genuine isomorphism, and the two
// sides have equal power indices.
#[test]
fn found_witnesses_are_sound() {
    let pairs = [
        (SpaceId::CP(4), SpaceId::CP(4)),
        (SpaceId::GrassOdd(3), SpaceId::GrassOdd(3)),
        (SpaceId::GrassEven(3), SpaceId::GrassEven(3)),
        (SpaceId::S2xS2, SpaceId::S2xS2),
        (SpaceId::StiefelOdd(2), SpaceId::StiefelOdd(2)),
    ];
    for (a, b) in pairs {
        let (ra, rb) = (compute_space(a, Variant::Corrected).unwrap(), compute_space(b, Variant::Corrected).unwrap());
        for bound in 1..=2 {
            let w = isomorphism_search(&ra, &rb, bound).unwrap().expect("witness");
            assert!(check_witness(&ra, &rb, &w.images).unwrap(), "{a}");
            if let (Ok(ia), Ok(ib)) = (invariants_of(&ra), invariants_of(&rb)) {
                assert_eq!(ia.power_indices, ib.power_indices);
            }
        }
    }
}

// Hand argument: x2 must go to c*x2 with c a unit, and then x2^3 has index
// 1 on the right against 2 on the left. No bound can succeed.
#[test]
fn negative_control_agrees_with_hand_argument() {
    let a = at_top(SpaceId::GrassOdd(3), 12);
    let b = at_top(SpaceId::CP(5), 12);
    for bound in 1..=3 {
        assert!(isomorphism_search(&a, &b, bound).unwrap().is_none());
    }
    let ia = invariants_of(&a).unwrap().power_indices;
    let ib = invariants_of(&b).unwrap().power_indices;
    assert_ne!(ia.get(&3), ib.get(&3));
    for c in [-1i64, 1] {
        let g = b.scale(&b.basis_element(2, 0), &BigInt::from(c)).unwrap();
        assert_eq!(power_indices_of(&b, &g).unwrap(), ib);
    }
}

#[test]
fn homotopy_tables_distinguish_where_known() {
    let cp5 = homotopy_table_of(SpaceId::CP(5), 11).unwrap();
    assert_eq!(cp5.to_string(), "(0,0,Z,0,0,0,0,0,0,0,0,Z)");
    assert_eq!(cp5.sphere_marker(), Some(11));
    for k in 2..=6u32 {
        let g = FibrationSpec::grass(2 * k + 1).unwrap().base_table((2 * k - 1) as usize).unwrap();
        let cp = homotopy_table_of(SpaceId::CP(2 * k - 1), (2 * k - 1) as usize).unwrap();
        assert_eq!(first_difference(&cp, &g), Some((2 * k - 1) as usize), "k={k}");
        assert_eq!(g.get((2 * k - 1) as usize).to_string(), "Z_2");
    }
}
