use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use urysohn::bilip::{default_kn, ExtensionStep};
use urysohn::sample::{compliant_instance, InstanceShape};
use urysohn::trace::{parse_trace, verify_trace, write_bundle, TraceBundle};
use urysohn::{
    export_trace, extend_dense, extend_one_point, glue_identity_check, goodness_check, int,
    is_compliant, ratio, Ball, Choice, Error, FiniteMetricSpace, PartialMap, Rational, Side,
};

fn shape(domain: usize, targets: usize, outside: usize) -> InstanceShape {
    InstanceShape {
        domain,
        targets,
        outside,
    }
}

#[test]
fn policies_pick_inside_each_interval() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..40 {
        let inst = compliant_instance(&mut rng, shape(4, 1, 0));
        for choice in [Choice::Minimal, Choice::Midpoint, Choice::Maximal] {
            let ext = extend_one_point(
                &inst.space,
                &inst.map,
                &inst.ball,
                &inst.kn,
                inst.targets[0],
                Side::Domain,
                choice,
            )
            .unwrap();
            let step: ExtensionStep = ext.step.unwrap();
            for s in &step.solves {
                assert!(s.interval.contains(&s.value));
                match choice {
                    Choice::Minimal => assert_eq!(s.value, s.interval.lo),
                    Choice::Maximal => assert_eq!(s.value, s.interval.hi),
                    Choice::Midpoint => {
                        assert_eq!(&s.value * int(2), &s.interval.lo + &s.interval.hi)
                    }
                }
            }
            assert!(ext.space.is_metric());
        }
    }
}

#[test]
fn inadmissible_parameters_rejected() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let inst = compliant_instance(&mut rng, shape(2, 1, 0));
    let kn = urysohn::kn_admissible(&ratio(3, 2), &int(4));
    let err = extend_one_point(
        &inst.space,
        &inst.map,
        &inst.ball,
        &kn,
        inst.targets[0],
        Side::Domain,
        Choice::Midpoint,
    )
    .unwrap_err();
    assert!(matches!(err, Error::Precondition(_)));
}

#[test]
fn center_must_be_fixed() {
    let pos = [int(0), int(1), int(2)];
    let s = FiniteMetricSpace::from_fn(vec!["c".into(), "a".into(), "x".into()], |i, j| {
        num::Signed::abs(&(&pos[i] - &pos[j]))
    })
    .unwrap();
    let f = PartialMap::from_pairs([(1, 1)]).unwrap();
    let ball = Ball::new(0, int(10)).unwrap();
    let err = extend_one_point(
        &s,
        &f,
        &ball,
        &default_kn(),
        2,
        Side::Domain,
        Choice::Midpoint,
    )
    .unwrap_err();
    assert!(matches!(err, Error::Precondition(_)));
}

#[test]
fn traces_round_trip_and_verify() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..10 {
        let inst = compliant_instance(&mut rng, shape(3, 4, 2));
        let out = extend_dense(
            &inst.space,
            &inst.map,
            &inst.ball,
            &inst.kn,
            &inst.targets,
            Choice::Midpoint,
        )
        .unwrap();
        let text = export_trace(&out.trace, &out.space);
        let bundle = parse_trace(&text).unwrap();
        assert_eq!(bundle, TraceBundle::from_trace(&out.trace, &out.space));
        let verdict = verify_trace(&bundle);
        assert!(verdict.ok(), "{:?}", verdict.failures);
    }
}

#[test]
fn any_e_pushed_outside_its_interval_is_rejected() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    let inst = compliant_instance(&mut rng, shape(3, 3, 0));
    let out = extend_dense(
        &inst.space,
        &inst.map,
        &inst.ball,
        &inst.kn,
        &inst.targets,
        Choice::Midpoint,
    )
    .unwrap();
    let bundle = TraceBundle::from_trace(&out.trace, &out.space);
    for i in 0..bundle.steps.len() {
        for outside in [
            &bundle.steps[i].interval.hi + ratio(1, 7),
            &bundle.steps[i].interval.lo - ratio(1, 7),
        ] {
            let mut bad = bundle.clone();
            bad.steps[i].e = outside;
            let reparsed = parse_trace(&write_bundle(&bad)).unwrap();
            assert!(
                !verify_trace(&reparsed).ok(),
                "step {i} perturbation accepted"
            );
        }
    }
}

#[test]
fn glue_is_vacuous_without_outside_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    let inst = compliant_instance(&mut rng, shape(3, 0, 0));
    let report = glue_identity_check(&inst.space, &inst.map, &inst.ball, &inst.kn).unwrap();
    assert!(report.vacuous() && report.holds);
}

#[test]
fn glue_needs_enough_room() {
    let s = FiniteMetricSpace::from_fn(vec!["c".into()], |_, _| int(0)).unwrap();
    let f = PartialMap::identity(&[0]);
    let ball = Ball::new(0, int(1)).unwrap();
    // (K, N) = (1, 1) violates 1 + 1/N ≤ K
    let kn = urysohn::kn_admissible(&int(1), &int(1));
    assert!(glue_identity_check(&s, &f, &ball, &kn).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn goodness_is_monotone_in_n(seed in any::<u64>(), bump in 1i64..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = compliant_instance(&mut rng, shape(4, 0, 0));
        let small = &inst.kn.n - ratio(bump, 4);
        let weaker: Rational = if small > int(0) { small } else { ratio(1, 2) };
        prop_assert!(goodness_check(&inst.map, &inst.ball, &weaker, &inst.space).unwrap().good);
    }

    #[test]
    fn lip_constant_is_symmetric_under_inversion(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = compliant_instance(&mut rng, shape(5, 0, 0));
        let a = urysohn::lip_constant(&inst.map, &inst.space).unwrap();
        let b = urysohn::lip_constant(&inst.map.inverse(), &inst.space).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn range_steps_keep_compliance(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = compliant_instance(&mut rng, shape(4, 1, 0));
        let ext = extend_one_point(&inst.space, &inst.map, &inst.ball, &inst.kn, inst.targets[0], Side::Range, Choice::Midpoint)
            .unwrap();
        prop_assert!(ext.map.in_range(inst.targets[0]));
        prop_assert!(is_compliant(&ext.map, &inst.ball, &inst.kn, &ext.space).unwrap().compliant);
    }
}
