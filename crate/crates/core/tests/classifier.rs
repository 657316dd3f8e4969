mod common;

use proptest::prelude::*;
use toric_cobordism::chern::chern_numbers;
use toric_cobordism::classifier::*;
use toric_cobordism::constructions::{cpn, delta_ab, kleinschmidt, Family};
use toric_cobordism::face_vectors::{fan_g_vector, feasible_g_for};
use toric_cobordism::{ChernVector, Fan};

fn classify_fan(fan: &Fan) -> Verdict {
    classify_omega8(&chern_numbers(fan).unwrap()).unwrap()
}

fn assert_sound(v: &Verdict, query: &ChernVector) {
    if let Some(w) = &v.witness {
        assert_eq!(v.status, Status::Representable);
        assert_eq!(&chern_numbers(&w.fan).unwrap(), query);
        assert_eq!(&chern_numbers(&w.spec.build().unwrap()).unwrap(), query);
    } else {
        assert_ne!(v.status, Status::Representable);
    }
}

#[test]
fn projective_four_space() {
    let v = classify_omega8(&ChernVector::from_values(4, &CP4).unwrap()).unwrap();
    assert_eq!(v.status, Status::Representable);
    assert_eq!(v.witness.unwrap().spec.family, Family::Cpn { n: 4 });
}

#[test]
fn delta_fans_are_their_own_witnesses() {
    for (a, b) in [(0, 0), (2, -3), (-4, 1)] {
        let v = classify_fan(&delta_ab(a, b).unwrap());
        assert_eq!(v.status, Status::Representable);
        let spec = v.witness.unwrap().spec;
        assert_eq!(spec.family, Family::DeltaAB { a, b });
        assert!(spec.blowups.is_empty());
    }
}

#[test]
fn asymptotic_region_synthesis_with_both_subdivision_types() {
    // one curve and one point blow-up away from v2 give g = (1, 5, 3)
    let mut fan = delta_ab(1, 1).unwrap();
    for size in [3, 4] {
        let cone = fan.all_cones()[size]
            .iter()
            .rev()
            .find(|c| c.contains(6))
            .unwrap()
            .clone();
        fan = fan.star_subdivide(&cone).unwrap();
    }
    assert_eq!(fan_g_vector(&fan), [1, 5, 3]);
    let cv = chern_numbers(&fan).unwrap();
    assert!(feasible_g_for(&cv).unwrap().contains(&vec![1, 5, 3]));
    let v = classify_omega8(&cv).unwrap();
    assert_eq!(v.status, Status::Representable);
    assert_sound(&v, &cv);
}

#[test]
fn kleinschmidt_fourfolds_are_found() {
    for a in [vec![0], vec![3], vec![1, 1], vec![2, 4], vec![0, 1, 2]] {
        let cv = chern_numbers(&kleinschmidt(4, &a).unwrap()).unwrap();
        let v = classify_omega8(&cv).unwrap();
        assert_eq!(v.status, Status::Representable, "{a:?}");
        assert_sound(&v, &cv);
    }
}

#[test]
fn kleinschmidt_misses_are_decided() {
    // g = (1,1,0) admissible, but c1^4 − 512 = 64 is not 32 a^2
    let cv = ChernVector::from_values(4, &[576, 240, 96, 56, 8]).unwrap();
    let v = classify_omega8(&cv).unwrap();
    assert_eq!(v.status, Status::NotRepresentable, "{}", v.reason);
}

#[test]
fn undecided_regions_are_tagged() {
    // blow up ℂP⁴ at two points: g = (1, 2, 0)
    let mut fan = cpn(4).unwrap();
    for _ in 0..2 {
        let cone = fan.max_cones()[0].clone();
        fan = fan.star_subdivide(&cone).unwrap();
    }
    let v = classify_fan(&fan);
    assert_ne!(v.status, Status::NotRepresentable);
    if v.status == Status::Unknown {
        assert!(v.frontier.is_some());
    }
}

#[test]
fn verdict_json_shape() {
    let v = classify_omega6(64, 24, 4).unwrap().to_json();
    assert_eq!(v["status"], "Representable");
    assert_eq!(v["witness"]["spec"]["family"], "cpn");
    assert_eq!(v["witness"]["chern"]["c1^3"], 64);
    let v = classify_omega6(64, 23, 4).unwrap().to_json();
    assert_eq!(v["status"], "NotRepresentable");
    assert!(v.get("witness").is_none());
}

#[test]
fn toric_fourfolds_are_never_rejected() {
    let bases = [
        cpn(4).unwrap(),
        delta_ab(0, 0).unwrap(),
        kleinschmidt(4, &[1, 2]).unwrap(),
    ];
    for (i, base) in bases.iter().enumerate() {
        for seed in 0..4u64 {
            let (fan, _) =
                common::random_descendant(base, 100 * i as u64 + seed, 1 + seed as usize % 2);
            let cv = chern_numbers(&fan).unwrap();
            let v = classify_omega8(&cv).unwrap();
            assert_ne!(
                v.status,
                Status::NotRepresentable,
                "seed {seed}: {}",
                v.reason
            );
            assert_sound(&v, &cv);
        }
    }
}

#[test]
fn toric_threefolds_and_surfaces_are_accepted() {
    for item in common::corpus() {
        let cv = chern_numbers(&item.fan).unwrap();
        if cv.dim() > 3 {
            continue;
        }
        let v = classify(&cv).unwrap();
        assert_eq!(v.status, Status::Representable, "{}", item.name);
        assert_sound(&v, &cv);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn threefold_blowup_trajectory(half in -60i64..=60, k in 0i64..=4) {
        let c13 = 2 * half;
        let top = classify_omega6(c13, 24, 8).unwrap().witness.unwrap();
        let low = classify_omega6(c13 - 8 * k, 24, 8 + 2 * k).unwrap().witness.unwrap();
        prop_assert_eq!(&low.spec.family, &top.spec.family);
        prop_assert_eq!(low.spec.blowups.len() as i64, k);
        let mut fan = top.fan.clone();
        for _ in 0..k {
            let cone = fan.max_cones()[0].clone();
            fan = fan.star_subdivide(&cone).unwrap();
        }
        prop_assert_eq!(fan, low.fan);
    }

    #[test]
    fn surface_verdicts(c1sq in -30i64..=30, c2 in -5i64..=30) {
        let v = classify_omega4(c1sq, c2).unwrap();
        let expected = c1sq + c2 == 12 && c2 >= 3;
        prop_assert_eq!(v.status == Status::Representable, expected);
        assert_sound(&v, &ChernVector::from_values(2, &[c1sq, c2]).unwrap());
    }

    #[test]
    fn fourfold_verdicts_are_sound(c112 in 0i64..=400, c22 in 60i64..=120, g1 in 0i64..=6, g2 in 0i64..=4) {
        // stay on the toric relations so that the pipeline gets past them
        let c4 = 3 * g1 + g2 + 5;
        let c13 = 6 * g1 - 2 * g2 + 50;
        let c14 = 3 * c22 + 4 * c112 + 3 * g1 - 3 * g2 - 675;
        let cv = ChernVector::from_values(4, &[c14, c112, c22, c13, c4]).unwrap();
        let v = classify_omega8(&cv).unwrap();
        assert_sound(&v, &cv);
        if let Some(w) = &v.witness {
            let decided = matches!(w.spec.family, Family::Cpn { .. } | Family::Kleinschmidt { .. } | Family::DeltaAB { .. });
            prop_assert!(decided);
        }
    }
}
