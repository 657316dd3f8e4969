mod common;

use proptest::prelude::*;
use toric_cobordism::chern::chern_numbers;
use toric_cobordism::constructions::*;
use toric_cobordism::{Cone, Error};

#[test]
fn calibration_scan_reproduces_the_frozen_data_and_log() {
    let scan = calibration_scan().unwrap();
    assert_eq!(scan.chosen(), Some(frozen_calibration().unwrap()));
    assert_eq!(scan.log(), include_str!("../data/delta_calibration.log"));
    assert_eq!(scan.valid.len(), 12);
}

#[test]
fn calibrated_twist_values() {
    let cal = frozen_calibration().unwrap();
    assert_eq!(cal.alpha(0, 0), [-1, -2, -3]);
    assert_eq!(cal.alpha(1, 1), [-1, -4, -6]);
}

#[test]
fn parameter_order_is_enforced() {
    assert!(matches!(
        kleinschmidt(3, &[2, 1]),
        Err(Error::ParamOrder(_))
    ));
    assert!(matches!(kleinschmidt(3, &[-1]), Err(Error::ParamOrder(_))));
    assert!(kleinschmidt_any(3, &[2, -1]).is_ok());
}

#[test]
fn fixed_point_blowups_need_dimension_three_and_a_maximal_cone() {
    assert!(matches!(
        blowup_fixed_point(&cpn(2).unwrap(), None),
        Err(Error::Precondition(_))
    ));
    let p3 = cpn(3).unwrap();
    assert!(matches!(
        blowup_fixed_point(&p3, Some(&Cone::new(vec![0, 1]))),
        Err(Error::ConeNotInFan(_))
    ));
    assert_eq!(blowup_fixed_point(&p3, None).unwrap().num_rays(), 5);
}

#[test]
fn family_specs_round_trip_through_names() {
    let families = [
        Family::Cpn { n: 3 },
        Family::Kleinschmidt {
            n: 4,
            a: vec![0, 2],
        },
        Family::SigmaA { a: -3 },
        Family::DeltaAB { a: 1, b: -2 },
    ];
    for f in families {
        assert_eq!(Family::parse(f.name(), &f.params()).unwrap(), f);
        let spec = FamilySpec::new(f.clone());
        assert_eq!(spec.to_json()["family"], f.name());
        spec.build().unwrap();
    }
    assert!(Family::parse("sigma_a", &[1, 2]).is_err());
    assert!(Family::parse("hexagon", &[]).is_err());
}

#[test]
fn fourfold_kleinschmidt_polynomials_predict_unsampled_members() {
    for (r, a) in [(1, vec![7]), (2, vec![4, 9]), (3, vec![1, 5, 8])] {
        let polys = fit_kleinschmidt_polynomials(4, r, 4).unwrap().unwrap();
        let direct = chern_numbers(&kleinschmidt(4, &a).unwrap()).unwrap();
        let predicted: Vec<i64> = polys
            .evaluate(&a)
            .iter()
            .map(|x| i64::try_from(x.to_integer()).unwrap())
            .collect();
        assert_eq!(predicted, direct.to_vec(), "r = {r}");
    }
}

#[test]
fn fourfold_kleinschmidt_closed_forms() {
    for a in 0..5i64 {
        let cv = chern_numbers(&kleinschmidt(4, &[a]).unwrap())
            .unwrap()
            .to_vec();
        assert_eq!(cv, [512 + 32 * a * a, 224 + 8 * a * a, 96, 56, 8]);
    }
    for (a1, a2) in [(0, 0), (1, 3), (2, 5)] {
        let q = a1 * a1 - a1 * a2 + a2 * a2;
        let cv = chern_numbers(&kleinschmidt(4, &[a1, a2]).unwrap())
            .unwrap()
            .to_vec();
        assert_eq!(cv, [486 + 27 * q, 216 + 6 * q, 99 + q, 54, 9]);
    }
}

#[test]
fn delta_fans_keep_their_stanley_reisner_ideal() {
    for (a, b) in [(0, 0), (3, -4), (-6, 7)] {
        let fan = delta_ab(a, b).unwrap();
        assert!(fan.is_complete().unwrap());
        assert!(fan.is_projective().unwrap());
        assert_eq!(fan.max_cones().len(), 16);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// The change of Chern numbers under a subdivision away from the twisted
    /// ray only depends on the closed star of the subdivided cone.
    #[test]
    fn subdivision_deltas_do_not_see_the_twist(a in -4i64..=4, b in -4i64..=4, pick in 0usize..8, size in 2usize..=4) {
        let base = delta_ab(0, 0).unwrap();
        let other = delta_ab(a, b).unwrap();
        let cones: Vec<Cone> = base.all_cones()[size].iter().filter(|c| c.contains(6)).cloned().collect();
        let cone = &cones[pick % cones.len()];
        let d = |f: &toric_cobordism::Fan| {
            let before = chern_numbers(f).unwrap().to_vec();
            let after = chern_numbers(&f.star_subdivide(cone).unwrap()).unwrap().to_vec();
            after.iter().zip(&before).map(|(x, y)| x - y).collect::<Vec<_>>()
        };
        prop_assert_eq!(d(&base), d(&other));
    }

    #[test]
    fn sigma_family_is_linear(a in -40i64..=40) {
        let cv = chern_numbers(&sigma_a(a).unwrap()).unwrap().to_vec();
        prop_assert_eq!(cv, vec![48 + 2 * a, 24, 8]);
    }
}
