mod common;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use toric_cobordism::chern::{chern_numbers, chern_numbers_termwise};
use toric_cobordism::constructions::{cpn, kleinschmidt, sigma_a};
use toric_cobordism::face_vectors::{
    f_to_h, fan_h_vector, g_to_f, g_to_h, h_to_f, h_to_g, is_valid_g,
};
use toric_cobordism::{Fan, PolytopeH};

fn bases() -> Vec<Fan> {
    vec![
        cpn(2).unwrap(),
        cpn(3).unwrap(),
        sigma_a(-1).unwrap(),
        kleinschmidt(4, &[1]).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn face_vector_conversions_invert(n in 2usize..=6, raw in proptest::collection::vec(0i64..=6, 3)) {
        let mut g = vec![1];
        g.extend(raw.iter().take(n / 2).copied());
        prop_assume!(is_valid_g(&g, n));
        let f = g_to_f(&g, n).unwrap();
        let h = f_to_h(&f, n).unwrap();
        prop_assert_eq!(&h, &g_to_h(&g, n).unwrap());
        prop_assert_eq!(h_to_g(&h), g);
        prop_assert_eq!(h_to_f(&h, n).unwrap(), f);
    }

    #[test]
    fn subdivisions_stay_smooth_complete_projective(which in 0usize..4, seed in any::<u64>(), steps in 1usize..=3) {
        let base = &bases()[which];
        let (fan, _) = common::random_descendant(base, seed, steps);
        prop_assert!(fan.is_regular());
        prop_assert!(fan.is_complete().unwrap());
        prop_assert!(fan.is_projective().unwrap());
        let h = fan_h_vector(&fan);
        prop_assert!(h.iter().eq(h.iter().rev()));
    }

    #[test]
    fn chern_numbers_by_two_routes(which in 0usize..3, seed in any::<u64>(), steps in 0usize..=2) {
        let (fan, _) = common::random_descendant(&bases()[which], seed, steps);
        prop_assert_eq!(chern_numbers(&fan).unwrap(), chern_numbers_termwise(&fan).unwrap());
    }

    #[test]
    fn ray_order_does_not_matter(which in 0usize..4, seed in any::<u64>()) {
        let fan = &bases()[which];
        let m = fan.num_rays();
        let mut perm: Vec<usize> = (0..m).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let rays: Vec<Vec<i64>> = perm.iter().map(|&i| fan.ray(i).coords().to_vec()).collect();
        let inverse: Vec<usize> = (0..m).map(|i| perm.iter().position(|&p| p == i).unwrap()).collect();
        let cones: Vec<Vec<usize>> =
            fan.max_cones().iter().map(|c| c.indices().iter().map(|&i| inverse[i]).collect()).collect();
        let shuffled = Fan::from_coords(fan.dim(), &rays, &cones).unwrap();
        prop_assert!(shuffled.same_up_to_ray_order(fan));
        prop_assert_eq!(chern_numbers(&shuffled).unwrap(), chern_numbers(fan).unwrap());
    }
}

#[test]
fn fan_json_round_trip() {
    for item in common::corpus() {
        let text = serde_json::to_string(&item.fan.to_json()).unwrap();
        let back = Fan::from_json_str(&text).unwrap();
        assert_eq!(back, item.fan, "{}", item.name);
    }
}

#[test]
fn polytope_h_vectors_agree_with_normal_fans() {
    for p in [
        PolytopeH::simplex(3, 1),
        PolytopeH::cube(3, 1),
        PolytopeH::cube(4, 2),
    ] {
        let fan = p.normal_fan().unwrap();
        let nu = p.default_probe().unwrap();
        assert_eq!(p.h_vector_by_index(&nu).unwrap(), fan_h_vector(&fan));
    }
}
