//! Fans shared by the integration tests and the acceptance run.
#![allow(dead_code)]

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toric_cobordism::constructions::{cpn, delta_ab, kleinschmidt, sigma_a};
use toric_cobordism::{Cone, Fan};

pub struct Named {
    pub name: String,
    pub fan: Fan,
}

fn named(name: impl Into<String>, fan: Fan) -> Named {
    Named {
        name: name.into(),
        fan,
    }
}

/// Star-subdivides `steps` random cones of dimension at least 2.
pub fn random_descendant(base: &Fan, seed: u64, steps: usize) -> (Fan, Vec<Cone>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fan = base.clone();
    let mut path = Vec::new();
    for _ in 0..steps {
        let candidates: Vec<Cone> = fan.all_cones().into_iter().skip(2).flatten().collect();
        let cone = candidates[rng.gen_range(0..candidates.len())].clone();
        fan = fan
            .star_subdivide(&cone)
            .expect("subdividing a cone of the fan");
        path.push(cone);
    }
    (fan, path)
}

pub fn corpus() -> Vec<Named> {
    let mut out = Vec::new();
    for n in 1..=6 {
        out.push(named(format!("cpn({n})"), cpn(n).unwrap()));
    }
    for a in 0..=3 {
        out.push(named(
            format!("kleinschmidt(2,[{a}])"),
            kleinschmidt(2, &[a]).unwrap(),
        ));
    }
    for a in 0..=5 {
        out.push(named(
            format!("kleinschmidt(3,[{a}])"),
            kleinschmidt(3, &[a]).unwrap(),
        ));
    }
    for (a1, a2) in (0..=3).flat_map(|a2| (0..=a2).map(move |a1| (a1, a2))) {
        out.push(named(
            format!("kleinschmidt(3,[{a1},{a2}])"),
            kleinschmidt(3, &[a1, a2]).unwrap(),
        ));
    }
    for a in -5..=5 {
        out.push(named(format!("sigma_a({a})"), sigma_a(a).unwrap()));
    }
    for a in [
        vec![0],
        vec![1],
        vec![2],
        vec![0, 1],
        vec![1, 2],
        vec![0, 0, 1],
    ] {
        out.push(named(
            format!("kleinschmidt(4,{a:?})"),
            kleinschmidt(4, &a).unwrap(),
        ));
    }
    out.push(named(
        "kleinschmidt(5,[0,1])",
        kleinschmidt(5, &[0, 1]).unwrap(),
    ));
    out.push(named("kleinschmidt(6,[1])", kleinschmidt(6, &[1]).unwrap()));
    for (a, b) in [(0, 0), (1, -1), (-1, 2)] {
        out.push(named(format!("delta_ab({a},{b})"), delta_ab(a, b).unwrap()));
    }
    let mut fan = cpn(3).unwrap();
    for k in 1..=3 {
        let cone = fan.max_cones()[0].clone();
        fan = fan.star_subdivide(&cone).unwrap();
        out.push(named(format!("cpn(3)+{k} point blow-ups"), fan.clone()));
    }
    let bases = [
        ("cpn(2)", cpn(2).unwrap()),
        ("sigma_a(1)", sigma_a(1).unwrap()),
        ("kleinschmidt(3,[1,2])", kleinschmidt(3, &[1, 2]).unwrap()),
        ("cpn(4)", cpn(4).unwrap()),
    ];
    for (seed, (steps, (base_name, base))) in (1..=3).cartesian_product(bases.iter()).enumerate() {
        let (fan, _) = random_descendant(base, seed as u64, steps);
        out.push(named(
            format!("{base_name} random seed {seed}, {steps} step(s)"),
            fan,
        ));
    }
    out
}
