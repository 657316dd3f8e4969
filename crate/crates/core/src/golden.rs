//! Published reference values, checked end to end by `tcw selftest`.

use itertools::Itertools;

use crate::chern::chern_numbers;
use crate::classifier::{
    classify_omega2, classify_omega4, classify_omega6, classify_omega8, Status, CP4_CERTIFICATE,
};
use crate::constructions::{blowup_fixed_point, cpn, delta_ab, kleinschmidt, sigma_a};
use crate::error::Result;
use crate::face_vectors::{fan_g_vector, obstruction_system};
use crate::ktheory::{derive_divisibility_lattice, Congruence};
use crate::ChernVector;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenCase {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// The five congruences characterizing integrality in dimension 4, in the
/// order `c1^4, c1^2*c2, c2^2, c1*c3, c4`.
pub const DIM4_RELATIONS: [([i64; 5], i64); 5] = [
    ([-1, 4, 3, 1, -1], 720),
    ([0, 6, 0, -5, 2], 12),
    ([0, 1, 0, 1, 0], 2),
    ([2, -5, 0, 5, -2], 12),
    ([2, 1, 0, -2, -4], 12),
];

/// Tabulated divisibility rows in dimension 4, same coordinate order.
pub const DIM4_TABLE: [([i64; 5], i64); 6] = [
    ([-1, 4, 3, 1, -1], 720),
    ([2, -5, 0, 5, -2], 12),
    ([0, 6, 0, -17, 14], 12),
    ([14, -47, 12, 46, -28], 12),
    ([0, 3, -2, -9, 12], 2),
    ([4, -15, 6, 15, -12], 2),
];

pub fn congruences(rows: &[([i64; 5], i64)]) -> Vec<Congruence> {
    rows.iter()
        .map(|(c, m)| Congruence::new(4, c.to_vec(), *m))
        .collect()
}

fn expect<T: PartialEq + std::fmt::Debug>(got: T, want: T) -> std::result::Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("got {got:?}, expected {want:?}"))
    }
}

type Check = fn() -> Result<std::result::Result<(), String>>;

fn chern3(fan: &crate::Fan) -> Result<Vec<i64>> {
    Ok(chern_numbers(fan)?.to_vec())
}

const CHECKS: &[(&str, Check)] = &[
    ("projective space chern numbers", || {
        let p3 = chern3(&cpn(3)?)?;
        let p4 = chern_numbers(&cpn(4)?)?.value(&[1, 1, 1, 1]);
        Ok(expect((p3, p4), (vec![64, 24, 4], 625)))
    }),
    ("kleinschmidt threefolds", || {
        for a in 0..=5 {
            let got = chern3(&kleinschmidt(3, &[a])?)?[0];
            if got != 2 * a * a + 54 {
                return Ok(Err(format!("a = {a}: c1^3 = {got}")));
            }
        }
        for (a1, a2) in (0..=3).tuple_combinations().chain((0..=3).map(|a| (a, a))) {
            let got = chern3(&kleinschmidt(3, &[a1, a2])?)?[0];
            if got != 54 {
                return Ok(Err(format!("a = ({a1}, {a2}): c1^3 = {got}")));
            }
        }
        Ok(Ok(()))
    }),
    ("sigma family", || {
        for a in -5..=5 {
            let got = chern3(&sigma_a(a)?)?;
            if got != vec![48 + 2 * a, 24, 8] {
                return Ok(Err(format!("a = {a}: {got:?}")));
            }
        }
        Ok(Ok(()))
    }),
    ("point blow-up deltas in dimension 3", || {
        for fan in [cpn(3)?, sigma_a(2)?, kleinschmidt(3, &[1, 2])?] {
            let before = chern3(&fan)?;
            let after = chern3(&blowup_fixed_point(&fan, None)?)?;
            let delta: Vec<i64> = after.iter().zip(&before).map(|(x, y)| x - y).collect();
            if delta != vec![-8, 0, 2] {
                return Ok(Err(format!("delta {delta:?}")));
            }
        }
        Ok(Ok(()))
    }),
    ("divisibility in dimension 3", || {
        let got: Vec<String> = derive_divisibility_lattice(3)?
            .congruences
            .iter()
            .map(|c| c.to_string())
            .collect();
        Ok(expect(
            got,
            vec![
                "c1^3 ≡ 0 mod 2".into(),
                "c1*c2 ≡ 0 mod 24".into(),
                "c3 ≡ 0 mod 2".into(),
            ],
        ))
    }),
    ("divisibility in dimension 4", || {
        let lattice = derive_divisibility_lattice(4)?;
        Ok(expect(
            (
                lattice.equivalent_to(&congruences(&DIM4_RELATIONS)),
                lattice.equivalent_to(&congruences(&DIM4_TABLE)),
            ),
            (true, true),
        ))
    }),
    ("obstruction relations", || {
        let show = |n| {
            obstruction_system(n)
                .iter()
                .map(|r| r.to_string())
                .collect::<Vec<_>>()
        };
        Ok(expect(
            (show(3), show(4)),
            (
                vec!["c3 = 2*g1 + 4".into(), "c1*c2 = 24".into()],
                vec![
                    "c4 = 3*g1 + g2 + 5".into(),
                    "c1*c3 = 6*g1 - 2*g2 + 50".into(),
                    "c1^4 = 3*c2^2 + 4*c1^2*c2 + 3*g1 - 3*g2 - 675".into(),
                ],
            ),
        ))
    }),
    ("classification of curves and surfaces", || {
        let got = (
            classify_omega2(2)?.status,
            classify_omega4(9, 3)?.status,
            classify_omega4(9, 4)?.status,
        );
        Ok(expect(
            got,
            (
                Status::Representable,
                Status::Representable,
                Status::NotRepresentable,
            ),
        ))
    }),
    ("classification of threefolds", || {
        let got = (
            classify_omega6(64, 24, 4)?.status,
            classify_omega6(62, 24, 4)?.status,
            classify_omega6(56, 24, 6)?.status,
        );
        Ok(expect(
            got,
            (
                Status::Representable,
                Status::NotRepresentable,
                Status::Representable,
            ),
        ))
    }),
    ("delta fans", || {
        for (a, b) in (-2..=2).cartesian_product(-2..=2) {
            let fan = delta_ab(a, b)?;
            let cv = chern_numbers(&fan)?;
            let got = (cv.to_vec()[1..].to_vec(), fan_g_vector(&fan));
            let want = (vec![188 - 6 * a + 4 * b, 96 - a, 64, 16], vec![1, 3, 2]);
            if got != want {
                return Ok(Err(format!("Δ({a}, {b}): {got:?}")));
            }
        }
        Ok(Ok(()))
    }),
    ("fourfold anchors", || {
        let cp4 = classify_omega8(&ChernVector::from_values(4, &[625, 250, 100, 50, 5])?)?;
        let neg = classify_omega8(&ChernVector::from_values(4, &[-672, 0, 1, 50, 5])?)?;
        Ok(expect(
            (cp4.status, neg.status, neg.reason.as_str()),
            (
                Status::Representable,
                Status::NotRepresentable,
                CP4_CERTIFICATE,
            ),
        ))
    }),
];

/// Runs every reference check; errors count as failures.
pub fn run_all() -> Vec<GoldenCase> {
    CHECKS
        .iter()
        .map(|(name, check)| {
            let (passed, detail) = match check() {
                Ok(Ok(())) => (true, String::new()),
                Ok(Err(why)) => (false, why),
                Err(e) => (false, e.to_string()),
            };
            GoldenCase {
                name,
                passed,
                detail,
            }
        })
        .collect()
}
