//! K-theory Chern numbers and the integrality conditions they impose.
//!
//! For a partition `ω`, `κ_ω[M] = <ch s_ω(γ_1, γ_2, …) · Td(M), [M]>`, where
//! `ch γ_k = σ_k(e^{x_1} − 1, …, e^{x_n} − 1)`. A Chern vector comes from a
//! stably complex manifold exactly when every `κ_ω` is an integer.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::chern::{apply_form, ChernForm, ChernVector, MAX_GENUS_DIM};
use crate::error::{Error, Result};
use crate::linalg::integer::{congruence_lattice, IntMatrix};
use crate::linalg::{self, Rat};
use crate::partition::{partitions, partitions_up_to, Partition};
use crate::symmetric::{exp_minus_one, series_pow, todd_series, SymmetricSeries};

/// `ch γ_k` in `n` roots, truncated at degree `n`.
pub fn ch_gamma(k: u32, n: usize) -> SymmetricSeries {
    SymmetricSeries::elementary_of(n, n as u32, k, &exp_minus_one(n as u32))
}

fn todd_class(n: usize) -> SymmetricSeries {
    SymmetricSeries::multiplicative(n, n as u32, &todd_series(n as u32))
}

/// `κ_ω[M] = Σ_I β_I(ω) c_I[M]`.
#[derive(Debug, Clone, PartialEq)]
pub struct KappaForm {
    pub omega: Partition,
    pub coeffs: ChernForm,
}

impl KappaForm {
    pub fn evaluate(&self, cv: &ChernVector) -> Rat {
        apply_form(&self.coeffs, cv)
    }
}

fn top_degree_in_chern_basis(integrand: &SymmetricSeries, n: usize) -> ChernForm {
    let mut form: ChernForm = integrand.homogeneous(n as u32).to_elementary();
    form.retain(|_, c| !c.is_zero());
    form
}

/// Writes `s_ω` in the `γ_k` through the elementary-symmetric expansion of
/// the monomial symmetric function `m_ω`, then integrates against the Todd
/// class.
pub fn kappa_form(omega: &Partition, n: usize) -> KappaForm {
    let w = omega.weight();
    let in_gammas: BTreeMap<Partition, Rat> = if w == 0 {
        BTreeMap::from([(Partition::empty(), Rat::one())])
    } else {
        SymmetricSeries::monomial_symmetric(w as usize, w, omega.clone()).to_elementary()
    };
    let gammas: Vec<SymmetricSeries> = (0..=w.max(1)).map(|k| ch_gamma(k, n)).collect();
    let mut ch = SymmetricSeries::zero(n, n as u32);
    for (mu, c) in &in_gammas {
        let prod = mu
            .parts()
            .iter()
            .fold(SymmetricSeries::one(n, n as u32), |acc, &k| {
                acc.mul(&gammas[k as usize])
            });
        ch.add_scaled(&prod, c);
    }
    KappaForm {
        omega: omega.clone(),
        coeffs: top_degree_in_chern_basis(&ch.mul(&todd_class(n)), n),
    }
}

/// Same form, obtained by substituting `t_i = e^{x_i} − 1` directly into the
/// monomial symmetric function `m_ω(t_1, …, t_n)`.
pub fn kappa_form_direct(omega: &Partition, n: usize) -> KappaForm {
    let e = exp_minus_one(n as u32);
    let powers: Vec<Vec<Rat>> = (0..=n as u32).map(|k| series_pow(&e, k)).collect();
    let mut padded = omega.parts().to_vec();
    if padded.len() > n {
        return KappaForm {
            omega: omega.clone(),
            coeffs: ChernForm::new(),
        };
    }
    padded.resize(n, 0);
    let arrangements: Vec<Vec<u32>> = padded.iter().copied().permutations(n).unique().collect();
    let m = SymmetricSeries::from_fn(n, n as u32, |lambda| {
        let mut target = lambda.parts().to_vec();
        target.resize(n, 0);
        arrangements.iter().fold(Rat::zero(), |acc, alpha| {
            let term: Rat = alpha
                .iter()
                .zip(&target)
                .map(|(&a, &t)| {
                    if a as usize >= powers.len() {
                        Rat::zero()
                    } else {
                        powers[a as usize][t as usize].clone()
                    }
                })
                .product();
            acc + term
        })
    });
    KappaForm {
        omega: omega.clone(),
        coeffs: top_degree_in_chern_basis(&m.mul(&todd_class(n)), n),
    }
}

/// All κ-forms in dimension `n`, one per partition of weight at most `n`.
pub fn kappa_forms(n: usize) -> &'static [KappaForm] {
    static TABLES: [OnceLock<Vec<KappaForm>>; MAX_GENUS_DIM + 1] =
        [const { OnceLock::new() }; MAX_GENUS_DIM + 1];
    assert!(
        (1..=MAX_GENUS_DIM).contains(&n),
        "κ-forms are tabulated for dimensions 1..=6"
    );
    TABLES[n].get_or_init(|| {
        partitions_up_to(n as u32)
            .iter()
            .map(|w| kappa_form(w, n))
            .collect()
    })
}

/// Outcome of the integrality test.
#[derive(Debug, Clone, PartialEq)]
pub enum HattoriStong {
    Pass,
    /// the forms with non-integral values, with those values
    Fail(Vec<(Partition, Rat)>),
}

impl HattoriStong {
    pub fn passed(&self) -> bool {
        matches!(self, HattoriStong::Pass)
    }
}

/// Evaluates every κ-form on the Chern vector.
pub fn hattori_stong_check(cv: &ChernVector) -> HattoriStong {
    let bad: Vec<(Partition, Rat)> = kappa_forms(cv.dim())
        .iter()
        .map(|k| (k.omega.clone(), k.evaluate(cv)))
        .filter(|(_, v)| !v.is_integer())
        .collect();
    if bad.is_empty() {
        HattoriStong::Pass
    } else {
        HattoriStong::Fail(bad)
    }
}

/// A linear congruence `Σ a_I c_I ≡ 0 mod m` on Chern numbers, with
/// coefficients in partition order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Congruence {
    pub n: usize,
    pub coeffs: Vec<i64>,
    pub modulus: i64,
}

impl Congruence {
    pub fn new(n: usize, coeffs: Vec<i64>, modulus: i64) -> Self {
        Congruence { n, coeffs, modulus }
    }

    pub fn holds(&self, c: &[i64]) -> bool {
        let s: i128 = self
            .coeffs
            .iter()
            .zip(c)
            .map(|(a, b)| *a as i128 * *b as i128)
            .sum();
        s.rem_euclid(self.modulus as i128) == 0
    }
}

impl fmt::Display for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let keys = partitions(self.n as u32);
        let mut out = String::new();
        for (p, &a) in keys.iter().zip(&self.coeffs) {
            if a == 0 {
                continue;
            }
            let sign = if a < 0 { "-" } else { "+" };
            if out.is_empty() {
                if a < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            if a.abs() != 1 {
                out.push_str(&format!("{}*", a.abs()));
            }
            out.push_str(&p.chern_key());
        }
        if out.is_empty() {
            out.push('0');
        }
        write!(f, "{out} ≡ 0 mod {}", self.modulus)
    }
}

/// The lattice of Chern vectors on which every κ-form is integral.
#[derive(Debug, Clone, PartialEq)]
pub struct DivisibilityLattice {
    pub n: usize,
    /// triangular basis: `basis[j]` has its last nonzero entry at `j`
    pub basis: IntMatrix,
    pub congruences: Vec<Congruence>,
}

impl DivisibilityLattice {
    pub fn contains(&self, c: &[i64]) -> bool {
        self.congruences.iter().all(|r| r.holds(c))
    }

    /// Index of the lattice in `ℤ^{π(n)}`.
    pub fn index(&self) -> BigInt {
        (0..self.basis.len())
            .map(|j| self.basis[j][j].clone())
            .product()
    }

    /// Whether the given congruences cut out exactly this lattice: every
    /// basis vector satisfies them, and no nonzero representative of
    /// `ℤ^{π(n)} / L` does.
    pub fn equivalent_to(&self, relations: &[Congruence]) -> bool {
        let basis: Vec<Vec<i64>> = self
            .basis
            .iter()
            .map(|v| {
                v.iter()
                    .map(|x| x.to_i64().expect("small lattice"))
                    .collect()
            })
            .collect();
        if !basis.iter().all(|b| relations.iter().all(|r| r.holds(b))) {
            return false;
        }
        let diag: Vec<i64> = (0..basis.len()).map(|j| basis[j][j]).collect();
        diag.iter()
            .map(|&d| 0..d)
            .multi_cartesian_product()
            .skip(1)
            .all(|t| !relations.iter().all(|r| r.holds(&t)))
    }
}

/// Derives the congruences equivalent to integrality of every κ-form.
pub fn derive_divisibility_lattice(n: usize) -> Result<DivisibilityLattice> {
    if !(1..=MAX_GENUS_DIM).contains(&n) {
        return Err(Error::InvalidInput(format!(
            "divisibility lattices are derived for n in 1..=6, not {n}"
        )));
    }
    let keys = partitions(n as u32);
    let rows: Vec<(Vec<BigInt>, BigInt)> = kappa_forms(n)
        .iter()
        .map(|k| {
            let row: Vec<Rat> = keys
                .iter()
                .map(|p| k.coeffs.get(p).cloned().unwrap_or_else(Rat::zero))
                .collect();
            let d = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let ints = row
                .iter()
                .map(|x| (x * Rat::from_integer(d.clone())).to_integer())
                .collect();
            (ints, d)
        })
        .collect();
    let basis = congruence_lattice(&rows, keys.len());
    // c ∈ L  ⇔  B⁻¹ c ∈ ℤ^p, with B the matrix whose columns are the basis
    let p = keys.len();
    let b: Vec<Vec<Rat>> = (0..p)
        .map(|r| {
            (0..p)
                .map(|c| Rat::from_integer(basis[c][r].clone()))
                .collect()
        })
        .collect();
    let inv = linalg::inverse(&b).expect("full-rank lattice");
    let mut congruences = Vec::new();
    for row in inv {
        let d = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        if d.is_one() {
            continue;
        }
        let half = &d / 2;
        let coeffs: Vec<i64> = row
            .iter()
            .map(|x| {
                let mut v = (x * Rat::from_integer(d.clone()))
                    .to_integer()
                    .mod_floor(&d);
                if v > half {
                    v -= &d;
                }
                v.to_i64().expect("small coefficient")
            })
            .collect();
        let modulus = d.to_i64().expect("small modulus");
        congruences.push(Congruence::new(n, normalize_sign(coeffs), modulus));
    }
    Ok(DivisibilityLattice {
        n,
        basis,
        congruences,
    })
}

fn normalize_sign(coeffs: Vec<i64>) -> Vec<i64> {
    match coeffs.iter().find(|&&x| x != 0) {
        Some(&x) if x < 0 => coeffs.into_iter().map(|c| -c).collect(),
        _ => coeffs,
    }
}

/// Congruences on the integer unknowns of an affine parametrization
/// `c = A·u + b` of Chern vectors, induced by membership in the lattice.
/// Returns a triangular basis of `{(u, t) : A·u + t·b ∈ L}`.
pub fn pullback_lattice(lattice: &DivisibilityLattice, a: &[Vec<i64>], b: &[i64]) -> IntMatrix {
    let k = a.first().map_or(0, |r| r.len());
    let rows: Vec<(Vec<BigInt>, BigInt)> = lattice
        .congruences
        .iter()
        .map(|c| {
            let mut row: Vec<BigInt> = (0..k)
                .map(|j| BigInt::from(c.coeffs.iter().zip(a).map(|(x, r)| x * r[j]).sum::<i64>()))
                .collect();
            row.push(BigInt::from(
                c.coeffs.iter().zip(b).map(|(x, y)| x * y).sum::<i64>(),
            ));
            (row, BigInt::from(c.modulus))
        })
        .collect();
    congruence_lattice(&rows, k + 1)
}

/// Whether a congruence (in the unknowns `u` and the homogenizing `t`)
/// holds on every element of the lattice with `t = 1`.
pub fn holds_on_affine_slice(basis: &IntMatrix, coeffs: &[i64], modulus: i64) -> Result<bool> {
    let last = basis.len() - 1;
    if !basis[last][last].is_one() {
        return Err(Error::Precondition(
            "the affine slice t = 1 is empty".into(),
        ));
    }
    let ok = |v: &Vec<BigInt>| {
        let s: BigInt = v
            .iter()
            .zip(coeffs)
            .map(|(x, &c)| x * BigInt::from(c))
            .sum();
        s.mod_floor(&BigInt::from(modulus)).is_zero()
    };
    // basis[..last] spans the t = 0 part and basis[last] has t = 1, so the
    // slice is basis[last] + span(basis[..last])
    Ok(basis.iter().all(ok))
}
