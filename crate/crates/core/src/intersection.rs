//! Cohomology rings of smooth complete toric varieties and evaluation of
//! top-degree monomials in the ray classes.
//!
//! Two independent evaluators are provided. [`Localizer`] sums torus
//! fixed-point contributions over the maximal cones; [`RingReducer`]
//! rewrites monomials with the linear relations until every term is
//! squarefree, where the Stanley–Reisner relations and the normalization of
//! a maximal cone to one apply.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fan::{Cone, Fan};
use crate::linalg::{rat_to_i64, Rat};

/// Default step budget for the ring-reduction evaluator.
pub const DEFAULT_ORACLE_BUDGET: usize = 2_000_000;

/// `ℤ[v_1..v_m] / (L + J)`: the linear forms `θ_i = Σ_j (v_j)_i v_j` and the
/// minimal non-faces generating the Stanley–Reisner ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingPresentation {
    pub linear_ideal: Vec<Vec<i64>>,
    pub nonfaces: Vec<Cone>,
}

pub fn presentation(fan: &Fan) -> Result<RingPresentation> {
    require_regular(fan)?;
    let linear_ideal = (0..fan.dim())
        .map(|i| fan.rays().iter().map(|r| r.coords()[i]).collect())
        .collect();
    Ok(RingPresentation {
        linear_ideal,
        nonfaces: fan.minimal_nonfaces(),
    })
}

fn require_regular(fan: &Fan) -> Result<()> {
    if fan.is_regular() {
        Ok(())
    } else {
        Err(Error::Precondition("the fan is not regular".into()))
    }
}

/// A monomial in the ray classes, as a map ray index → exponent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RayMonomial(BTreeMap<usize, u32>);

impl RayMonomial {
    pub fn new(exponents: BTreeMap<usize, u32>) -> Self {
        RayMonomial(exponents.into_iter().filter(|(_, e)| *e > 0).collect())
    }

    /// The product of the listed rays, with repetition.
    pub fn from_rays(rays: &[usize]) -> Self {
        let mut m = BTreeMap::new();
        for &r in rays {
            *m.entry(r).or_insert(0) += 1;
        }
        RayMonomial(m)
    }

    pub fn exponents(&self) -> &BTreeMap<usize, u32> {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.values().sum()
    }

    fn check(&self, fan: &Fan) -> Result<()> {
        if self.degree() as usize != fan.dim() {
            return Err(Error::InvalidInput(format!(
                "monomial has degree {}, expected {}",
                self.degree(),
                fan.dim()
            )));
        }
        if let Some(&r) = self.0.keys().find(|&&r| r >= fan.num_rays()) {
            return Err(Error::InvalidInput(format!("ray index {r} out of bounds")));
        }
        Ok(())
    }
}

/// Fixed-point data: for each maximal cone, the restrictions of the ray
/// classes (nonzero only on the cone's rays) and their product.
#[derive(Debug, Clone)]
pub struct Localizer {
    cones: Vec<FixedPoint>,
}

#[derive(Debug, Clone)]
struct FixedPoint {
    /// (ray index, weight) for the rays of the cone
    weights: Vec<(usize, BigInt)>,
    euler: BigInt,
}

impl Localizer {
    /// Uses the probe `(1, M, M², …)` with the smallest `M` beyond the ray
    /// coordinates that keeps every weight nonzero.
    pub fn new(fan: &Fan) -> Result<Localizer> {
        let max = fan
            .rays()
            .iter()
            .flat_map(|r| r.coords().iter())
            .map(|x| x.unsigned_abs())
            .max()
            .unwrap_or(0);
        let mut m = max as i64 + 2;
        loop {
            if let Some(l) = Self::with_base(fan, m)? {
                return Ok(l);
            }
            m += 1;
        }
    }

    /// Uses the probe `(1, M, M², …)`; `None` if some weight vanishes.
    pub fn with_base(fan: &Fan, m: i64) -> Result<Option<Localizer>> {
        let probe: Vec<BigInt> = (0..fan.dim() as u32)
            .map(|k| BigInt::from(m).pow(k))
            .collect();
        Self::with_probe(fan, &probe)
    }

    pub fn with_probe(fan: &Fan, probe: &[BigInt]) -> Result<Option<Localizer>> {
        require_regular(fan)?;
        let mut cones = Vec::with_capacity(fan.max_cones().len());
        for c in fan.max_cones() {
            let dual = fan.dual_basis(c);
            let mut weights = Vec::with_capacity(c.dim());
            for (row, &r) in dual.iter().zip(c.indices()) {
                let w: Rat = row.iter().zip(probe).fold(Rat::zero(), |acc, (u, p)| {
                    acc + u * Rat::from_integer(p.clone())
                });
                if w.is_zero() {
                    return Ok(None);
                }
                weights.push((r, w.to_integer()));
            }
            let euler = weights.iter().map(|(_, w)| w.clone()).product();
            cones.push(FixedPoint { weights, euler });
        }
        Ok(Some(Localizer { cones }))
    }

    /// `Σ_σ f(w_σ) / ∏ w_σ`, where `f` sees the weights of the cone's rays.
    /// The result is required to be an integer.
    pub fn integrate(&self, mut f: impl FnMut(&[(usize, BigInt)]) -> BigInt) -> Result<BigInt> {
        let mut total = Rat::zero();
        for fp in &self.cones {
            let num = f(&fp.weights);
            if !num.is_zero() {
                total += Rat::new(num, fp.euler.clone());
            }
        }
        if !total.is_integer() {
            return Err(Error::NonIntegerResult(total.to_string()));
        }
        Ok(total.to_integer())
    }

    pub fn evaluate(&self, m: &RayMonomial) -> Result<BigInt> {
        self.integrate(|weights| {
            let mut prod = BigInt::one();
            for (&r, &e) in m.exponents() {
                match weights.iter().find(|(i, _)| *i == r) {
                    Some((_, w)) => prod *= w.pow(e),
                    None => return BigInt::zero(),
                }
            }
            prod
        })
    }
}

/// Evaluates a degree-`n` monomial on the fundamental class.
pub fn evaluate(fan: &Fan, m: &RayMonomial) -> Result<BigInt> {
    m.check(fan)?;
    Localizer::new(fan)?.evaluate(m)
}

/// Evaluation by rewriting with the ring relations. Work is bounded by a
/// step budget; results are memoized per monomial.
#[derive(Debug)]
pub struct RingReducer<'a> {
    fan: &'a Fan,
    /// dual bases of the maximal cones, as integers
    duals: Vec<Vec<Vec<i64>>>,
    memo: HashMap<Vec<u32>, BigInt>,
    budget: usize,
    steps: usize,
}

impl<'a> RingReducer<'a> {
    pub fn new(fan: &'a Fan, budget: usize) -> Result<Self> {
        require_regular(fan)?;
        let duals = fan
            .max_cones()
            .iter()
            .map(|c| {
                fan.dual_basis(c)
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|x| rat_to_i64(x).expect("regular cone"))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Ok(RingReducer {
            fan,
            duals,
            memo: HashMap::new(),
            budget,
            steps: 0,
        })
    }

    pub fn evaluate(&mut self, m: &RayMonomial) -> Result<BigInt> {
        m.check(self.fan)?;
        let mut exps = vec![0u32; self.fan.num_rays()];
        for (&r, &e) in m.exponents() {
            exps[r] = e;
        }
        self.reduce(exps)
    }

    fn reduce(&mut self, exps: Vec<u32>) -> Result<BigInt> {
        if let Some(v) = self.memo.get(&exps) {
            return Ok(v.clone());
        }
        self.steps += 1;
        if self.steps > self.budget {
            return Err(Error::OracleBudgetExceeded(self.budget));
        }
        let support = Cone::new((0..exps.len()).filter(|&i| exps[i] > 0).collect());
        // a monomial whose support spans no cone lies in the Stanley–Reisner ideal
        let Some(ci) = self
            .fan
            .max_cones()
            .iter()
            .position(|c| support.is_face_of(c))
        else {
            self.memo.insert(exps, BigInt::zero());
            return Ok(BigInt::zero());
        };
        let Some(r) = (0..exps.len()).find(|&i| exps[i] >= 2) else {
            // squarefree of full degree: the support is a maximal cone
            self.memo.insert(exps, BigInt::one());
            return Ok(BigInt::one());
        };
        // v_r = −Σ_{k∉σ} <u_{σ,r}, v_k> v_k, a consequence of the linear relations
        let sigma = &self.fan.max_cones()[ci];
        let pos = sigma
            .indices()
            .iter()
            .position(|&i| i == r)
            .expect("r in σ");
        let u = self.duals[ci][pos].clone();
        let mut total = BigInt::zero();
        for k in 0..self.fan.num_rays() {
            if sigma.contains(k) {
                continue;
            }
            let c: i64 = u
                .iter()
                .zip(self.fan.ray(k).coords())
                .map(|(a, b)| a * b)
                .sum();
            if c == 0 {
                continue;
            }
            let mut next = exps.clone();
            next[r] -= 1;
            next[k] += 1;
            total -= BigInt::from(c) * self.reduce(next)?;
        }
        self.memo.insert(exps, total.clone());
        Ok(total)
    }
}

/// All monomials of degree `d` in `m` ray classes, in lexicographic order
/// of their exponent vectors (descending).
pub fn monomials(m: usize, d: u32) -> Vec<RayMonomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; m];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<RayMonomial>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(RayMonomial::new(cur.iter().copied().enumerate().collect()));
            cur[i] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if m > 0 {
        rec(0, d, &mut cur, &mut out);
    }
    out
}

/// A polynomial in ray classes with integer coefficients.
pub type RayPolynomial = Vec<(i64, RayMonomial)>;

/// Whether a homogeneous polynomial of degree `d ≤ n` vanishes in the
/// cohomology ring, tested by pairing with every monomial of degree `n − d`
/// (the ring of a smooth complete toric variety satisfies Poincaré duality).
pub fn vanishes(fan: &Fan, poly: &[(i64, RayMonomial)]) -> Result<bool> {
    let loc = Localizer::new(fan)?;
    let Some(d) = poly.first().map(|(_, m)| m.degree()) else {
        return Ok(true);
    };
    if poly.iter().any(|(_, m)| m.degree() != d) || d as usize > fan.dim() {
        return Err(Error::InvalidInput(
            "relation must be homogeneous of degree ≤ n".into(),
        ));
    }
    for comp in monomials(fan.num_rays(), fan.dim() as u32 - d) {
        let mut total = BigInt::zero();
        for (c, m) in poly {
            let mut e = m.exponents().clone();
            for (&r, &x) in comp.exponents() {
                *e.entry(r).or_insert(0) += x;
            }
            total += BigInt::from(*c) * loc.evaluate(&RayMonomial::new(e))?;
        }
        if !total.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether the classes of the rays outside `keep` can be eliminated with
/// the linear relations over `ℤ`, so that `keep` generates the ring.
pub fn generated_by(fan: &Fan, keep: &[usize]) -> bool {
    let other: Vec<usize> = (0..fan.num_rays()).filter(|r| !keep.contains(r)).collect();
    if other.len() != fan.dim() {
        return false;
    }
    let rows: Vec<Vec<i64>> = (0..fan.dim())
        .map(|i| other.iter().map(|&r| fan.ray(r).coords()[i]).collect())
        .collect();
    let d = crate::linalg::det_int(&rows);
    d == BigInt::one() || d == -BigInt::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cp2() -> Fan {
        Fan::from_coords(
            2,
            &[vec![1, 0], vec![0, 1], vec![-1, -1]],
            &[vec![0, 1], vec![1, 2], vec![0, 2]],
        )
        .unwrap()
    }

    fn hirzebruch(a: i64) -> Fan {
        Fan::from_coords(
            2,
            &[vec![1, 0], vec![0, 1], vec![-1, a], vec![0, -1]],
            &[vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]],
        )
        .unwrap()
    }

    #[test]
    fn projective_plane_monomials() {
        let f = cp2();
        assert_eq!(
            evaluate(&f, &RayMonomial::from_rays(&[0, 1])).unwrap(),
            BigInt::one()
        );
        assert_eq!(
            evaluate(&f, &RayMonomial::from_rays(&[0, 0])).unwrap(),
            BigInt::one()
        );
        let mut red = RingReducer::new(&f, 1000).unwrap();
        assert_eq!(
            red.evaluate(&RayMonomial::from_rays(&[0, 0])).unwrap(),
            BigInt::one()
        );
    }

    #[test]
    fn non_face_pairs_vanish() {
        let f = hirzebruch(2);
        // rays 0 and 2 span no cone
        assert!(evaluate(&f, &RayMonomial::from_rays(&[0, 2]))
            .unwrap()
            .is_zero());
        // self-intersection of the section is −a
        assert_eq!(
            evaluate(&f, &RayMonomial::from_rays(&[3, 3])).unwrap(),
            BigInt::from(2)
        );
        assert_eq!(
            evaluate(&f, &RayMonomial::from_rays(&[1, 1])).unwrap(),
            BigInt::from(-2)
        );
    }

    #[test]
    fn both_evaluators_agree() {
        for a in -3..=3 {
            let f = hirzebruch(a);
            let loc = Localizer::new(&f).unwrap();
            let mut red = RingReducer::new(&f, 10_000).unwrap();
            for m in monomials(4, 2) {
                assert_eq!(
                    loc.evaluate(&m).unwrap(),
                    red.evaluate(&m).unwrap(),
                    "a={a} {m:?}"
                );
            }
        }
    }

    #[test]
    fn probe_independence() {
        let f = hirzebruch(3);
        let m = RayMonomial::from_rays(&[1, 1]);
        let vals: Vec<BigInt> = [5, 7, 11]
            .iter()
            .map(|&b| {
                Localizer::with_base(&f, b)
                    .unwrap()
                    .unwrap()
                    .evaluate(&m)
                    .unwrap()
            })
            .collect();
        assert!(vals.iter().all(|v| *v == vals[0]));
    }

    #[test]
    fn budget_is_reported() {
        let f = hirzebruch(1);
        let mut red = RingReducer::new(&f, 1).unwrap();
        assert_eq!(
            red.evaluate(&RayMonomial::from_rays(&[1, 1])),
            Err(Error::OracleBudgetExceeded(1))
        );
    }

    #[test]
    fn presentation_of_plane() {
        let p = presentation(&cp2()).unwrap();
        assert_eq!(p.linear_ideal, vec![vec![1, 0, -1], vec![0, 1, -1]]);
        assert!(p.nonfaces.is_empty() || p.nonfaces == vec![Cone::new(vec![0, 1, 2])]);
        assert!(vanishes(
            &cp2(),
            &[
                (1, RayMonomial::from_rays(&[0])),
                (-1, RayMonomial::from_rays(&[2]))
            ]
        )
        .unwrap());
    }
}
