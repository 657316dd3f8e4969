//! Chern numbers, the Todd genus and the χ_y-genus.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::intersection::{Localizer, RayMonomial};
use crate::linalg::{rat, Rat};
use crate::partition::{partitions, Partition};
use crate::symmetric::{todd_series, SymmetricSeries};

/// Largest complex dimension handled by the genus tables.
pub const MAX_GENUS_DIM: usize = 6;

/// Chern numbers `c_I[M]` indexed by the partitions of `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChernVector {
    n: usize,
    values: BTreeMap<Partition, i64>,
}

impl ChernVector {
    pub fn new(n: usize, values: BTreeMap<Partition, i64>) -> Result<Self> {
        let expected = partitions(n as u32);
        if values.len() != expected.len() || expected.iter().any(|p| !values.contains_key(p)) {
            return Err(Error::InvalidInput(format!(
                "a Chern vector in dimension {n} needs exactly the keys {}",
                expected.iter().map(Partition::chern_key).join(", ")
            )));
        }
        Ok(ChernVector { n, values })
    }

    /// Values listed in partition order (`c1^n` first, `c_n` last).
    pub fn from_values(n: usize, values: &[i64]) -> Result<Self> {
        let keys = partitions(n as u32);
        if keys.len() != values.len() {
            return Err(Error::InvalidInput(format!(
                "dimension {n} has {} Chern numbers, got {}",
                keys.len(),
                values.len()
            )));
        }
        Ok(ChernVector {
            n,
            values: keys.into_iter().zip(values.iter().copied()).collect(),
        })
    }

    pub fn zero(n: usize) -> Self {
        Self::from_values(n, &vec![0; partitions(n as u32).len()]).expect("sizes match")
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, p: &Partition) -> Option<i64> {
        self.values.get(p).copied()
    }

    /// Value for the partition with the given parts (any order).
    pub fn value(&self, parts: &[u32]) -> i64 {
        self.values[&Partition::new(parts.to_vec())]
    }

    pub fn values(&self) -> &BTreeMap<Partition, i64> {
        &self.values
    }

    /// Values in partition order.
    pub fn to_vec(&self) -> Vec<i64> {
        self.values.values().copied().collect()
    }

    /// JSON object `{"c1^3": .., "c1*c2": .., "c3": ..}` in partition order.
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (p, v) in &self.values {
            m.insert(p.chern_key(), Value::from(*v));
        }
        Value::Object(m)
    }

    /// Parses a JSON object keyed by Chern monomials; `n` is inferred from the
    /// weights of the keys unless given.
    pub fn from_json(v: &Value, n: Option<usize>) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::InvalidInput("Chern numbers must be a JSON object".into()))?;
        let mut values = BTreeMap::new();
        for (k, x) in obj {
            let p = Partition::parse_chern_key(k)?;
            let x = x.as_i64().ok_or_else(|| {
                Error::InvalidInput(format!("value of {k} is not a 64-bit integer"))
            })?;
            if values.insert(p, x).is_some() {
                return Err(Error::InvalidInput(format!("duplicate key {k}")));
            }
        }
        let weights: Vec<u32> = values.keys().map(Partition::weight).dedup().collect();
        let n = match (n, weights.as_slice()) {
            (Some(n), _) => n,
            (None, [w]) => *w as usize,
            _ => {
                return Err(Error::InvalidInput(
                    "cannot infer the dimension from the keys".into(),
                ))
            }
        };
        Self::new(n, values)
    }
}

/// Coefficients over the Chern basis of a degree-`n` characteristic number.
pub type ChernForm = BTreeMap<Partition, Rat>;

/// Evaluates a rational combination of Chern numbers.
pub fn apply_form(form: &ChernForm, cv: &ChernVector) -> Rat {
    form.iter()
        .fold(Rat::zero(), |acc, (p, c)| match cv.get(p) {
            Some(v) => acc + c * rat(v),
            None => acc,
        })
}

/// Chern numbers of a smooth complete toric variety. The total Chern class
/// is `∏(1 + v_j)`; at the fixed point of a maximal cone the class `c_k`
/// restricts to the `k`-th elementary symmetric function of the cone's
/// weights, which gives each `c_I` by localization.
pub fn chern_numbers(fan: &Fan) -> Result<ChernVector> {
    let n = fan.dim();
    let loc = Localizer::new(fan)?;
    let mut values = BTreeMap::new();
    for p in partitions(n as u32) {
        let v = loc.integrate(|weights| {
            let w: Vec<&BigInt> = weights.iter().map(|(_, w)| w).collect();
            p.parts()
                .iter()
                .map(|&k| elementary(&w, k as usize))
                .product()
        })?;
        values.insert(p, to_i64(&v)?);
    }
    Ok(ChernVector { n, values })
}

/// Same numbers, computed by expanding each `c_I` into squarefree ray
/// monomials and evaluating them one at a time.
pub fn chern_numbers_termwise(fan: &Fan) -> Result<ChernVector> {
    let n = fan.dim();
    let loc = Localizer::new(fan)?;
    let m = fan.num_rays();
    let mut values = BTreeMap::new();
    for p in partitions(n as u32) {
        // expand ∏_j c_{i_j} as a sum of monomials with multiplicities
        let mut poly: BTreeMap<RayMonomial, i64> = BTreeMap::from([(RayMonomial::default(), 1)]);
        for &k in p.parts() {
            let mut next = BTreeMap::new();
            for (mono, c) in &poly {
                for subset in (0..m).combinations(k as usize) {
                    let mut e = mono.exponents().clone();
                    for r in subset {
                        *e.entry(r).or_insert(0) += 1;
                    }
                    *next.entry(RayMonomial::new(e)).or_insert(0) += c;
                }
            }
            poly = next;
        }
        let mut total = BigInt::zero();
        for (mono, c) in &poly {
            total += BigInt::from(*c) * loc.evaluate(mono)?;
        }
        values.insert(p, to_i64(&total)?);
    }
    Ok(ChernVector { n, values })
}

fn to_i64(v: &BigInt) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::InvalidInput(format!("Chern number {v} exceeds 64 bits")))
}

fn elementary(w: &[&BigInt], k: usize) -> BigInt {
    // e_k by the usual recurrence over prefixes
    let mut e = vec![BigInt::zero(); k + 1];
    e[0] = BigInt::one();
    for x in w {
        for j in (1..=k).rev() {
            let t = &e[j - 1] * *x;
            e[j] += t;
        }
    }
    e[k].clone()
}

/// The homogeneous parts `T_n^p` of the χ_y-genus in the Chern basis,
/// for `p = 0..=n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ToddTable {
    pub n: usize,
    pub rows: Vec<ChernForm>,
}

impl ToddTable {
    /// The Todd genus `T_n^0`.
    pub fn todd(&self) -> &ChernForm {
        &self.rows[0]
    }
}

/// The cached table for dimension `1 ≤ n ≤ 6`.
pub fn todd_table(n: usize) -> &'static ToddTable {
    static TABLES: [OnceLock<ToddTable>; MAX_GENUS_DIM + 1] =
        [const { OnceLock::new() }; MAX_GENUS_DIM + 1];
    assert!(
        (1..=MAX_GENUS_DIM).contains(&n),
        "genus tables cover dimensions 1..=6"
    );
    TABLES[n].get_or_init(|| compute_todd_table(n))
}

/// Coefficients `q_k(y)` of `Q(y,x) = x(y+1)/(1 − e^{−x(y+1)}) − xy`, each a
/// polynomial in `y` listed by ascending power.
fn q_coefficients(n: usize) -> Vec<Vec<Rat>> {
    let b = todd_series(n as u32);
    (0..=n)
        .map(|k| {
            // (y+1)^k b_k
            let mut poly: Vec<Rat> = (0..=k).map(|p| rat(binomial(k, p)) * &b[k]).collect();
            if k == 1 {
                poly[1] -= Rat::one();
            }
            poly
        })
        .collect()
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

fn compute_todd_table(n: usize) -> ToddTable {
    let q = q_coefficients(n);
    // coefficient of x^λ in ∏_i Q(y, x_i), as a polynomial in y
    let mut slices: Vec<BTreeMap<Partition, Rat>> = vec![BTreeMap::new(); n + 1];
    for lambda in partitions(n as u32) {
        if lambda.len() > n {
            continue;
        }
        let mut poly = vec![Rat::one()];
        for &part in lambda.parts() {
            let f = &q[part as usize];
            let mut next = vec![Rat::zero(); poly.len() + f.len() - 1];
            for (i, a) in poly.iter().enumerate() {
                for (j, b) in f.iter().enumerate() {
                    next[i + j] += a * b;
                }
            }
            poly = next;
        }
        for (p, c) in poly.into_iter().enumerate() {
            if !c.is_zero() {
                slices[p].insert(lambda.clone(), c);
            }
        }
    }
    let rows = slices
        .into_iter()
        .map(|terms| {
            let s = SymmetricSeries::from_fn(n, n as u32, |l| {
                terms.get(l).cloned().unwrap_or_else(Rat::zero)
            });
            s.to_elementary()
        })
        .collect();
    ToddTable { n, rows }
}

/// `Σ_p T_n^p[cv] y^p`, coefficients by ascending power of `y`.
pub fn generalized_todd_genus(cv: &ChernVector) -> Vec<Rat> {
    todd_table(cv.dim())
        .rows
        .iter()
        .map(|row| apply_form(row, cv))
        .collect()
}

/// The Todd genus of a Chern vector.
pub fn todd_genus(cv: &ChernVector) -> Rat {
    apply_form(todd_table(cv.dim()).todd(), cv)
}

/// `χ^0, …, χ^n` of a simple-polytope variety from its g-vector:
/// `χ^p = (−1)^p h_p`.
pub fn chi_y_from_g(g: &[i64], n: usize) -> Result<Vec<i64>> {
    let h = crate::face_vectors::g_to_h(g, n)?;
    Ok(h.iter()
        .enumerate()
        .map(|(p, x)| if p % 2 == 0 { *x } else { -x })
        .collect())
}
