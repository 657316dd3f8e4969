//! Named families of smooth projective toric varieties, given by their fans.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Pow, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::chern::chern_numbers;
use crate::error::{Error, Result};
use crate::fan::{Cone, Fan};
use crate::intersection::{generated_by, vanishes, RayMonomial};
use crate::linalg::{rat, rref, Rat};
use crate::partition::{partitions, Partition};

/// Projective space: rays `e_1, …, e_n, −Σ e_i`, every `n` of them a cone.
pub fn cpn(n: usize) -> Result<Fan> {
    if !(1..=crate::fan::MAX_DIM).contains(&n) {
        return Err(Error::InvalidInput(format!(
            "projective space dimension {n} outside 1..=6"
        )));
    }
    let mut rays: Vec<Vec<i64>> = (0..n).map(|i| unit(n, i)).collect();
    rays.push(vec![-1; n]);
    let cones: Vec<Vec<usize>> = (0..=n).combinations(n).collect();
    Fan::from_coords(n, &rays, &cones)
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    (0..n).map(|j| i64::from(i == j)).collect()
}

fn check_order(a: &[i64]) -> Result<()> {
    if a.first().is_some_and(|&x| x < 0) || a.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::ParamOrder(a.to_vec()));
    }
    Ok(())
}

/// Kleinschmidt's fans with `r + 2` (`r = a.len()`) rays beyond a basis:
/// `U = {e_1, …, e_r, −(e_1 + ⋯ + e_r)}` and
/// `V = {e_{r+1}, …, e_n, (a_1, …, a_r, −1, …, −1)}`; the maximal cones
/// consist of all but one vector of `U` and all but one vector of `V`.
/// Ray order: `U` then `V`.
pub fn kleinschmidt(n: usize, a: &[i64]) -> Result<Fan> {
    let r = a.len();
    if n < 2 || !(1..n).contains(&r) {
        return Err(Error::InvalidInput(format!(
            "need 1 <= r <= n-1, got n={n}, r={r}"
        )));
    }
    check_order(a)?;
    let fan = kleinschmidt_any(n, a)?;
    if n == 3 && r == 2 {
        // ℤ[u3, v2] / (u3^3 − (a1 + a2) u3^2 v2, v2^2)
        let (u3, v2) = (2, 4);
        let s = a[0] + a[1];
        let ok = generated_by(&fan, &[u3, v2])
            && fan.max_cones().len() == 6
            && vanishes(&fan, &[(1, mono(&[u3, u3, u3])), (-s, mono(&[u3, u3, v2]))])?
            && vanishes(&fan, &[(1, mono(&[v2, v2]))])?;
        if !ok {
            return Err(Error::ValidationFailed(format!(
                "ring of the Kleinschmidt fan {a:?}"
            )));
        }
    }
    Ok(fan)
}

/// The same construction for arbitrary integer parameters (the fan is
/// complete and regular for every choice; the ordering is a normalization).
pub fn kleinschmidt_any(n: usize, a: &[i64]) -> Result<Fan> {
    let r = a.len();
    if n < 2 || !(1..n).contains(&r) {
        return Err(Error::InvalidInput(format!(
            "need 1 <= r <= n-1, got n={n}, r={r}"
        )));
    }
    let mut rays: Vec<Vec<i64>> = (0..r).map(|i| unit(n, i)).collect();
    rays.push((0..n).map(|j| if j < r { -1 } else { 0 }).collect());
    rays.extend((r..n).map(|i| unit(n, i)));
    rays.push((0..n).map(|j| if j < r { a[j] } else { -1 }).collect());
    let u: Vec<usize> = (0..=r).collect();
    let v: Vec<usize> = (r + 1..=n + 1).collect();
    let cones: Vec<Vec<usize>> = u
        .iter()
        .combinations(r)
        .cartesian_product(v.iter().combinations(n - r))
        .map(|(x, y)| x.into_iter().chain(y).copied().collect())
        .collect();
    Fan::from_coords(n, &rays, &cones)
}

fn mono(rays: &[usize]) -> RayMonomial {
    RayMonomial::from_rays(rays)
}

/// Rays of the cube-like fan `Σ(a)`, in the order `u1, u2, v1, v2, w1, w2`.
pub const SIGMA_RAY_NAMES: [&str; 6] = ["u1", "u2", "v1", "v2", "w1", "w2"];

/// The fan `Σ(a)`: `u1=(1,0,0), u2=(−1,a,0), v1=(0,1,0), v2=(0,−1,1),
/// w1=(0,0,1), w2=(0,0,−1)`, one ray of each pair per maximal cone. Its
/// ring is checked to be `ℤ[u2,v2,w2]/(u2², v2² − a u2 v2, w2² − v2 w2)`.
pub fn sigma_a(a: i64) -> Result<Fan> {
    let rays = vec![
        vec![1, 0, 0],
        vec![-1, a, 0],
        vec![0, 1, 0],
        vec![0, -1, 1],
        vec![0, 0, 1],
        vec![0, 0, -1],
    ];
    let cones: Vec<Vec<usize>> = [[0, 1], [2, 3], [4, 5]]
        .iter()
        .map(|p| p.to_vec())
        .multi_cartesian_product()
        .collect();
    let fan = Fan::from_coords(3, &rays, &cones)?;
    let (u2, v2, w2) = (1, 3, 5);
    let ok = generated_by(&fan, &[u2, v2, w2])
        && fan.max_cones().len() == 8
        && vanishes(&fan, &[(1, mono(&[u2, u2]))])?
        && vanishes(&fan, &[(1, mono(&[v2, v2])), (-a, mono(&[u2, v2]))])?
        && vanishes(&fan, &[(1, mono(&[w2, w2])), (-1, mono(&[v2, w2]))])?;
    if !ok {
        return Err(Error::ValidationFailed(format!("ring of Σ({a})")));
    }
    Ok(fan)
}

/// Ray names of the Δ fans, in index order.
pub const DELTA_RAY_NAMES: [&str; 8] = ["u1", "u2", "u3", "u4", "x", "y", "v1", "v2"];

/// The expected Stanley–Reisner generators of the Δ fans, by ray name.
pub const DELTA_NONFACES: [&[&str]; 6] = [
    &["u2", "y"],
    &["u3", "u4"],
    &["u4", "y"],
    &["v1", "v2"],
    &["u1", "u2", "x"],
    &["u1", "u3", "x"],
];

/// The three-dimensional part of the Δ fans: projective space blown up
/// along the cone `{u3,u4}` (new ray `x`) and then along `{u1,u3,x}` (new
/// ray `y`).
pub fn delta_left_fan() -> Result<Fan> {
    let p3 = cpn(3)?;
    let f = p3.star_subdivide(&Cone::new(vec![2, 3]))?;
    f.star_subdivide(&Cone::new(vec![0, 2, 4]))
}

/// The Δ fan with the twisted last ray `v2 = (α_1, α_2, α_3, −1)`.
pub fn delta_with_twist(alpha: [i64; 3]) -> Result<Fan> {
    let left = delta_left_fan()?;
    let right = Fan::from_coords(1, &[vec![1], vec![-1]], &[vec![0], vec![1]])?;
    let joined = left.join(&right)?;
    let v2 = joined.num_rays() - 1;
    joined.with_ray(v2, vec![alpha[0], alpha[1], alpha[2], -1])
}

/// An affine identification `α(a, b) = base + a·a_dir + b·b_dir`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaCalibration {
    pub base: [i64; 3],
    pub a_dir: [i64; 3],
    pub b_dir: [i64; 3],
}

impl DeltaCalibration {
    pub fn alpha(&self, a: i64, b: i64) -> [i64; 3] {
        [0, 1, 2].map(|i| self.base[i] + a * self.a_dir[i] + b * self.b_dir[i])
    }
}

impl fmt::Display for DeltaCalibration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "base {:?}, a-direction {:?}, b-direction {:?}",
            self.base, self.a_dir, self.b_dir
        )
    }
}

/// `(c1^2*c2, c2^2)` of the twisted Δ fan.
pub fn delta_signature(alpha: [i64; 3]) -> Result<(i64, i64)> {
    let cv = chern_numbers(&delta_with_twist(alpha)?)?;
    Ok((cv.value(&[2, 1, 1]), cv.value(&[2, 2])))
}

pub fn target_signature(a: i64, b: i64) -> (i64, i64) {
    (188 - 6 * a + 4 * b, 96 - a)
}

/// Scans `α_0, A, B ∈ [−3, 3]³` (in lexicographic order) for an affine
/// identification under which the twisted Δ fan has
/// `c1^2*c2 = 188 − 6a + 4b` and `c2^2 = 96 − a` for `−2 ≤ a, b ≤ 2`.
pub fn calibration_scan() -> Result<CalibrationScan> {
    let box3: Vec<[i64; 3]> = (0..3)
        .map(|_| -3..=3i64)
        .multi_cartesian_product()
        .map(|v| [v[0], v[1], v[2]])
        .collect();
    let mut memo: HashMap<[i64; 3], (i64, i64)> = HashMap::new();
    let mut sig = |alpha: [i64; 3]| -> Result<(i64, i64)> {
        if let Some(s) = memo.get(&alpha) {
            return Ok(*s);
        }
        let s = delta_signature(alpha)?;
        memo.insert(alpha, s);
        Ok(s)
    };
    let shift = |p: [i64; 3], d: [i64; 3], t: i64| [0, 1, 2].map(|i| p[i] + t * d[i]);
    let mut scan = CalibrationScan::default();
    for &base in &box3 {
        if sig(base)? == target_signature(0, 0) {
            scan.bases.push(base);
        }
    }
    for &base in &scan.bases.clone() {
        let mut a_dirs = Vec::new();
        for &d in &box3 {
            let mut ok = true;
            for t in GRID {
                ok &= sig(shift(base, d, t))? == target_signature(t, 0);
                if !ok {
                    break;
                }
            }
            if ok {
                a_dirs.push(d);
            }
        }
        let mut b_dirs = Vec::new();
        for &d in &box3 {
            let mut ok = true;
            for t in GRID {
                ok &= sig(shift(base, d, t))? == target_signature(0, t);
                if !ok {
                    break;
                }
            }
            if ok {
                b_dirs.push(d);
            }
        }
        for (&a_dir, &b_dir) in a_dirs.iter().cartesian_product(&b_dirs) {
            let cal = DeltaCalibration { base, a_dir, b_dir };
            let mut ok = true;
            for (a, b) in GRID.cartesian_product(GRID) {
                ok &= sig(cal.alpha(a, b))? == target_signature(a, b);
                if !ok {
                    break;
                }
            }
            if ok {
                scan.valid.push(cal);
            }
        }
        scan.a_dirs.push((base, a_dirs));
        scan.b_dirs.push((base, b_dirs));
    }
    scan.evaluations = memo.len();
    Ok(scan)
}

const GRID: std::ops::RangeInclusive<i64> = -2..=2;

/// Record of a calibration scan.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct CalibrationScan {
    /// twists with the target numbers at `a = b = 0`
    pub bases: Vec<[i64; 3]>,
    pub a_dirs: Vec<([i64; 3], Vec<[i64; 3]>)>,
    pub b_dirs: Vec<([i64; 3], Vec<[i64; 3]>)>,
    /// every identification valid on the whole grid, lexicographically sorted
    pub valid: Vec<DeltaCalibration>,
    pub evaluations: usize,
}

impl CalibrationScan {
    pub fn chosen(&self) -> Option<DeltaCalibration> {
        self.valid.first().copied()
    }

    /// Human-readable log of the scan.
    pub fn log(&self) -> String {
        let mut out = String::new();
        out.push_str("scan box: base, a-direction, b-direction in [-3,3]^3; grid -2 <= a,b <= 2\n");
        out.push_str("targets: c1^2*c2 = 188 - 6a + 4b, c2^2 = 96 - a\n");
        out.push_str(&format!(
            "distinct twists evaluated: {}\n",
            self.evaluations
        ));
        for b in &self.bases {
            out.push_str(&format!("base candidate {b:?}\n"));
        }
        for ((base, a), (_, b)) in self.a_dirs.iter().zip(&self.b_dirs) {
            out.push_str(&format!("  base {base:?}: a-directions {a:?}\n"));
            out.push_str(&format!("  base {base:?}: b-directions {b:?}\n"));
        }
        out.push_str(&format!("valid identifications: {}\n", self.valid.len()));
        for (i, c) in self.valid.iter().enumerate() {
            let tag = if i == 0 { "chosen" } else { "alternative" };
            out.push_str(&format!("{tag}: {c}\n"));
        }
        out
    }
}

/// The frozen calibration shipped with the library.
pub fn frozen_calibration() -> Result<DeltaCalibration> {
    serde_json::from_str(include_str!("../data/delta_calibration.json"))
        .map_err(|e| Error::CalibrationFailed(format!("unreadable calibration data: {e}")))
}

/// The fan `Δ(a, b)` with the frozen twist. The Stanley–Reisner ideal is
/// checked against the expected generators.
pub fn delta_ab(a: i64, b: i64) -> Result<Fan> {
    let cal = frozen_calibration()?;
    let fan = delta_with_twist(cal.alpha(a, b))?;
    let names =
        |c: &Cone| -> Vec<&str> { c.indices().iter().map(|&i| DELTA_RAY_NAMES[i]).collect() };
    let got: Vec<Vec<&str>> = fan.minimal_nonfaces().iter().map(names).collect();
    let want: Vec<Vec<&str>> = DELTA_NONFACES.iter().map(|g| g.to_vec()).collect();
    if got != want {
        return Err(Error::ValidationFailed(format!(
            "Stanley–Reisner generators {got:?}"
        )));
    }
    Ok(fan)
}

/// Blows up a torus-fixed point of a three-dimensional fan by subdividing a
/// maximal cone (the lexicographically first unless given).
pub fn blowup_fixed_point(fan: &Fan, cone: Option<&Cone>) -> Result<Fan> {
    if fan.dim() != 3 {
        return Err(Error::Precondition(format!(
            "fixed-point blow-ups are for dimension 3, got {}",
            fan.dim()
        )));
    }
    let sigma = match cone {
        Some(c) => {
            if !fan.max_cones().contains(c) {
                return Err(Error::ConeNotInFan(c.indices().to_vec()));
            }
            c.clone()
        }
        None => fan.max_cones()[0].clone(),
    };
    fan.star_subdivide(&sigma)
}

/// A named family member.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Family {
    Cpn { n: usize },
    Kleinschmidt { n: usize, a: Vec<i64> },
    SigmaA { a: i64 },
    DeltaAB { a: i64, b: i64 },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Cpn { .. } => "cpn",
            Family::Kleinschmidt { .. } => "kleinschmidt",
            Family::SigmaA { .. } => "sigma_a",
            Family::DeltaAB { .. } => "delta_ab",
        }
    }

    /// Integer parameters in command-line order.
    pub fn params(&self) -> Vec<i64> {
        match self {
            Family::Cpn { n } => vec![*n as i64],
            Family::Kleinschmidt { n, a } => std::iter::once(*n as i64)
                .chain(a.iter().copied())
                .collect(),
            Family::SigmaA { a } => vec![*a],
            Family::DeltaAB { a, b } => vec![*a, *b],
        }
    }

    /// Parses a family name with its parameters.
    pub fn parse(name: &str, params: &[i64]) -> Result<Family> {
        let arity = |k: usize| -> Result<()> {
            if params.len() == k {
                Ok(())
            } else {
                Err(Error::InvalidInput(format!(
                    "{name} takes {k} parameter(s), got {}",
                    params.len()
                )))
            }
        };
        let dim = |x: i64| -> Result<usize> {
            usize::try_from(x)
                .map_err(|_| Error::InvalidInput(format!("dimension {x} must be positive")))
        };
        match name {
            "cpn" => {
                arity(1)?;
                Ok(Family::Cpn { n: dim(params[0])? })
            }
            "kleinschmidt" => {
                if params.len() < 2 {
                    return Err(Error::InvalidInput(
                        "kleinschmidt takes n followed by a_1..a_r".into(),
                    ));
                }
                Ok(Family::Kleinschmidt {
                    n: dim(params[0])?,
                    a: params[1..].to_vec(),
                })
            }
            "sigma_a" => {
                arity(1)?;
                Ok(Family::SigmaA { a: params[0] })
            }
            "delta_ab" => {
                arity(2)?;
                Ok(Family::DeltaAB {
                    a: params[0],
                    b: params[1],
                })
            }
            other => Err(Error::InvalidInput(format!(
                "unknown family {other:?} (expected cpn, kleinschmidt, sigma_a, delta_ab)"
            ))),
        }
    }

    pub fn build(&self) -> Result<Fan> {
        match self {
            Family::Cpn { n } => cpn(*n),
            Family::Kleinschmidt { n, a } => kleinschmidt(*n, a),
            Family::SigmaA { a } => sigma_a(*a),
            Family::DeltaAB { a, b } => delta_ab(*a, *b),
        }
    }
}

/// A family member followed by a sequence of star subdivisions, each given
/// by the ray indices of the subdivided cone at that stage.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    pub family: Family,
    pub blowups: Vec<Cone>,
}

impl FamilySpec {
    pub fn new(family: Family) -> Self {
        FamilySpec {
            family,
            blowups: Vec::new(),
        }
    }

    pub fn build(&self) -> Result<Fan> {
        let mut fan = self.family.build()?;
        for c in &self.blowups {
            fan = fan.star_subdivide(c)?;
        }
        Ok(fan)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "family": self.family.name(),
            "params": self.family.params(),
            "blowups": self.blowups.iter().map(|c| c.indices().to_vec()).collect::<Vec<_>>(),
        })
    }
}

/// Multivariate polynomial with rational coefficients, keyed by exponent
/// vectors.
pub type Poly = BTreeMap<Vec<u32>, Rat>;

pub fn poly_eval(p: &Poly, x: &[i64]) -> Rat {
    p.iter()
        .map(|(e, c)| {
            let m: BigInt = e
                .iter()
                .zip(x)
                .map(|(&k, &xi)| BigInt::from(xi).pow(k))
                .product();
            c * Rat::from_integer(m)
        })
        .sum()
}

/// Chern numbers of the Kleinschmidt fans with `r` parameters, as exact
/// polynomials in `a_1, …, a_r` (one per partition, in partition order).
#[derive(Debug, Clone, PartialEq)]
pub struct ChernPolynomials {
    pub n: usize,
    pub r: usize,
    pub keys: Vec<Partition>,
    pub polys: Vec<Poly>,
}

impl ChernPolynomials {
    pub fn evaluate(&self, a: &[i64]) -> Vec<Rat> {
        self.polys.iter().map(|p| poly_eval(p, a)).collect()
    }

    /// Parameters that occur in some polynomial.
    pub fn active_vars(&self) -> Vec<usize> {
        (0..self.r)
            .filter(|&i| self.polys.iter().any(|p| p.keys().any(|e| e[i] > 0)))
            .collect()
    }
}

/// Interpolates the Chern numbers of `kleinschmidt_any(n, a)` by polynomials
/// of total degree at most `max_deg`, sampling the grid `[−s, s]^r` with
/// `s = max_deg / 2 + 1`. Returns `None` when the samples admit no such
/// polynomial or do not determine it.
pub fn fit_kleinschmidt_polynomials(
    n: usize,
    r: usize,
    max_deg: u32,
) -> Result<Option<ChernPolynomials>> {
    let exps: Vec<Vec<u32>> = (0..r)
        .map(|_| 0..=max_deg)
        .multi_cartesian_product()
        .filter(|e| e.iter().sum::<u32>() <= max_deg)
        .collect();
    let s = i64::from(max_deg / 2 + 1);
    let keys = partitions(n as u32);
    let mut systems: Vec<Vec<Vec<Rat>>> = vec![Vec::new(); keys.len()];
    for a in (0..r).map(|_| -s..=s).multi_cartesian_product() {
        let cv = chern_numbers(&kleinschmidt_any(n, &a)?)?;
        let row: Vec<Rat> = exps
            .iter()
            .map(|e| {
                let m: BigInt = e
                    .iter()
                    .zip(&a)
                    .map(|(&k, &x)| BigInt::from(x).pow(k))
                    .product();
                Rat::from_integer(m)
            })
            .collect();
        for (sys, key) in systems.iter_mut().zip(&keys) {
            let mut full = row.clone();
            full.push(rat(cv.get(key).expect("all partitions present")));
            sys.push(full);
        }
    }
    let m = exps.len();
    let order: Vec<usize> = (0..=m).collect();
    let mut polys = Vec::new();
    for sys in &systems {
        let (red, pivots) = rref(sys, &order);
        if pivots.contains(&m) || pivots.len() < m {
            return Ok(None);
        }
        let poly: Poly = pivots
            .iter()
            .zip(&red)
            .filter(|(_, row)| !row[m].is_zero())
            .map(|(&c, row)| (exps[c].clone(), row[m].clone()))
            .collect();
        polys.push(poly);
    }
    Ok(Some(ChernPolynomials { n, r, keys, polys }))
}
