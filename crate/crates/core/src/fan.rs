//! Complete simplicial fans with primitive integer rays.
//!
//! A [`Fan`] stores its rays and its maximal cones as sorted index sets. Cones
//! of lower dimension are implicit: every subset of a maximal cone is a cone.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourier_motzkin::{self, Feasibility, Inequality};
use crate::linalg::{self, rat, Rat};

pub const MAX_DIM: usize = 6;
pub const MAX_RAYS: usize = 64;
pub const MAX_CONES: usize = 4096;

/// Default row budget for the projectivity elimination.
pub const DEFAULT_FM_BUDGET: usize = 200_000;

/// A primitive integer vector generating a one-dimensional cone.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Ray(Vec<i64>);

impl Ray {
    pub fn new(coords: Vec<i64>) -> Self {
        Ray(coords)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_primitive(&self) -> bool {
        linalg::gcd_i64(&self.0) == 1
    }

    fn primitive(&self) -> Ray {
        let g = linalg::gcd_i64(&self.0);
        if g <= 1 {
            self.clone()
        } else {
            Ray(self.0.iter().map(|x| x / g).collect())
        }
    }
}

impl fmt::Display for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

/// A simplicial cone, given by the sorted indices of its rays.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cone(Vec<usize>);

impl Cone {
    pub fn new(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        Cone(indices)
    }

    pub fn zero() -> Self {
        Cone(Vec::new())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, ray: usize) -> bool {
        self.0.binary_search(&ray).is_ok()
    }

    pub fn is_face_of(&self, other: &Cone) -> bool {
        self.0.iter().all(|i| other.contains(*i))
    }

    fn without(&self, ray: usize) -> Cone {
        Cone(self.0.iter().copied().filter(|&i| i != ray).collect())
    }

    fn with(&self, ray: usize) -> Cone {
        Cone::new(self.0.iter().copied().chain([ray]).collect())
    }
}

impl From<Vec<usize>> for Cone {
    fn from(v: Vec<usize>) -> Self {
        Cone::new(v)
    }
}

/// JSON interchange form: `{"dim": n, "rays": [[..]..], "max_cones": [[..]..]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FanJson {
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
}

/// A simplicial fan whose maximal cones all have dimension `dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    dim: usize,
    rays: Vec<Ray>,
    max_cones: Vec<Cone>,
}

/// A codimension-one cone shared by exactly two maximal cones.
#[derive(Debug, Clone)]
struct Wall {
    /// the ray of the first cone not on the wall
    a: usize,
    /// the ray of the second cone not on the wall
    b: usize,
    /// coordinates of `v_b` in the basis of the first cone, indexed like it
    coords: Vec<(usize, Rat)>,
}

impl Fan {
    /// Validates and canonicalizes a fan. Non-primitive rays are divided by
    /// their content (with a warning); cones are sorted.
    pub fn new(dim: usize, rays: Vec<Ray>, max_cones: Vec<Cone>) -> Result<Fan> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::InvalidFan(format!(
                "dimension {dim} outside 1..={MAX_DIM}"
            )));
        }
        if rays.len() > MAX_RAYS || max_cones.len() > MAX_CONES {
            return Err(Error::InvalidFan(format!(
                "{} rays / {} cones exceed the desk-scale bounds ({MAX_RAYS}/{MAX_CONES})",
                rays.len(),
                max_cones.len()
            )));
        }
        let mut normalized = Vec::with_capacity(rays.len());
        for (i, r) in rays.into_iter().enumerate() {
            if r.0.len() != dim {
                return Err(Error::InvalidFan(format!(
                    "ray {i} has length {}, expected {dim}",
                    r.0.len()
                )));
            }
            if r.0.iter().all(|&x| x == 0) {
                return Err(Error::InvalidFan(format!("ray {i} is zero")));
            }
            if !r.is_primitive() {
                log::warn!("ray {i} {r} is not primitive; dividing by its content");
            }
            normalized.push(r.primitive());
        }
        if normalized.iter().collect::<BTreeSet<_>>().len() != normalized.len() {
            return Err(Error::InvalidFan("duplicate rays".into()));
        }
        let mut used = vec![false; normalized.len()];
        let mut cones = Vec::with_capacity(max_cones.len());
        for c in max_cones {
            let raw_len = c.0.len();
            let c = Cone::new(c.0);
            if c.dim() != dim || raw_len != dim {
                return Err(Error::InvalidFan(format!(
                    "maximal cone {:?} must have exactly {dim} distinct rays",
                    c.0
                )));
            }
            if let Some(&bad) = c.0.iter().find(|&&i| i >= normalized.len()) {
                return Err(Error::InvalidFan(format!("ray index {bad} out of bounds")));
            }
            let rows: Vec<Vec<i64>> = c.0.iter().map(|&i| normalized[i].0.clone()).collect();
            if linalg::det_int(&rows).is_zero() {
                return Err(Error::InvalidFan(format!(
                    "cone {:?} is not full-dimensional",
                    c.0
                )));
            }
            for &i in &c.0 {
                used[i] = true;
            }
            cones.push(c);
        }
        if let Some(unused) = used.iter().position(|u| !u) {
            return Err(Error::InvalidFan(format!(
                "ray {unused} lies in no maximal cone"
            )));
        }
        cones.sort();
        if cones.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidFan("duplicate maximal cones".into()));
        }
        Ok(Fan {
            dim,
            rays: normalized,
            max_cones: cones,
        })
    }

    pub fn from_coords(dim: usize, rays: &[Vec<i64>], cones: &[Vec<usize>]) -> Result<Fan> {
        Fan::new(
            dim,
            rays.iter().cloned().map(Ray::new).collect(),
            cones.iter().cloned().map(Cone::new).collect(),
        )
    }

    pub fn from_json(json: &FanJson) -> Result<Fan> {
        Fan::from_coords(json.dim, &json.rays, &json.max_cones)
    }

    pub fn from_json_str(s: &str) -> Result<Fan> {
        let j: FanJson = serde_json::from_str(s).map_err(|e| Error::InvalidFan(e.to_string()))?;
        Fan::from_json(&j)
    }

    /// Canonical interchange form (cones sorted lexicographically).
    pub fn to_json(&self) -> FanJson {
        FanJson {
            dim: self.dim,
            rays: self.rays.iter().map(|r| r.0.clone()).collect(),
            max_cones: self.max_cones.iter().map(|c| c.0.clone()).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &Ray {
        &self.rays[i]
    }

    pub fn max_cones(&self) -> &[Cone] {
        &self.max_cones
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    fn cone_rows(&self, cone: &Cone) -> Vec<Vec<i64>> {
        cone.0.iter().map(|&i| self.rays[i].0.clone()).collect()
    }

    pub fn cone_det(&self, cone: &Cone) -> BigInt {
        linalg::det_int(&self.cone_rows(cone))
    }

    /// Rows `u_i` with `<u_i, v_j> = δ_ij` for the rays `v_j` of a maximal
    /// cone, ordered like the cone's indices.
    pub fn dual_basis(&self, cone: &Cone) -> Vec<Vec<Rat>> {
        // V has the rays as columns; its inverse has the dual basis as rows.
        let n = self.dim;
        let cols = self.cone_rows(cone);
        let v: Vec<Vec<Rat>> = (0..n)
            .map(|r| (0..n).map(|c| rat(cols[c][r])).collect())
            .collect();
        linalg::inverse(&v).expect("maximal cones are full-dimensional")
    }

    /// Coordinates of an arbitrary vector in the basis of a maximal cone.
    fn coords_in(&self, cone: &Cone, p: &[Rat]) -> Vec<Rat> {
        let dual = self.dual_basis(cone);
        linalg::mat_vec(&dual, p)
    }

    pub fn is_regular(&self) -> bool {
        self.max_cones
            .iter()
            .all(|c| self.cone_det(c).abs().is_one())
    }

    /// Whether `tau` is a cone of the fan (a face of some maximal cone).
    pub fn contains_cone(&self, tau: &Cone) -> bool {
        tau.0.iter().all(|&i| i < self.rays.len())
            && self.max_cones.iter().any(|c| tau.is_face_of(c))
    }

    /// All cones grouped by dimension `0..=dim`; each group sorted.
    pub fn all_cones(&self) -> Vec<Vec<Cone>> {
        let mut by_dim: Vec<BTreeSet<Cone>> = vec![BTreeSet::new(); self.dim + 1];
        for c in &self.max_cones {
            for k in 0..=self.dim {
                for sub in c.0.iter().copied().combinations(k) {
                    by_dim[k].insert(Cone(sub));
                }
            }
        }
        by_dim
            .into_iter()
            .map(|s| s.into_iter().collect())
            .collect()
    }

    /// `(f_0, …, f_{n-1})` with `f_k` the number of `(k+1)`-dimensional cones.
    pub fn face_count_vector(&self) -> Vec<i64> {
        self.all_cones()
            .iter()
            .skip(1)
            .map(|g| g.len() as i64)
            .collect()
    }

    /// Maximal cones containing `tau`.
    pub fn star(&self, tau: &Cone) -> Vec<&Cone> {
        self.max_cones
            .iter()
            .filter(|c| tau.is_face_of(c))
            .collect()
    }

    /// Every cone contained in a cone that contains `tau`, sorted by
    /// dimension and then lexicographically.
    pub fn closed_star(&self, tau: &Cone) -> Result<Vec<Cone>> {
        if !self.contains_cone(tau) {
            return Err(Error::ConeNotInFan(tau.0.clone()));
        }
        let mut out = BTreeSet::new();
        for c in self.star(tau) {
            for k in 0..=self.dim {
                for sub in c.0.iter().copied().combinations(k) {
                    out.insert(Cone(sub));
                }
            }
        }
        let mut v: Vec<Cone> = out.into_iter().collect();
        v.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.cmp(b)));
        Ok(v)
    }

    /// Regular star subdivision at `tau`: inserts the ray equal to the sum of
    /// `tau`'s rays and replaces each maximal cone `σ ⊇ τ` by the cones
    /// `σ \ {t} ∪ {x}` for `t ∈ τ`. The new ray gets the last index.
    pub fn star_subdivide(&self, tau: &Cone) -> Result<Fan> {
        if !self.contains_cone(tau) {
            return Err(Error::ConeNotInFan(tau.0.clone()));
        }
        if tau.dim() < 2 {
            return Err(Error::DimTooSmall(tau.dim()));
        }
        let sum: Vec<i64> = (0..self.dim)
            .map(|k| tau.0.iter().map(|&i| self.rays[i].0[k]).sum())
            .collect();
        let x = Ray(sum).primitive();
        if self.rays.contains(&x) {
            return Err(Error::InvalidFan(format!(
                "subdivision ray {x} already present"
            )));
        }
        let xi = self.rays.len();
        let mut rays = self.rays.clone();
        rays.push(x);
        let mut cones = Vec::with_capacity(self.max_cones.len() + tau.dim());
        for c in &self.max_cones {
            if tau.is_face_of(c) {
                for &t in &tau.0 {
                    cones.push(c.without(t).with(xi));
                }
            } else {
                cones.push(c.clone());
            }
        }
        Fan::new(self.dim, rays, cones)
    }

    /// Codimension-one faces mapped to the maximal cones containing them.
    fn facet_incidence(&self) -> BTreeMap<Cone, Vec<usize>> {
        let mut map: BTreeMap<Cone, Vec<usize>> = BTreeMap::new();
        for (ci, c) in self.max_cones.iter().enumerate() {
            for &r in &c.0 {
                map.entry(c.without(r)).or_default().push(ci);
            }
        }
        map
    }

    /// Walls with their linear relations, or `None` if some codimension-one
    /// face does not lie in exactly two maximal cones.
    fn walls(&self) -> Option<Vec<Wall>> {
        let mut walls = Vec::new();
        for (face, cones) in self.facet_incidence() {
            if cones.len() != 2 {
                return None;
            }
            let s = &self.max_cones[cones[0]];
            let t = &self.max_cones[cones[1]];
            let a =
                *s.0.iter()
                    .find(|i| !face.contains(**i))
                    .expect("one extra ray");
            let b =
                *t.0.iter()
                    .find(|i| !face.contains(**i))
                    .expect("one extra ray");
            let vb: Vec<Rat> = self.rays[b].0.iter().map(|&x| rat(x)).collect();
            let lam = self.coords_in(s, &vb);
            walls.push(Wall {
                a,
                b,
                coords: s.0.iter().copied().zip(lam).collect(),
            });
        }
        Some(walls)
    }

    fn adjacency_connected(&self) -> bool {
        let inc = self.facet_incidence();
        let mut adj: HashMap<usize, Vec<usize>> = HashMap::new();
        for cones in inc.values() {
            for (&p, &q) in cones.iter().tuple_combinations() {
                adj.entry(p).or_default().push(q);
                adj.entry(q).or_default().push(p);
            }
        }
        let mut seen = vec![false; self.max_cones.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(c) = queue.pop_front() {
            for &d in adj.get(&c).into_iter().flatten() {
                if !seen[d] {
                    seen[d] = true;
                    queue.push_back(d);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Maximal cones containing `p`, and those containing it in their interior.
    fn locate(&self, p: &[Rat]) -> (Vec<usize>, Vec<usize>) {
        let mut closed = Vec::new();
        let mut open = Vec::new();
        for (ci, c) in self.max_cones.iter().enumerate() {
            let lam = self.coords_in(c, p);
            if lam.iter().all(|x| !x.is_negative()) {
                closed.push(ci);
                if lam.iter().all(|x| x.is_positive()) {
                    open.push(ci);
                }
            }
        }
        (closed, open)
    }

    /// A point on the moment curve `(1, M, M², …)` off every cone hyperplane.
    fn generic_point(&self) -> Vec<Rat> {
        let duals: Vec<Vec<Vec<Rat>>> = self.max_cones.iter().map(|c| self.dual_basis(c)).collect();
        let mut m: i64 = 2;
        loop {
            let p: Vec<Rat> = (0..self.dim as u32)
                .map(|k| Rat::from_integer(BigInt::from(m).pow(k)))
                .collect();
            let generic = duals
                .iter()
                .all(|d| linalg::mat_vec(d, &p).iter().all(|x| !x.is_zero()));
            if generic {
                return p;
            }
            m += 1;
        }
    }

    /// Whether the cones cover `ℝⁿ`. Checks: every codimension-one face lies in
    /// exactly two maximal cones lying on opposite sides of it; the adjacency
    /// graph is connected; a generic point lies in exactly one maximal cone;
    /// and points next to each ray are covered.
    pub fn is_complete(&self) -> Result<bool> {
        if self.dim == 1 {
            let signs: BTreeSet<i64> = self
                .max_cones
                .iter()
                .map(|c| self.rays[c.0[0]].0[0].signum())
                .collect();
            return Ok(signs.len() == 2);
        }
        let Some(walls) = self.walls() else {
            return Ok(false);
        };
        for w in &walls {
            let la = &w
                .coords
                .iter()
                .find(|(i, _)| *i == w.a)
                .expect("a in cone")
                .1;
            if la.is_positive() {
                return Err(Error::RejectNonSimplicial(format!(
                    "cones through rays {} and {} lie on the same side of their common wall",
                    w.a, w.b
                )));
            }
        }
        if !self.adjacency_connected() {
            return Ok(false);
        }
        let g = self.generic_point();
        let (closed, open) = self.locate(&g);
        if open.len() > 1 {
            return Err(Error::RejectNonSimplicial(format!(
                "generic point lies in the interiors of cones {open:?}"
            )));
        }
        if closed.len() != 1 {
            return Ok(false);
        }
        for r in &self.rays {
            for k in 0..self.dim {
                for s in [1i64, -1] {
                    let p: Vec<Rat> =
                        r.0.iter()
                            .enumerate()
                            .map(|(i, &x)| rat(2 * x + if i == k { s } else { 0 }))
                            .collect();
                    let (closed, open) = self.locate(&p);
                    if closed.is_empty() {
                        return Ok(false);
                    }
                    if open.len() > 1 {
                        return Err(Error::RejectNonSimplicial(format!(
                            "probe near ray {r} lies in the interiors of cones {open:?}"
                        )));
                    }
                }
            }
        }
        Ok(true)
    }

    /// Whether some strictly convex piecewise-linear support function exists,
    /// i.e. the fan is the normal fan of a polytope. Requires a complete fan.
    pub fn is_projective(&self) -> Result<bool> {
        self.is_projective_with_budget(DEFAULT_FM_BUDGET)
    }

    pub fn is_projective_with_budget(&self, budget: usize) -> Result<bool> {
        let walls = self
            .walls()
            .ok_or_else(|| Error::Precondition("is_projective requires a complete fan".into()))?;
        // heights of the first maximal cone's rays are fixed to zero
        let fixed = &self.max_cones[0];
        let var_of: Vec<Option<usize>> = {
            let mut next = 0;
            (0..self.rays.len())
                .map(|i| {
                    if fixed.contains(i) {
                        None
                    } else {
                        next += 1;
                        Some(next - 1)
                    }
                })
                .collect()
        };
        let nvars = self.rays.len() - self.dim;
        let mut system = Vec::with_capacity(walls.len());
        for w in &walls {
            // v_b - λ_a v_a - Σ_τ λ_k v_k = 0 with -λ_a > 0; concavity of the
            // support function across the wall reads h_b - λ_a h_a - Σ λ_k h_k >= 1.
            let mut row = vec![Rat::zero(); self.rays.len()];
            row[w.b] += Rat::one();
            for (i, lam) in &w.coords {
                row[*i] -= lam;
            }
            let lcm = row.iter().fold(BigInt::one(), |acc, x| {
                num_integer::lcm(acc, x.denom().clone())
            });
            let mut coeffs = vec![BigInt::zero(); nvars];
            for (i, x) in row.iter().enumerate() {
                if let Some(v) = var_of[i] {
                    coeffs[v] = (x * Rat::from_integer(lcm.clone())).to_integer();
                }
            }
            system.push(Inequality::new(coeffs, Rat::from_integer(lcm)));
        }
        Ok(fourier_motzkin::feasible(&system, nvars, budget)? == Feasibility::Feasible)
    }

    /// Fan equality up to a permutation of the rays.
    pub fn same_up_to_ray_order(&self, other: &Fan) -> bool {
        if self.dim != other.dim
            || self.rays.len() != other.rays.len()
            || self.max_cones.len() != other.max_cones.len()
        {
            return false;
        }
        let as_sets = |f: &Fan| -> BTreeSet<BTreeSet<Ray>> {
            f.max_cones
                .iter()
                .map(|c| c.0.iter().map(|&i| f.rays[i].clone()).collect())
                .collect()
        };
        as_sets(self) == as_sets(other)
    }

    /// Index of a ray with the given coordinates.
    pub fn ray_index(&self, coords: &[i64]) -> Option<usize> {
        self.rays.iter().position(|r| r.0 == coords)
    }

    /// Minimal subsets of rays that span no cone (generators of the
    /// Stanley–Reisner ideal), sorted by size then lexicographically.
    pub fn minimal_nonfaces(&self) -> Vec<Cone> {
        let faces: BTreeSet<Cone> = self.all_cones().into_iter().flatten().collect();
        let m = self.rays.len();
        let mut out = Vec::new();
        // a minimal non-face has at most dim+1 elements
        for k in 2..=(self.dim + 1).min(m) {
            for sub in (0..m).combinations(k) {
                let c = Cone(sub);
                if faces.contains(&c) {
                    continue;
                }
                if c.0.iter().all(|&r| faces.contains(&c.without(r))) {
                    out.push(c);
                }
            }
        }
        out
    }

    /// Joins this fan with another living in complementary coordinates:
    /// rays are padded with zeros and maximal cones are all unions.
    pub fn join(&self, other: &Fan) -> Result<Fan> {
        let dim = self.dim + other.dim;
        let mut rays: Vec<Ray> = self
            .rays
            .iter()
            .map(|r| {
                Ray(r
                    .0
                    .iter()
                    .copied()
                    .chain(std::iter::repeat_n(0, other.dim))
                    .collect())
            })
            .collect();
        let off = rays.len();
        rays.extend(other.rays.iter().map(|r| {
            Ray(std::iter::repeat_n(0, self.dim)
                .chain(r.0.iter().copied())
                .collect())
        }));
        let cones = self
            .max_cones
            .iter()
            .cartesian_product(other.max_cones.iter())
            .map(|(a, b)| {
                Cone::new(
                    a.0.iter()
                        .copied()
                        .chain(b.0.iter().map(|i| i + off))
                        .collect(),
                )
            })
            .collect();
        Fan::new(dim, rays, cones)
    }

    /// Replaces the coordinates of one ray, keeping the combinatorics.
    pub fn with_ray(&self, index: usize, coords: Vec<i64>) -> Result<Fan> {
        let mut rays = self.rays.clone();
        rays[index] = Ray(coords);
        Fan::new(self.dim, rays, self.max_cones.clone())
    }
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

    fn cp3() -> Fan {
        Fan::from_coords(
            3,
            &[
                vec![1, 0, 0],
                vec![0, 1, 0],
                vec![0, 0, 1],
                vec![-1, -1, -1],
            ],
            &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
        )
        .unwrap()
    }

    #[test]
    fn regularity() {
        assert!(cp3().is_regular());
        let f = Fan::from_coords(2, &[vec![1, 0], vec![1, 2]], &[vec![0, 1]]).unwrap();
        assert!(!f.is_regular());
    }

    #[test]
    fn completeness_of_projective_plane() {
        assert!(cp2().is_complete().unwrap());
        let partial = Fan::from_coords(
            2,
            &[vec![1, 0], vec![0, 1], vec![-1, -1]],
            &[vec![0, 1], vec![1, 2]],
        )
        .unwrap();
        assert!(!partial.is_complete().unwrap());
    }

    #[test]
    fn overlapping_cones_are_rejected() {
        // the cones {e1,e2} and {e1,(1,1)} lie on the same side of e1
        let f = Fan::from_coords(
            2,
            &[vec![1, 0], vec![0, 1], vec![1, 1], vec![-1, 0], vec![0, -1]],
            &[vec![0, 1], vec![0, 2], vec![1, 3], vec![3, 4], vec![2, 4]],
        )
        .unwrap();
        assert!(matches!(
            f.is_complete(),
            Err(Error::RejectNonSimplicial(_))
        ));
    }

    #[test]
    fn double_cover_of_circle_is_rejected() {
        // five rays 144 degrees apart wind twice around the origin
        let rays = vec![
            vec![1, 0],
            vec![-4, 3],
            vec![1, -3],
            vec![1, 3],
            vec![-4, -3],
        ];
        let cones = vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4], vec![0, 4]];
        let f = Fan::from_coords(2, &rays, &cones).unwrap();
        assert!(matches!(
            f.is_complete(),
            Err(Error::RejectNonSimplicial(_))
        ));
    }

    #[test]
    fn cone_counts() {
        let counts: Vec<usize> = cp2().all_cones().iter().map(|g| g.len()).collect();
        assert_eq!(counts, vec![1, 3, 3]);
        let counts: Vec<usize> = cp3().all_cones().iter().map(|g| g.len()).collect();
        assert_eq!(counts, vec![1, 4, 6, 4]);
        assert_eq!(cp3().face_count_vector(), vec![4, 6, 4]);
    }

    #[test]
    fn closed_stars() {
        let f = cp3();
        let max = Cone::new(vec![0, 1, 2]);
        let cs = f.closed_star(&max).unwrap();
        assert_eq!(cs.len(), 8);
        assert!(cs.iter().all(|c| c.is_face_of(&max)));
        let edge = Cone::new(vec![2, 3]);
        let cs = f.closed_star(&edge).unwrap();
        // faces of {0,2,3} and {1,2,3}: 8 + 8 - 4 shared (subsets of {2,3})
        assert_eq!(cs.len(), 12);
        assert_eq!(f.closed_star(&Cone::zero()).unwrap().len(), 15);
        assert!(matches!(
            f.closed_star(&Cone::new(vec![0, 9])),
            Err(Error::ConeNotInFan(_))
        ));
    }

    #[test]
    fn subdivide_vertex_of_cp3() {
        let f = cp3().star_subdivide(&Cone::new(vec![0, 1, 2])).unwrap();
        assert_eq!(f.ray(4).coords(), &[1, 1, 1]);
        assert_eq!(f.max_cones().len(), 6);
        assert!(f.is_regular());
        assert!(f.is_complete().unwrap());
        assert!(matches!(
            cp3().star_subdivide(&Cone::new(vec![1])),
            Err(Error::DimTooSmall(1))
        ));
    }

    #[test]
    fn projectivity() {
        assert!(cp2().is_projective().unwrap());
        assert!(cp3().is_projective().unwrap());
    }

    #[test]
    fn non_primitive_rays_are_normalized() {
        let f = Fan::from_coords(1, &[vec![3], vec![-2]], &[vec![0], vec![1]]).unwrap();
        assert_eq!(f.ray(0).coords(), &[1]);
        assert_eq!(f.ray(1).coords(), &[-1]);
        assert!(f.is_complete().unwrap());
    }

    #[test]
    fn invalid_fans() {
        assert!(Fan::from_coords(2, &[vec![1, 0], vec![1, 0]], &[vec![0, 1]]).is_err());
        assert!(Fan::from_coords(2, &[vec![1, 0], vec![2, 0]], &[vec![0, 1]]).is_err());
        assert!(Fan::from_coords(2, &[vec![1, 0], vec![0, 1], vec![1, 1]], &[vec![0, 1]]).is_err());
        assert!(Fan::from_coords(2, &[vec![1, 0], vec![0, 1]], &[vec![0, 1], vec![1, 0]]).is_err());
    }

    #[test]
    fn json_is_canonical() {
        let f = Fan::from_json_str(
            r#"{"dim":2,"rays":[[1,0],[0,1],[-1,-1]],"max_cones":[[2,1],[0,2],[1,0]]}"#,
        )
        .unwrap();
        let s = serde_json::to_string(&f.to_json()).unwrap();
        assert_eq!(
            s,
            r#"{"dim":2,"rays":[[1,0],[0,1],[-1,-1]],"max_cones":[[0,1],[0,2],[1,2]]}"#
        );
    }
}
