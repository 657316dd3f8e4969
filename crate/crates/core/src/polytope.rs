//! Lattice polytopes in H-representation.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fan::{Cone, Fan, Ray};
use crate::fourier_motzkin::{self, Feasibility, Inequality};
use crate::linalg::{self, rat, Rat};

/// The half-space `<normal, x> >= -offset`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
}

/// A full-dimensional bounded lattice polytope given by facet inequalities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeH {
    pub dim: usize,
    pub facets: Vec<Facet>,
}

/// A vertex and the facets it lies on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub point: Vec<Rat>,
    pub facets: Vec<usize>,
}

impl PolytopeH {
    pub fn new(dim: usize, facets: Vec<Facet>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidPolytope("dimension must be positive".into()));
        }
        for (i, f) in facets.iter().enumerate() {
            if f.normal.len() != dim {
                return Err(Error::InvalidPolytope(format!(
                    "facet {i} normal has wrong length"
                )));
            }
            if linalg::gcd_i64(&f.normal) != 1 {
                return Err(Error::InvalidPolytope(format!(
                    "facet {i} normal is not primitive"
                )));
            }
        }
        Ok(PolytopeH { dim, facets })
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let p: PolytopeH =
            serde_json::from_str(s).map_err(|e| Error::InvalidPolytope(e.to_string()))?;
        PolytopeH::new(p.dim, p.facets)
    }

    /// The standard simplex `x_i >= 0`, `Σ x_i <= k`.
    pub fn simplex(dim: usize, k: i64) -> Self {
        let mut facets: Vec<Facet> = (0..dim)
            .map(|i| Facet {
                normal: (0..dim).map(|j| i64::from(i == j)).collect(),
                offset: 0,
            })
            .collect();
        facets.push(Facet {
            normal: vec![-1; dim],
            offset: k,
        });
        PolytopeH { dim, facets }
    }

    /// The cube `[0, k]^dim`.
    pub fn cube(dim: usize, k: i64) -> Self {
        let mut facets = Vec::new();
        for i in 0..dim {
            let e: Vec<i64> = (0..dim).map(|j| i64::from(i == j)).collect();
            facets.push(Facet {
                normal: e.clone(),
                offset: 0,
            });
            facets.push(Facet {
                normal: e.iter().map(|x| -x).collect(),
                offset: k,
            });
        }
        PolytopeH { dim, facets }
    }

    fn slack(&self, facet: usize, x: &[Rat]) -> Rat {
        let f = &self.facets[facet];
        f.normal
            .iter()
            .zip(x)
            .fold(rat(f.offset), |acc, (a, b)| acc + rat(*a) * b)
    }

    fn normals_rank(&self) -> usize {
        let rows: Vec<Vec<Rat>> = self
            .facets
            .iter()
            .map(|f| f.normal.iter().map(|&x| rat(x)).collect())
            .collect();
        linalg::rank(&rows)
    }

    /// Bounded iff no nonzero `d` has `<a_j, d> >= 0` for all facets.
    fn is_bounded(&self) -> Result<bool> {
        if self.normals_rank() < self.dim {
            return Ok(false);
        }
        let mut sys: Vec<Inequality> = self
            .facets
            .iter()
            .map(|f| {
                Inequality::new(
                    f.normal.iter().map(|&x| BigInt::from(x)).collect(),
                    Rat::zero(),
                )
            })
            .collect();
        let total: Vec<BigInt> = (0..self.dim)
            .map(|k| BigInt::from(self.facets.iter().map(|f| f.normal[k]).sum::<i64>()))
            .collect();
        sys.push(Inequality::new(total, Rat::one()));
        let f = fourier_motzkin::feasible(&sys, self.dim, crate::fan::DEFAULT_FM_BUDGET)?;
        Ok(f == Feasibility::Infeasible)
    }

    /// Vertices by enumerating `n`-subsets of facets with invertible normal
    /// matrix and keeping the feasible solutions.
    pub fn vertices(&self) -> Result<Vec<Vertex>> {
        let n = self.dim;
        if !self.is_bounded()? {
            return Err(Error::Unbounded);
        }
        let mut points: BTreeSet<Vec<Rat>> = BTreeSet::new();
        for subset in (0..self.facets.len()).combinations(n) {
            let m: Vec<Vec<Rat>> = subset
                .iter()
                .map(|&i| self.facets[i].normal.iter().map(|&x| rat(x)).collect())
                .collect();
            let rhs: Vec<Rat> = subset
                .iter()
                .map(|&i| rat(-self.facets[i].offset))
                .collect();
            let Some(x) = linalg::solve(&m, &rhs) else {
                continue;
            };
            if (0..self.facets.len()).all(|j| !self.slack(j, &x).is_negative()) {
                points.insert(x);
            }
        }
        if points.is_empty() {
            return Err(Error::Degenerate("polytope is empty".into()));
        }
        let vertices: Vec<Vertex> = points
            .into_iter()
            .map(|p| {
                let facets = (0..self.facets.len())
                    .filter(|&j| self.slack(j, &p).is_zero())
                    .collect();
                Vertex { point: p, facets }
            })
            .collect();
        let diffs: Vec<Vec<Rat>> = vertices[1..]
            .iter()
            .map(|v| {
                v.point
                    .iter()
                    .zip(&vertices[0].point)
                    .map(|(a, b)| a - b)
                    .collect()
            })
            .collect();
        if diffs.is_empty() || linalg::rank(&diffs) < n {
            return Err(Error::Degenerate(
                "vertices do not span the ambient space".into(),
            ));
        }
        for j in 0..self.facets.len() {
            let on: Vec<&Vertex> = vertices.iter().filter(|v| v.facets.contains(&j)).collect();
            let affine_rank = if on.is_empty() {
                0
            } else {
                let d: Vec<Vec<Rat>> = on[1..]
                    .iter()
                    .map(|v| {
                        v.point
                            .iter()
                            .zip(&on[0].point)
                            .map(|(a, b)| a - b)
                            .collect()
                    })
                    .collect();
                if d.is_empty() {
                    0
                } else {
                    linalg::rank(&d)
                }
            };
            if on.len() < n || affine_rank + 1 < n {
                return Err(Error::InvalidPolytope(format!("facet {j} is redundant")));
            }
        }
        Ok(vertices)
    }

    pub fn is_simple(&self) -> Result<bool> {
        Ok(self.vertices()?.iter().all(|v| v.facets.len() == self.dim))
    }

    /// Primitive integer edge directions leaving a simple vertex, one per
    /// incident facet (moving off that facet).
    fn edge_directions(&self, v: &Vertex) -> Vec<Vec<BigInt>> {
        let m: Vec<Vec<Rat>> = v
            .facets
            .iter()
            .map(|&i| self.facets[i].normal.iter().map(|&x| rat(x)).collect())
            .collect();
        let inv = linalg::inverse(&m).expect("simple vertex has independent normals");
        (0..self.dim)
            .map(|col| {
                let d: Vec<Rat> = inv.iter().map(|row| row[col].clone()).collect();
                linalg::primitive_integer(&d)
            })
            .collect()
    }

    /// Simple, and the primitive edge directions at each vertex form a
    /// lattice basis.
    pub fn is_smooth(&self) -> Result<bool> {
        let verts = self.vertices()?;
        if verts.iter().any(|v| v.facets.len() != self.dim) {
            return Ok(false);
        }
        for v in &verts {
            let dirs = self.edge_directions(v);
            let rows: Vec<Vec<i64>> = dirs
                .iter()
                .map(|d| {
                    d.iter()
                        .map(|x| x.to_i64().expect("edge entries fit in i64"))
                        .collect()
                })
                .collect();
            if !linalg::det_int(&rows).abs().is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn simple_vertices(&self) -> Result<Vec<Vertex>> {
        let verts = self.vertices()?;
        if let Some(i) = verts.iter().position(|v| v.facets.len() != self.dim) {
            return Err(Error::NotSimple(i));
        }
        Ok(verts)
    }

    /// Normal fan: rays are the inward normals, maximal cones are the facet
    /// sets of the vertices.
    pub fn normal_fan(&self) -> Result<Fan> {
        let verts = self.simple_vertices()?;
        let rays = self
            .facets
            .iter()
            .map(|f| Ray::new(f.normal.clone()))
            .collect();
        let cones = verts.iter().map(|v| Cone::new(v.facets.clone())).collect();
        Fan::new(self.dim, rays, cones)
    }

    /// The default probe `(1, M, M², …)` with `M` one more than the largest
    /// edge-vector entry.
    pub fn default_probe(&self) -> Result<Vec<i64>> {
        let verts = self.simple_vertices()?;
        let mut max = BigInt::zero();
        for v in &verts {
            for d in self.edge_directions(v) {
                for x in d {
                    if x.abs() > max {
                        max = x.abs();
                    }
                }
            }
        }
        let m = (max + BigInt::one())
            .to_i64()
            .expect("probe base fits in i64");
        Ok((0..self.dim as u32).map(|k| m.pow(k)).collect())
    }

    /// h-vector from vertex indices: orient each edge toward larger `<ν, ·>`;
    /// `h_{n-q}` counts vertices with `q` incoming edges.
    pub fn h_vector_by_index(&self, nu: &[i64]) -> Result<Vec<i64>> {
        if nu.len() != self.dim {
            return Err(Error::InvalidInput("probe has the wrong length".into()));
        }
        let verts = self.simple_vertices()?;
        let mut h = vec![0i64; self.dim + 1];
        for (vi, v) in verts.iter().enumerate() {
            let mut incoming = 0;
            for d in self.edge_directions(v) {
                let s: BigInt = d.iter().zip(nu).map(|(a, &b)| a * BigInt::from(b)).sum();
                if s.is_zero() {
                    return Err(Error::NuDegenerate(vi));
                }
                if s.is_negative() {
                    incoming += 1;
                }
            }
            h[self.dim - incoming] += 1;
        }
        Ok(h)
    }
}
