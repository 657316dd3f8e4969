//! Truncated symmetric power series in finitely many formal roots.
//!
//! A symmetric series is stored by its coefficient on each monomial
//! `x^λ` with `λ` a partition; the coefficient of any permutation of `λ`
//! is the same. This keeps products cheap for the small numbers of roots
//! and degrees used here.

use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::linalg::{rat, Rat};
use crate::partition::{bounded_partitions, Partition};

#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricSeries {
    nvars: usize,
    max_deg: u32,
    terms: BTreeMap<Partition, Rat>,
}

impl SymmetricSeries {
    pub fn zero(nvars: usize, max_deg: u32) -> Self {
        SymmetricSeries {
            nvars,
            max_deg,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize, max_deg: u32) -> Self {
        Self::monomial_symmetric(nvars, max_deg, Partition::empty())
    }

    /// The monomial symmetric function `m_λ`.
    pub fn monomial_symmetric(nvars: usize, max_deg: u32, lambda: Partition) -> Self {
        let mut s = Self::zero(nvars, max_deg);
        if lambda.len() <= nvars && lambda.weight() <= max_deg {
            s.terms.insert(lambda, Rat::one());
        }
        s
    }

    /// The elementary symmetric polynomial `e_k`.
    pub fn elementary(nvars: usize, max_deg: u32, k: u32) -> Self {
        Self::monomial_symmetric(nvars, max_deg, Partition::new(vec![1; k as usize]))
    }

    /// Builds a series from its coefficient function on partitions.
    pub fn from_fn(nvars: usize, max_deg: u32, mut f: impl FnMut(&Partition) -> Rat) -> Self {
        let mut s = Self::zero(nvars, max_deg);
        for lambda in bounded_partitions(max_deg, nvars) {
            let c = f(&lambda);
            if !c.is_zero() {
                s.terms.insert(lambda, c);
            }
        }
        s
    }

    /// `∏_i g(x_i)` for a univariate series `g` given by its coefficients.
    pub fn multiplicative(nvars: usize, max_deg: u32, g: &[Rat]) -> Self {
        Self::from_fn(nvars, max_deg, |lambda| {
            let mut c = g[0].pow(nvars as i32 - lambda.len() as i32);
            for &p in lambda.parts() {
                c *= &g[p as usize];
            }
            c
        })
    }

    /// `σ_k(f(x_1), …, f(x_n))` for a univariate series `f` without
    /// constant term.
    pub fn elementary_of(nvars: usize, max_deg: u32, k: u32, f: &[Rat]) -> Self {
        assert!(f[0].is_zero(), "series must have zero constant term");
        Self::from_fn(nvars, max_deg, |lambda| {
            if lambda.len() != k as usize {
                return Rat::zero();
            }
            lambda
                .parts()
                .iter()
                .map(|&p| f[p as usize].clone())
                .product()
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn max_deg(&self) -> u32 {
        self.max_deg
    }

    pub fn terms(&self) -> &BTreeMap<Partition, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the monomial with the given exponents (any order).
    pub fn coeff(&self, exponents: &[u32]) -> Rat {
        self.terms
            .get(&Partition::new(exponents.to_vec()))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &Rat::one());
        out
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Rat) {
        debug_assert_eq!((self.nvars, self.max_deg), (other.nvars, other.max_deg));
        for (k, v) in &other.terms {
            let e = self.terms.entry(k.clone()).or_insert_with(Rat::zero);
            *e += v * c;
            if e.is_zero() {
                self.terms.remove(k);
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = Self::zero(self.nvars, self.max_deg);
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect();
        }
        out
    }

    /// Product truncated at the common maximal degree.
    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!((self.nvars, self.max_deg), (other.nvars, other.max_deg));
        let n = self.nvars;
        Self::from_fn(n, self.max_deg, |lambda| {
            let mut target = lambda.parts().to_vec();
            target.resize(n, 0);
            let mut acc = Rat::zero();
            for alpha in target.iter().map(|&t| 0..=t).multi_cartesian_product() {
                let a = self.coeff(&alpha);
                if a.is_zero() {
                    continue;
                }
                let beta: Vec<u32> = target.iter().zip(&alpha).map(|(t, x)| t - x).collect();
                let b = other.coeff(&beta);
                if !b.is_zero() {
                    acc += a * b;
                }
            }
            acc
        })
    }

    /// The homogeneous component of degree `d`.
    pub fn homogeneous(&self, d: u32) -> Self {
        let mut out = Self::zero(self.nvars, self.max_deg);
        out.terms = self
            .terms
            .iter()
            .filter(|(k, _)| k.weight() == d)
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        out
    }

    /// Rewrites the series in the elementary basis: returns coefficients
    /// `a_μ` with `self = Σ a_μ e_{μ_1} e_{μ_2} ⋯`.
    pub fn to_elementary(&self) -> BTreeMap<Partition, Rat> {
        let mut rest = self.clone();
        let mut cache: HashMap<Partition, SymmetricSeries> = HashMap::new();
        let mut out = BTreeMap::new();
        // The lex-largest monomial of e_{λ'} is x^λ with coefficient one,
        // so peeling off leading terms (largest degree first) terminates.
        while let Some(lead) = rest
            .terms
            .keys()
            .max_by(|a, b| a.weight().cmp(&b.weight()).then_with(|| a.cmp(b)))
            .cloned()
        {
            let c = rest.terms[&lead].clone();
            let mu = lead.conjugate();
            let prod = cache
                .entry(mu.clone())
                .or_insert_with(|| self.elementary_product(&mu))
                .clone();
            rest.add_scaled(&prod, &-c.clone());
            out.insert(mu, c);
        }
        out
    }

    fn elementary_product(&self, mu: &Partition) -> SymmetricSeries {
        mu.parts()
            .iter()
            .fold(Self::one(self.nvars, self.max_deg), |acc, &k| {
                acc.mul(&Self::elementary(self.nvars, self.max_deg, k))
            })
    }
}

fn factorial(k: u32) -> Rat {
    (1..=k).fold(Rat::one(), |acc, i| acc * rat(i as i64))
}

/// Coefficients of `e^x − 1` up to degree `d`.
pub fn exp_minus_one(d: u32) -> Vec<Rat> {
    (0..=d)
        .map(|k| {
            if k == 0 {
                Rat::zero()
            } else {
                factorial(k).recip()
            }
        })
        .collect()
}

/// Coefficients of `x / (1 − e^{−x})` up to degree `d`.
pub fn todd_series(d: u32) -> Vec<Rat> {
    // (1 − e^{−x}) / x = Σ (−1)^j x^j / (j+1)!
    let denom: Vec<Rat> = (0..=d)
        .map(|j| {
            let s = if j % 2 == 0 { Rat::one() } else { -Rat::one() };
            s / factorial(j + 1)
        })
        .collect();
    series_inverse(&denom)
}

/// Product of two univariate series truncated at the shorter length.
pub fn series_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let d = a.len().min(b.len());
    (0..d)
        .map(|k| (0..=k).fold(Rat::zero(), |acc, i| acc + &a[i] * &b[k - i]))
        .collect()
}

pub fn series_pow(a: &[Rat], k: u32) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len()];
    out[0] = Rat::one();
    for _ in 0..k {
        out = series_mul(&out, a);
    }
    out
}

/// Multiplicative inverse of a series with nonzero constant term.
pub fn series_inverse(a: &[Rat]) -> Vec<Rat> {
    let mut out: Vec<Rat> = Vec::with_capacity(a.len());
    let inv0 = a[0].recip();
    for k in 0..a.len() {
        if k == 0 {
            out.push(inv0.clone());
            continue;
        }
        let s = (1..=k).fold(Rat::zero(), |acc, i| acc + &a[i] * &out[k - i]);
        out.push(-s * &inv0);
    }
    out
}
