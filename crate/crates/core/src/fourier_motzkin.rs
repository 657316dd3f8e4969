//! Exact feasibility of systems `A h >= b` by Fourier–Motzkin elimination.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::Rat;

/// One inequality `coeffs · h >= rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Inequality {
    pub coeffs: Vec<BigInt>,
    pub rhs: Rat,
}

impl Inequality {
    pub fn new(coeffs: Vec<BigInt>, rhs: Rat) -> Self {
        Inequality { coeffs, rhs }
    }

    /// Divides out the content of the coefficient vector.
    fn normalized(mut self) -> Self {
        let g = self.coeffs.iter().fold(BigInt::zero(), |a, x| a.gcd(x));
        if !g.is_zero() && !g.is_one() {
            for c in self.coeffs.iter_mut() {
                *c = &*c / &g;
            }
            self.rhs = &self.rhs / Rat::from_integer(g);
        }
        self
    }
}

/// Outcome of an elimination run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Feasibility {
    Feasible,
    Infeasible,
}

/// Decides whether the system has a rational solution. `budget` caps the
/// number of rows alive at any time.
pub fn feasible(system: &[Inequality], nvars: usize, budget: usize) -> Result<Feasibility> {
    let mut rows: Vec<Inequality> = Vec::new();
    let mut alive = vec![true; nvars];
    push_all(&mut rows, system.iter().cloned())?;
    if rows.iter().any(contradiction) {
        return Ok(Feasibility::Infeasible);
    }
    for _ in 0..nvars {
        // pick the variable with the smallest pos*neg product
        let mut best: Option<(usize, usize)> = None;
        for v in (0..nvars).filter(|&v| alive[v]) {
            let pos = rows.iter().filter(|r| r.coeffs[v].is_positive()).count();
            let neg = rows.iter().filter(|r| r.coeffs[v].is_negative()).count();
            let cost = pos * neg;
            if best.is_none_or(|(_, c)| cost < c) {
                best = Some((v, cost));
            }
        }
        let Some((v, cost)) = best else { break };
        if rows.len() + cost > budget {
            return Err(Error::SizeLimit {
                rows: rows.len() + cost,
                budget,
            });
        }
        alive[v] = false;
        let (pos, rest): (Vec<_>, Vec<_>) =
            rows.into_iter().partition(|r| r.coeffs[v].is_positive());
        let (neg, zero): (Vec<_>, Vec<_>) =
            rest.into_iter().partition(|r| r.coeffs[v].is_negative());
        let mut next = zero;
        let mut combos = Vec::with_capacity(pos.len() * neg.len());
        for p in &pos {
            for q in &neg {
                let a = &p.coeffs[v];
                let b = -&q.coeffs[v];
                // b*p + a*q eliminates v
                let coeffs: Vec<BigInt> = p
                    .coeffs
                    .iter()
                    .zip(&q.coeffs)
                    .map(|(x, y)| &b * x + a * y)
                    .collect();
                let rhs =
                    &p.rhs * Rat::from_integer(b.clone()) + &q.rhs * Rat::from_integer(a.clone());
                combos.push(Inequality::new(coeffs, rhs));
            }
        }
        rows = Vec::new();
        push_all(&mut rows, next.drain(..).chain(combos))?;
        if rows.iter().any(contradiction) {
            return Ok(Feasibility::Infeasible);
        }
    }
    Ok(Feasibility::Feasible)
}

fn contradiction(r: &Inequality) -> bool {
    r.coeffs.iter().all(|c| c.is_zero()) && r.rhs.is_positive()
}

/// Adds rows, normalizing and keeping only the tightest rhs per direction.
fn push_all(rows: &mut Vec<Inequality>, new: impl Iterator<Item = Inequality>) -> Result<()> {
    let mut index: HashMap<Vec<BigInt>, usize> = HashMap::new();
    for (i, r) in rows.iter().enumerate() {
        index.insert(r.coeffs.clone(), i);
    }
    for r in new {
        let r = r.normalized();
        if r.coeffs.iter().all(|c| c.is_zero()) && !r.rhs.is_positive() {
            continue;
        }
        match index.get(&r.coeffs) {
            Some(&i) => {
                if r.rhs > rows[i].rhs {
                    rows[i].rhs = r.rhs;
                }
            }
            None => {
                index.insert(r.coeffs.clone(), rows.len());
                rows.push(r);
            }
        }
    }
    Ok(())
}
