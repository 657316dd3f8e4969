//! f-, h- and g-vectors of simple polytopes (equivalently of complete
//! simplicial fans), binomial pseudopowers, the g-theorem conditions and the
//! linear relations they impose on Chern numbers through the χ_y-genus.

use std::fmt;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};

use crate::chern::{apply_form, todd_table, ChernForm, ChernVector};
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::linalg::{self, rat, Rat};
use crate::partition::{partitions, Partition};

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}

fn binom_u(n: u128, k: u128) -> u128 {
    if n < k {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

fn check_len(v: &[i64], len: usize, what: &str) -> Result<()> {
    if v.len() != len {
        return Err(Error::InvalidInput(format!(
            "{what} must have length {len}, got {}",
            v.len()
        )));
    }
    Ok(())
}

/// `h_k = Σ_{i≤k} (−1)^{k−i} C(n−i, k−i) f_{i−1}` with `f_{−1} = 1`.
pub fn f_to_h(f: &[i64], n: usize) -> Result<Vec<i64>> {
    check_len(f, n, "f-vector")?;
    let fm = |i: usize| if i == 0 { 1 } else { f[i - 1] };
    let n = n as i64;
    Ok((0..=n)
        .map(|k| {
            (0..=k)
                .map(|i| {
                    let s = if (k - i) % 2 == 0 { 1 } else { -1 };
                    s * binom(n - i, k - i) * fm(i as usize)
                })
                .sum()
        })
        .collect())
}

/// `f_{k−1} = Σ_{i≤k} C(n−i, k−i) h_i` for `k = 1..n`.
pub fn h_to_f(h: &[i64], n: usize) -> Result<Vec<i64>> {
    check_len(h, n + 1, "h-vector")?;
    let n = n as i64;
    Ok((1..=n)
        .map(|k| (0..=k).map(|i| binom(n - i, k - i) * h[i as usize]).sum())
        .collect())
}

/// `g_0 = h_0`, `g_k = h_k − h_{k−1}` for `k ≤ ⌊n/2⌋`.
pub fn h_to_g(h: &[i64]) -> Vec<i64> {
    let n = h.len().saturating_sub(1);
    (0..=n / 2)
        .map(|k| if k == 0 { h[0] } else { h[k] - h[k - 1] })
        .collect()
}

/// Rebuilds the symmetric h-vector from a g-vector.
pub fn g_to_h(g: &[i64], n: usize) -> Result<Vec<i64>> {
    check_len(g, n / 2 + 1, "g-vector")?;
    let half: Vec<i64> = g
        .iter()
        .scan(0i64, |acc, x| {
            *acc += x;
            Some(*acc)
        })
        .collect();
    let h: Vec<i64> = (0..=n).map(|k| half[k.min(n - k)]).collect();
    if (0..=n).any(|k| h[k] != h[n - k]) || h_to_g(&h) != g {
        return Err(Error::SymmetryViolation);
    }
    Ok(h)
}

pub fn g_to_f(g: &[i64], n: usize) -> Result<Vec<i64>> {
    h_to_f(&g_to_h(g, n)?, n)
}

/// The h-vector of a complete simplicial fan from its cone counts.
pub fn fan_h_vector(fan: &Fan) -> Vec<i64> {
    f_to_h(&fan.face_count_vector(), fan.dim()).expect("face counts have length n")
}

pub fn fan_g_vector(fan: &Fan) -> Vec<i64> {
    h_to_g(&fan_h_vector(fan))
}

/// The `i`-th pseudopower `a^⟨i⟩`: write `a = C(a_i, i) + C(a_{i−1}, i−1) +
/// ⋯ + C(a_j, j)` greedily and raise every binomial to `C(a_k + 1, k + 1)`.
pub fn pseudopower(a: u64, i: u32) -> u128 {
    assert!(i >= 1, "pseudopowers start at i = 1");
    let mut rest = a as u128;
    let mut out = 0u128;
    let mut k = i as u128;
    while rest > 0 && k >= 1 {
        // largest m with C(m, k) <= rest
        let mut m = k;
        while binom_u(m + 1, k) <= rest {
            m += 1;
        }
        rest -= binom_u(m, k);
        out += binom_u(m + 1, k + 1);
        k -= 1;
    }
    out
}

/// The first condition of the g-theorem that `g` violates, if any.
pub fn g_violation(g: &[i64], n: usize) -> Option<String> {
    if g.len() != n / 2 + 1 {
        return Some(format!("g-vector must have length {}", n / 2 + 1));
    }
    if g[0] != 1 {
        return Some("g0 must be 1".into());
    }
    if g.len() > 1 && g[1] < 0 {
        return Some("g1 must be nonnegative".into());
    }
    for k in 1..g.len().saturating_sub(1) {
        if g[k + 1] < 0 {
            return Some(format!("g{} must be nonnegative", k + 1));
        }
        let bound = pseudopower(g[k].max(0) as u64, k as u32);
        if g[k + 1] as u128 > bound {
            return Some(format!(
                "g{} = {} exceeds g{k}^<{k}> = {bound}",
                k + 1,
                g[k + 1]
            ));
        }
    }
    None
}

pub fn is_valid_g(g: &[i64], n: usize) -> bool {
    g_violation(g, n).is_none()
}

/// A linear relation `Σ a_I c_I = const + Σ_k b_k g_k` between Chern numbers
/// and the g-vector, solved for its pivot Chern number.
#[derive(Debug, Clone, PartialEq)]
pub struct ObstructionRelation {
    pub pivot: Partition,
    pub lhs: ChernForm,
    pub constant: Rat,
    /// coefficients of `g_1, …, g_{⌊n/2⌋}`
    pub g_coeffs: Vec<Rat>,
}

impl ObstructionRelation {
    /// Right-hand side for a concrete g-vector (including `g_0`).
    pub fn rhs(&self, g: &[i64]) -> Rat {
        self.g_coeffs
            .iter()
            .zip(g.iter().skip(1))
            .fold(self.constant.clone(), |acc, (c, x)| acc + c * rat(*x))
    }

    /// The same relation with the g-vector substituted into the constant.
    pub fn specialize(&self, g: &[i64]) -> ObstructionRelation {
        ObstructionRelation {
            pivot: self.pivot.clone(),
            lhs: self.lhs.clone(),
            constant: self.rhs(g),
            g_coeffs: vec![Rat::zero(); self.g_coeffs.len()],
        }
    }

    pub fn holds(&self, cv: &ChernVector, g: &[i64]) -> bool {
        apply_form(&self.lhs, cv) == self.rhs(g)
    }
}

fn fmt_coeff_term(out: &mut String, c: &Rat, name: &str, first: bool) {
    if c.is_zero() {
        return;
    }
    let sign = if c.is_negative() { "-" } else { "+" };
    let a = c.abs();
    if first {
        if c.is_negative() {
            out.push('-');
        }
    } else {
        out.push_str(&format!(" {sign} "));
    }
    if name.is_empty() {
        out.push_str(&a.to_string());
    } else if a.is_one() {
        out.push_str(name);
    } else {
        out.push_str(&format!("{a}*{name}"));
    }
}

impl fmt::Display for ObstructionRelation {
    /// `c4 = 5 + 3*g1 + g2` style, with non-pivot Chern numbers moved right.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        let mut first = true;
        for (p, c) in self.lhs.iter().rev() {
            if *p != self.pivot {
                fmt_coeff_term(&mut out, &-c.clone(), &p.chern_key(), first);
                first &= c.is_zero();
            }
        }
        for (k, c) in self.g_coeffs.iter().enumerate() {
            fmt_coeff_term(&mut out, c, &format!("g{}", k + 1), first);
            first &= c.is_zero();
        }
        fmt_coeff_term(&mut out, &self.constant, "", first);
        if out.is_empty() {
            out.push('0');
        }
        write!(f, "{} = {out}", self.pivot.chern_key())
    }
}

/// Pivot preference: `c_n`, `c_1 c_{n−1}`, `c_1^n`, then the remaining
/// partitions from last to first.
fn pivot_order(n: usize) -> Vec<usize> {
    let parts = partitions(n as u32);
    let idx = |p: Partition| parts.iter().position(|q| *q == p);
    let mut order: Vec<usize> = [
        Partition::new(vec![n as u32]),
        Partition::new(vec![n as u32 - 1, 1]),
        Partition::new(vec![1; n]),
    ]
    .into_iter()
    .filter_map(idx)
    .unique()
    .collect();
    for i in (0..parts.len()).rev() {
        if !order.contains(&i) {
            order.push(i);
        }
    }
    order
}

/// The relations `T_n^p[M] = (−1)^p Σ_{k≤p} g_k` for `p ≤ ⌊n/2⌋`, brought to
/// reduced echelon form with respect to the Chern numbers.
pub fn obstruction_system(n: usize) -> Vec<ObstructionRelation> {
    let parts = partitions(n as u32);
    let np = parts.len();
    let half = n / 2;
    let table = todd_table(n);
    let rows: Vec<Vec<Rat>> = (0..=half)
        .map(|p| {
            let sign = if p % 2 == 0 { rat(1) } else { rat(-1) };
            let mut row: Vec<Rat> = parts
                .iter()
                .map(|q| table.rows[p].get(q).cloned().unwrap_or_else(Rat::zero))
                .collect();
            row.push(sign.clone());
            row.extend((1..=half).map(|k| if k <= p { sign.clone() } else { Rat::zero() }));
            row
        })
        .collect();
    let (reduced, pivots) = linalg::rref(&rows, &pivot_order(n));
    let mut out: Vec<ObstructionRelation> = reduced
        .into_iter()
        .zip(pivots)
        .map(|(row, pc)| ObstructionRelation {
            pivot: parts[pc].clone(),
            lhs: parts
                .iter()
                .zip(&row)
                .filter(|(_, c)| !c.is_zero())
                .map(|(p, c)| (p.clone(), c.clone()))
                .collect(),
            constant: row[np].clone(),
            g_coeffs: row[np + 1..].to_vec(),
        })
        .collect();
    out.sort_by_key(|r| std::cmp::Reverse(r.pivot.clone()));
    out
}

/// A linear constraint `Σ a_I c_I = rhs` on a Chern vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ChernConstraint {
    pub lhs: ChernForm,
    pub rhs: Rat,
}

/// The obstruction relations instantiated at a concrete g-vector.
pub fn obstruction_equations(n: usize, g: &[i64]) -> Result<Vec<ChernConstraint>> {
    check_len(g, n / 2 + 1, "g-vector")?;
    Ok(obstruction_system(n)
        .iter()
        .map(|r| ChernConstraint {
            lhs: r.lhs.clone(),
            rhs: r.rhs(g),
        })
        .collect())
}

/// Parity conditions that every eight-dimensional candidate must satisfy:
/// `c1^2*c2` even and `c1^2*c2 + 2*c2^2 + c1*c3 ≡ 0 mod 4`.
pub fn dim4_parities_hold(cv: &ChernVector) -> bool {
    let c112 = cv.value(&[2, 1, 1]);
    let c22 = cv.value(&[2, 2]);
    let c13 = cv.value(&[3, 1]);
    c112.rem_euclid(2) == 0 && (c112 + 2 * c22 + c13).rem_euclid(4) == 0
}

/// g-vectors compatible with a Chern vector in dimension 3 or 4: valid by
/// the g-theorem and satisfying every obstruction relation (plus the parity
/// conditions in dimension 4).
pub fn feasible_g_for(cv: &ChernVector) -> Result<Vec<Vec<i64>>> {
    let n = cv.dim();
    let system = obstruction_system(n);
    let holds = |g: &[i64]| is_valid_g(g, n) && system.iter().all(|r| r.holds(cv, g));
    match n {
        3 => {
            let c3 = cv.value(&[3]);
            if c3 < 4 || (c3 - 4) % 2 != 0 {
                return Ok(vec![]);
            }
            let g = vec![1, (c3 - 4) / 2];
            Ok(if holds(&g) { vec![g] } else { vec![] })
        }
        4 => {
            if !dim4_parities_hold(cv) {
                return Ok(vec![]);
            }
            let budget = cv.value(&[4]) - 5;
            let mut out = Vec::new();
            let mut g1 = 0;
            while 3 * g1 <= budget {
                let g = vec![1, g1, budget - 3 * g1];
                if holds(&g) {
                    out.push(g);
                }
                g1 += 1;
            }
            Ok(out)
        }
        _ => Err(Error::InvalidInput(format!(
            "feasible g-vectors are enumerated for n = 3, 4, not {n}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conversions() {
        assert_eq!(f_to_h(&[4, 6, 4], 3).unwrap(), vec![1, 1, 1, 1]);
        assert_eq!(f_to_h(&[6, 12, 8], 3).unwrap(), vec![1, 3, 3, 1]);
        assert_eq!(h_to_g(&[1, 3, 3, 1]), vec![1, 2]);
        assert_eq!(h_to_g(&[1, 1, 1, 1]), vec![1, 0]);
        assert_eq!(g_to_h(&[1, 3, 2], 4).unwrap(), vec![1, 4, 6, 4, 1]);
        assert_eq!(g_to_f(&[1, 3, 2], 4).unwrap(), vec![8, 24, 32, 16]);
        assert_eq!(g_to_f(&[1, 2], 3).unwrap(), vec![6, 12, 8]);
        assert!(f_to_h(&[1, 2], 3).is_err());
    }

    #[test]
    fn pseudopowers() {
        assert_eq!(pseudopower(0, 3), 0);
        assert_eq!(pseudopower(5, 2), 7);
        for a in 0..=50u64 {
            assert_eq!(pseudopower(a, 1), (a * (a + 1) / 2) as u128);
        }
        // 3 = C(3,3)... greedy at i = 3: C(3,3) + C(2,2) + C(1,1)
        assert_eq!(pseudopower(3, 3), 3);
    }

    #[test]
    fn g_theorem() {
        assert!(is_valid_g(&[1, 0], 3));
        assert!(is_valid_g(&[1, 2, 3], 4));
        assert!(!is_valid_g(&[1, 1, 2], 4));
        assert!(g_violation(&[1, 1, 2], 4).unwrap().contains("g2"));
        assert!(!is_valid_g(&[2, 0], 3));
        assert!(!is_valid_g(&[1, -1], 3));
    }

    #[test]
    fn dimension_three_relations() {
        let sys = obstruction_system(3);
        let text: Vec<String> = sys.iter().map(ToString::to_string).collect();
        assert_eq!(text, vec!["c3 = 2*g1 + 4", "c1*c2 = 24"]);
    }

    #[test]
    fn dimension_four_relations() {
        let sys = obstruction_system(4);
        let text: Vec<String> = sys.iter().map(ToString::to_string).collect();
        assert_eq!(
            text,
            vec![
                "c4 = 3*g1 + g2 + 5",
                "c1*c3 = 6*g1 - 2*g2 + 50",
                "c1^4 = 3*c2^2 + 4*c1^2*c2 + 3*g1 - 3*g2 - 675",
            ]
        );
    }

    #[test]
    fn feasible_vectors() {
        let odd = ChernVector::from_values(4, &[-672, 0, 1, 50, 5]).unwrap();
        assert_eq!(feasible_g_for(&odd).unwrap(), vec![vec![1, 0, 0]]);
        let p4 = ChernVector::from_values(4, &[625, 250, 100, 50, 5]).unwrap();
        assert_eq!(feasible_g_for(&p4).unwrap(), vec![vec![1, 0, 0]]);
        let low = ChernVector::from_values(4, &[625, 250, 100, 50, 4]).unwrap();
        assert!(feasible_g_for(&low).unwrap().is_empty());
        let p3 = ChernVector::from_values(3, &[64, 24, 4]).unwrap();
        assert_eq!(feasible_g_for(&p3).unwrap(), vec![vec![1, 0]]);
    }
}
