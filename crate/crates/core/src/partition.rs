//! Integer partitions, used both as Chern-monomial labels and as exponent
//! patterns of symmetric polynomials.

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Builds a partition from parts in any order; zero parts are dropped.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The conjugate partition (transpose of the Young diagram).
    pub fn conjugate(&self) -> Partition {
        let first = self.0.first().copied().unwrap_or(0);
        Partition(
            (1..=first)
                .map(|k| self.0.iter().filter(|&&p| p >= k).count() as u32)
                .collect(),
        )
    }

    /// Renders as a Chern monomial, e.g. `c1^2*c2`; the empty partition is `1`.
    pub fn chern_key(&self) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.0
            .iter()
            .rev()
            .dedup_with_count()
            .map(|(count, part)| {
                if count == 1 {
                    format!("c{part}")
                } else {
                    format!("c{part}^{count}")
                }
            })
            .join("*")
    }

    /// Parses the rendering produced by [`Partition::chern_key`].
    pub fn parse_chern_key(s: &str) -> Result<Partition> {
        let bad = || Error::InvalidInput(format!("malformed Chern monomial {s:?}"));
        let s = s.trim();
        if s == "1" {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for factor in s.split('*') {
            let factor = factor.trim();
            let body = factor.strip_prefix('c').ok_or_else(bad)?;
            let (idx, pow) = match body.split_once('^') {
                Some((i, p)) => (i, p.parse::<usize>().map_err(|_| bad())?),
                None => (body, 1),
            };
            let idx: u32 = idx.parse().map_err(|_| bad())?;
            if idx == 0 || pow == 0 {
                return Err(bad());
            }
            parts.extend(std::iter::repeat_n(idx, pow));
        }
        Ok(Partition::new(parts))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().join(","))
    }
}

/// All partitions of `n`, sorted lexicographically as descending tuples
/// (so `1^n` first and `(n)` last).
pub fn partitions(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fill(n, n, &mut cur, &mut out);
    out.sort();
    out
}

fn fill(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition(cur.clone()));
        return;
    }
    for p in (1..=rest.min(max)).rev() {
        cur.push(p);
        fill(rest - p, p, cur, out);
        cur.pop();
    }
}

/// Partitions of every weight `0..=n`, ordered by weight and then as above.
pub fn partitions_up_to(n: u32) -> Vec<Partition> {
    (0..=n).flat_map(partitions).collect()
}

/// Partitions of weight at most `max_deg` with at most `max_len` parts.
pub(crate) fn bounded_partitions(max_deg: u32, max_len: usize) -> Vec<Partition> {
    partitions_up_to(max_deg)
        .into_iter()
        .filter(|p| p.len() <= max_len)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_order() {
        let counts: Vec<usize> = (0..=6).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11]);
        let keys: Vec<String> = partitions(4).iter().map(Partition::chern_key).collect();
        assert_eq!(keys, vec!["c1^4", "c1^2*c2", "c2^2", "c1*c3", "c4"]);
    }

    #[test]
    fn key_roundtrip() {
        for p in partitions_up_to(6) {
            assert_eq!(Partition::parse_chern_key(&p.chern_key()).unwrap(), p);
        }
        assert_eq!(
            Partition::parse_chern_key("c2*c1^2").unwrap(),
            Partition::new(vec![2, 1, 1])
        );
        assert!(Partition::parse_chern_key("c0").is_err());
        assert!(Partition::parse_chern_key("x1").is_err());
    }

    #[test]
    fn conjugation() {
        assert_eq!(
            Partition::new(vec![3, 1]).conjugate(),
            Partition::new(vec![2, 1, 1])
        );
        for p in partitions(6) {
            assert_eq!(p.conjugate().conjugate(), p);
        }
    }
}
