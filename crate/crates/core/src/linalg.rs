//! Exact dense linear algebra over `BigInt` and `BigRational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Converts an integer-valued rational to `i64`, `None` otherwise.
pub fn rat_to_i64(r: &Rat) -> Option<i64> {
    if r.is_integer() {
        i64::try_from(r.to_integer()).ok()
    } else {
        None
    }
}

/// Determinant by fraction-free Bareiss elimination.
pub fn det_int(rows: &[Vec<i64>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

pub fn to_rat_matrix(rows: &[Vec<i64>]) -> Vec<Vec<Rat>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| rat(x)).collect())
        .collect()
}

/// Inverse of a square rational matrix, `None` when singular.
pub fn inverse(m: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x = &*x / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..2 * n {
                    let v = &a[col][c] * &f;
                    a[r][c] -= v;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solves `m x = b` for square nonsingular `m`.
pub fn solve(m: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let inv = inverse(m)?;
    Some(mat_vec(&inv, b))
}

pub fn mat_vec(m: &[Vec<Rat>], v: &[Rat]) -> Vec<Rat> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
        })
        .collect()
}

/// Reduced row echelon form; columns are visited in `col_order`.
/// Returns the reduced nonzero rows and their pivot columns.
pub fn rref(rows: &[Vec<Rat>], col_order: &[usize]) -> (Vec<Vec<Rat>>, Vec<usize>) {
    let mut a: Vec<Vec<Rat>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for &c in col_order {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let pv = a[r][c].clone();
        for x in a[r].iter_mut() {
            *x = &*x / &pv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pivot_row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(pivot_row.iter()) {
                    *x -= y * &f;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

pub fn rank(rows: &[Vec<Rat>]) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let order: Vec<usize> = (0..ncols).collect();
    rref(rows, &order).1.len()
}

/// Scales a rational vector to a primitive integer vector with the same
/// direction (positive multiple). Zero maps to zero.
pub fn primitive_integer(v: &[Rat]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

pub fn gcd_i64(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |acc, &x| acc.gcd(&x)).abs()
}

pub fn dot_i64(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Integer matrix utilities used by the divisibility-lattice derivation.
pub mod integer {
    use super::*;

    pub type IntMatrix = Vec<Vec<BigInt>>;

    /// Column-style Hermite normal form of the lattice spanned by the given
    /// generators (each a vector of length `dim`). Returns an upper
    /// triangular basis `b` (as columns `b[j]`), with positive diagonal and
    /// off-diagonal entries reduced into `[0, diag)`. The lattice must have
    /// full rank.
    pub fn hnf_basis(generators: &[Vec<BigInt>], dim: usize) -> Option<IntMatrix> {
        // Row-reduce the matrix whose rows are the generators; the resulting
        // nonzero rows form a lower-echelon basis. We eliminate from the last
        // coordinate so the basis is upper triangular when read as columns.
        let mut rows: Vec<Vec<BigInt>> = generators.to_vec();
        let mut basis: Vec<Vec<BigInt>> = Vec::new();
        for col in (0..dim).rev() {
            // gcd-combine all rows on this column into one row
            loop {
                let nz: Vec<usize> = (0..rows.len())
                    .filter(|&i| !rows[i][col].is_zero())
                    .collect();
                if nz.len() <= 1 {
                    break;
                }
                let p = *nz
                    .iter()
                    .min_by_key(|&&i| rows[i][col].abs())
                    .expect("nonempty");
                for &i in &nz {
                    if i != p {
                        let q = rows[i][col].div_floor(&rows[p][col]);
                        let pr = rows[p].clone();
                        for (x, y) in rows[i].iter_mut().zip(pr.iter()) {
                            *x -= y * &q;
                        }
                    }
                }
            }
            let pos = (0..rows.len()).find(|&i| !rows[i][col].is_zero())?;
            let mut v = rows.swap_remove(pos);
            if v[col].is_negative() {
                v.iter_mut().for_each(|x| *x = -x.clone());
            }
            basis.push(v);
            rows.retain(|r| r.iter().any(|x| !x.is_zero()));
        }
        // basis[k] has its last nonzero at coordinate dim-1-k; reorder so column j
        // has last nonzero at j.
        basis.reverse();
        // reduce entries above the diagonal
        for j in 0..dim {
            for i in (0..j).rev() {
                let d = basis[i][i].clone();
                let q = basis[j][i].div_floor(&d);
                if !q.is_zero() {
                    let bi = basis[i].clone();
                    for (x, y) in basis[j].iter_mut().zip(bi.iter()) {
                        *x -= y * &q;
                    }
                }
            }
        }
        Some(basis)
    }

    /// Basis of `{x ∈ ℤ^dim : a·x ≡ 0 mod m for every (a, m)}` in the
    /// triangular form of [`hnf_basis`].
    pub fn congruence_lattice(rows: &[(Vec<BigInt>, BigInt)], dim: usize) -> IntMatrix {
        let mut basis: IntMatrix = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| {
                        if i == j {
                            BigInt::one()
                        } else {
                            BigInt::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        for (a, m) in rows {
            // values of the congruence on the current basis
            let mut s: Vec<BigInt> = basis
                .iter()
                .map(|b| {
                    b.iter()
                        .zip(a)
                        .fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
                        .mod_floor(m)
                })
                .collect();
            if s.iter().all(Zero::is_zero) {
                continue;
            }
            // unimodular column operations on the basis reduce s to one entry
            loop {
                let nz: Vec<usize> = (0..s.len()).filter(|&i| !s[i].is_zero()).collect();
                if nz.len() <= 1 {
                    break;
                }
                let p = *nz.iter().min_by_key(|&&i| s[i].abs()).expect("nonempty");
                for &i in &nz {
                    if i != p {
                        let q = s[i].div_floor(&s[p]);
                        s[i] = &s[i] - &q * &s[p];
                        let bp = basis[p].clone();
                        for (x, y) in basis[i].iter_mut().zip(&bp) {
                            *x -= y * &q;
                        }
                    }
                }
            }
            let p = (0..s.len())
                .find(|&i| !s[i].is_zero())
                .expect("one entry left");
            let mult = m / s[p].gcd(m);
            for x in basis[p].iter_mut() {
                *x *= &mult;
            }
        }
        hnf_basis(&basis, dim).expect("finite-index sublattice has full rank")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bareiss_matches_small_cases() {
        assert_eq!(det_int(&[vec![1, 0], vec![1, 2]]), BigInt::from(2));
        assert_eq!(
            det_int(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]),
            BigInt::from(-1)
        );
        assert_eq!(
            det_int(&[vec![2, 3, 1], vec![4, 1, -3], vec![1, 1, 1]]),
            BigInt::from(-10)
        );
    }

    #[test]
    fn inverse_roundtrip() {
        let m = to_rat_matrix(&[vec![1, 2], vec![3, 5]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(inv, to_rat_matrix(&[vec![-5, 2], vec![3, -1]]));
        assert!(inverse(&to_rat_matrix(&[vec![1, 2], vec![2, 4]])).is_none());
    }

    #[test]
    fn hnf_of_diagonal_lattice() {
        let gens: Vec<Vec<BigInt>> = vec![
            vec![2.into(), 0.into()],
            vec![1.into(), 3.into()],
            vec![0.into(), 6.into()],
        ];
        let b = integer::hnf_basis(&gens, 2).unwrap();
        // lattice spanned by (2,0),(1,3): index 6
        assert_eq!(&b[0][0] * &b[1][1], BigInt::from(6));
        assert_eq!(b[0][1], BigInt::zero());
    }

    #[test]
    fn congruences_cut_out_sublattice() {
        // x + y ≡ 0 mod 2 and y ≡ 0 mod 3
        let rows = vec![
            (vec![BigInt::from(1), BigInt::from(1)], BigInt::from(2)),
            (vec![BigInt::from(0), BigInt::from(1)], BigInt::from(3)),
        ];
        let b = integer::congruence_lattice(&rows, 2);
        assert_eq!(&b[0][0] * &b[1][1], BigInt::from(6));
        for v in &b {
            assert!((&v[0] + &v[1]).is_even());
            assert!((&v[1] % BigInt::from(3)).is_zero());
        }
    }
}
