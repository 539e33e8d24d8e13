//! Gaussian elimination over the two coefficient fields the engine needs:
//! the rationals and prime fields F_p with machine-word p.

use num_traits::{One, Signed, Zero};

use super::IntMatrix;
use crate::Rational;

/// Reduces an integer matrix modulo p; entries land in `[0, p)`.
pub fn fp_matrix(a: &IntMatrix, p: u64) -> Vec<Vec<u64>> {
    let pb = num_bigint::BigInt::from(p);
    (0..a.rows())
        .map(|i| {
            (0..a.cols())
                .map(|j| {
                    let mut r = a.get(i, j) % &pb;
                    if r.is_negative() {
                        r += &pb;
                    }
                    let (_, digits) = r.to_u64_digits();
                    digits.first().copied().unwrap_or(0)
                })
                .collect()
        })
        .collect()
}

fn fp_inv(a: u64, p: u64) -> u64 {
    // Fermat: p is prime and a != 0 mod p.
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc: u128 = 1;
    let p128 = p as u128;
    let mut b128 = base as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b128 % p128;
        }
        b128 = b128 * b128 % p128;
        exp >>= 1;
    }
    base = acc as u64;
    base
}

/// Row echelon reduction in place; returns the pivot columns.
fn fp_echelon(m: &mut [Vec<u64>], p: u64) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let p128 = p as u128;
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| m[i][c] % p != 0) else {
            continue;
        };
        m.swap(r, pr);
        let inv = fp_inv(m[r][c], p);
        for j in c..cols {
            m[r][j] = (m[r][j] as u128 * inv as u128 % p128) as u64;
        }
        for i in 0..rows {
            if i != r && m[i][c] % p != 0 {
                let f = m[i][c] % p;
                for j in c..cols {
                    let sub = f as u128 * m[r][j] as u128 % p128;
                    m[i][j] = ((m[i][j] as u128 + p128 - sub) % p128) as u64;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

pub fn fp_rank(m: &[Vec<u64>], p: u64) -> usize {
    let mut work = m.to_vec();
    fp_echelon(&mut work, p).len()
}

/// Basis of the right kernel over F_p, one vector per free column.
pub fn fp_kernel_basis(m: &[Vec<u64>], cols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut work = m.to_vec();
    let pivots = fp_echelon(&mut work, p);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; cols];
        v[free] = 1;
        for (row, &pc) in pivots.iter().enumerate() {
            // Echelon rows are normalized: v[pc] = -m[row][free].
            let entry = work[row][free] % p;
            if entry != 0 {
                v[pc] = p - entry;
            }
        }
        basis.push(v);
    }
    basis
}

/// Row echelon reduction over the rationals; returns the pivot columns.
fn rat_echelon(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][c].recip();
        for j in c..cols {
            let v = &m[r][j] * &inv;
            m[r][j] = v;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let v = &m[i][j] - &f * &m[r][j];
                    m[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

pub fn rat_rank(m: &[Vec<Rational>]) -> usize {
    let mut work = m.to_vec();
    rat_echelon(&mut work).len()
}

/// Basis of the right kernel over the rationals.
pub fn rat_kernel_basis(m: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut work = m.to_vec();
    let pivots = rat_echelon(&mut work);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (row, &pc) in pivots.iter().enumerate() {
            if !work[row][free].is_zero() {
                v[pc] = -work[row][free].clone();
            }
        }
        basis.push(v);
    }
    basis
}

/// Solves `A X = B` over the rationals, free variables pinned to zero;
/// `None` when some column of `B` lies outside the column span of `A`.
pub fn rat_solve(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let rows = a.len();
    assert_eq!(rows, b.len(), "row mismatch in solve");
    let cols_a = if rows == 0 { 0 } else { a[0].len() };
    let cols_b = if rows == 0 { 0 } else { b[0].len() };
    let mut aug: Vec<Vec<Rational>> = (0..rows)
        .map(|i| a[i].iter().chain(b[i].iter()).cloned().collect())
        .collect();
    let pivots = rat_echelon(&mut aug);
    if pivots.iter().any(|&c| c >= cols_a) {
        return None; // a pivot landed in the right-hand block
    }
    let mut x = vec![vec![Rational::zero(); cols_b]; cols_a];
    for (row, &pc) in pivots.iter().enumerate() {
        for j in 0..cols_b {
            x[pc][j] = aug[row][cols_a + j].clone();
        }
    }
    Some(x)
}

/// Determinant over the rationals by elimination.
pub fn rat_det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    if n == 0 {
        return Rational::one();
    }
    assert!(m.iter().all(|r| r.len() == n), "determinant of a non-square matrix");
    let mut work = m.to_vec();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| !work[i][c].is_zero()) else {
            return Rational::zero();
        };
        if pr != c {
            work.swap(c, pr);
            det = -det;
        }
        det *= work[c][c].clone();
        let inv = work[c][c].recip();
        for j in c..n {
            let v = &work[c][j] * &inv;
            work[c][j] = v;
        }
        for i in c + 1..n {
            if !work[i][c].is_zero() {
                let f = work[i][c].clone();
                for j in c..n {
                    let v = &work[i][j] - &f * &work[c][j];
                    work[i][j] = v;
                }
            }
        }
    }
    det
}
