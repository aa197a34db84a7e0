//! Fraction-free (Bareiss) elimination over the integers.
//!
//! Every intermediate entry is a minor of the input matrix, so all divisions
//! are exact and no rational arithmetic is needed.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Reduces `rows` in place to a fraction-free row echelon form and returns
/// the rank together with the sign flips introduced by row swaps.
fn bareiss_echelon(rows: &mut [Vec<BigInt>]) -> (usize, bool) {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    let mut negated = false;

    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(pivot) = (rank..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        if pivot != rank {
            rows.swap(pivot, rank);
            negated = !negated;
        }
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        for row in tail.iter_mut() {
            let factor = row[col].clone();
            for j in (col + 1)..ncols {
                let value = &pivot_row[col] * &row[j] - &factor * &pivot_row[j];
                row[j] = value / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = pivot_row[col].clone();
        rank += 1;
    }
    (rank, negated)
}

/// Rank of an integer matrix given as a list of rows.
pub fn rank(rows: &[Vec<BigInt>]) -> usize {
    let mut work = rows.to_vec();
    bareiss_echelon(&mut work).0
}

/// Determinant of a square integer matrix.
///
/// Panics if the matrix is not square.
pub fn determinant(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    assert!(rows.iter().all(|r| r.len() == n), "determinant of a non-square matrix");
    if n == 0 {
        return BigInt::one();
    }
    let mut work = rows.to_vec();
    let (rank, negated) = bareiss_echelon(&mut work);
    if rank < n {
        return BigInt::zero();
    }
    // With full rank the pivots sit on the diagonal and the last one is the determinant.
    let det = work[n - 1][n - 1].clone();
    if negated {
        -det
    } else {
        det
    }
}

/// A nonzero vector orthogonal to all `rows` when they are `n - 1` linearly
/// independent vectors of length `n`; the zero vector when they are dependent.
///
/// Entry `k` is the signed minor obtained by deleting column `k`.
pub fn orthogonal_complement(rows: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = rows.len() + 1;
    (0..n)
        .map(|k| {
            let minor: Vec<Vec<BigInt>> = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(i, _)| i != k)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let m = determinant(&minor);
            if k % 2 == 0 {
                m
            } else {
                -m
            }
        })
        .collect()
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Gcd of the absolute values of all entries (zero for the zero vector).
pub fn content(v: &[BigInt]) -> BigInt {
    use num_integer::Integer;
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x)).abs()
}
