//! Exact rank, span intersection and small dense solves.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{check_dim, Result};
use crate::rational::{RMatrix, RVector, Rational};

/// Clears denominators row by row, giving an integer matrix with the same rank.
fn integer_rows(m: &[RVector]) -> Vec<Vec<BigInt>> {
    m.iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            row.iter().map(|q| q.numer() * (&l / q.denom())).collect()
        })
        .collect()
}

/// Rank by fraction-free (Bareiss) elimination.
pub fn rank(m: &[RVector]) -> usize {
    if m.is_empty() {
        return 0;
    }
    let mut a = integer_rows(m);
    let rows = a.len();
    let cols = a[0].len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// True iff `span(rows of a) ∩ span(rows of b) = {0}`, decided by
/// `rank([a; b]) = rank(a) + rank(b)`.
pub fn span_intersection_trivial(a: &[RVector], b: &[RVector]) -> Result<bool> {
    if let (Some(x), Some(y)) = (a.first(), b.first()) {
        check_dim(x.len(), y.len())?;
    }
    let mut stacked: RMatrix = a.to_vec();
    stacked.extend(b.iter().cloned());
    Ok(rank(&stacked) == rank(a) + rank(b))
}

/// Solves the square system `m x = rhs`; `None` when `m` is singular.
pub fn solve(m: &[RVector], rhs: &[Rational]) -> Option<RVector> {
    let n = m.len();
    let mut a: Vec<RVector> = m
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        let piv = a[c][c].clone();
        for j in c..=n {
            let v = &a[c][j] / &piv;
            a[c][j] = v;
        }
        for i in 0..n {
            if i == c || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in c..=n {
                if !a[c][j].is_zero() {
                    let v = &a[c][j] * &f;
                    a[i][j] -= v;
                }
            }
        }
    }
    Some(a.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Indices of a maximal linearly independent subset of `rows`, chosen greedily
/// in index order.
pub fn independent_rows(rows: &[RVector]) -> Vec<usize> {
    let mut basis: Vec<RVector> = Vec::new();
    let mut picked = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        let mut trial = basis.clone();
        trial.push(r.clone());
        if rank(&trial) == trial.len() {
            basis = trial;
            picked.push(i);
        }
    }
    picked
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, ivec, unit};

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&[ivec(&[1, 0]), ivec(&[0, 1])]), 2);
        assert_eq!(rank(&[ivec(&[0, 0]), ivec(&[0, 0])]), 0);
        assert_eq!(rank(&[ivec(&[1, 1, -1, -1])]), 1);
        assert_eq!(rank(&[vec![frac(1, 2), frac(1, 3)], vec![frac(3, 2), int1()]]), 1);
    }

    fn int1() -> Rational {
        Rational::one()
    }

    #[test]
    fn span_intersection_examples() {
        let e1 = vec![unit(2, 0)];
        let e2 = vec![unit(2, 1)];
        assert!(span_intersection_trivial(&e1, &e2).unwrap());
        assert!(!span_intersection_trivial(&e1, &e1).unwrap());
        let simplex: Vec<RVector> = (0..4).map(|i| unit(4, i)).collect();
        let y = vec![ivec(&[1, 1, -1, -1])];
        assert!(!span_intersection_trivial(&simplex, &y).unwrap());
        assert!(span_intersection_trivial(&e1, &[ivec(&[1, 0, 0])]).is_err());
    }

    #[test]
    fn solve_small_system() {
        let m = vec![ivec(&[2, 1]), ivec(&[1, 3])];
        let x = solve(&m, &ivec(&[3, 5])).unwrap();
        assert_eq!(x, vec![frac(4, 5), frac(7, 5)]);
        assert!(solve(&[ivec(&[1, 1]), ivec(&[2, 2])], &ivec(&[1, 2])).is_none());
    }

    mod props {
        use super::super::*;
        use crate::rational::frac;
        use proptest::prelude::*;

        /// Textbook elimination over the rationals.
        fn naive_rank(m: &[RVector]) -> usize {
            let mut a = m.to_vec();
            let cols = a.first().map_or(0, Vec::len);
            let mut r = 0;
            for c in 0..cols {
                let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
                    continue;
                };
                a.swap(r, p);
                for i in r + 1..a.len() {
                    let f = &a[i][c] / &a[r][c];
                    for j in c..cols {
                        let v = &f * &a[r][j];
                        a[i][j] -= v;
                    }
                }
                r += 1;
            }
            r
        }

        fn matrix() -> impl Strategy<Value = Vec<RVector>> {
            (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| {
                prop::collection::vec(prop::collection::vec((-3i64..=3, 1i64..=3), c), r)
                    .prop_map(|m| m.into_iter().map(|row| row.into_iter().map(|(n, q)| frac(n, q)).collect()).collect())
            })
        }

        proptest! {
            #[test]
            fn rank_matches_transpose_and_naive(m in matrix()) {
                let t: Vec<RVector> = (0..m[0].len()).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect();
                prop_assert_eq!(rank(&m), rank(&t));
                prop_assert_eq!(rank(&m), naive_rank(&m));
                prop_assert_eq!(independent_rows(&m).len(), rank(&m));
            }
        }
    }
}
