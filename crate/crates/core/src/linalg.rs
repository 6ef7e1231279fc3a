//! Exact integer linear algebra: rank over the rationals and small
//! determinants.

use alloc::vec::Vec;
use num_integer::Integer;

use crate::error::{Error, Result};

/// Rank over `Q` of an integer matrix, by fraction-free row reduction with
/// row content removal after every elimination step.
pub fn rank(mut rows: Vec<Vec<i64>>) -> Result<usize> {
    let Some(width) = rows.first().map(Vec::len) else {
        return Ok(0);
    };
    let mut rank = 0;
    for col in 0..width {
        if rank == rows.len() {
            break;
        }
        // Smallest nonzero pivot keeps the entries small.
        let pivot = (rank..rows.len()).filter(|&r| rows[r][col] != 0).min_by_key(|&r| rows[r][col].unsigned_abs());
        let Some(p) = pivot else { continue };
        rows.swap(rank, p);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let a = pivot_row[col];
        for row in tail.iter_mut() {
            let b = row[col];
            if b == 0 {
                continue;
            }
            let g = a.gcd(&b);
            let (ma, mb) = (a / g, b / g);
            for (x, &y) in row.iter_mut().zip(pivot_row.iter()) {
                let lhs = x.checked_mul(ma).ok_or_else(overflow)?;
                let rhs = y.checked_mul(mb).ok_or_else(overflow)?;
                *x = lhs.checked_sub(rhs).ok_or_else(overflow)?;
            }
            remove_content(row);
        }
        rank += 1;
    }
    Ok(rank)
}

fn remove_content(row: &mut [i64]) {
    let g = row.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    if g > 1 {
        for x in row.iter_mut() {
            *x /= g;
        }
    }
}

fn overflow() -> Error {
    Error::Resource { what: "integer overflow in exact elimination", cap: 63 }
}

/// Determinant of a square integer matrix by Bareiss elimination.
pub fn determinant(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            let Some(swap) = (k + 1..n).find(|&r| m[r][k] != 0) else {
                return 0;
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// Primitive integer normal to the span of `n - 1` vectors in `Z^n`, via
/// signed maximal minors. Zero when the vectors are dependent.
pub fn cofactor_normal(vectors: &[Vec<i64>], n: usize) -> Vec<i64> {
    debug_assert_eq!(vectors.len() + 1, n);
    let mut normal = Vec::with_capacity(n);
    for skip in 0..n {
        let minor: Vec<Vec<i128>> = vectors
            .iter()
            .map(|v| v.iter().enumerate().filter(|(j, _)| *j != skip).map(|(_, &x)| i128::from(x)).collect())
            .collect();
        let d = determinant(minor);
        normal.push(if skip % 2 == 0 { d } else { -d });
    }
    let g = normal.iter().fold(0i128, |acc, &x| acc.gcd(&x));
    normal
        .into_iter()
        .map(|x| {
            let x = if g > 1 { x / g } else { x };
            i64::try_from(x).expect("normal fits in i64")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn rank_examples() {
        assert_eq!(rank(vec![]).unwrap(), 0);
        assert_eq!(rank(vec![vec![0, 0], vec![0, 0]]).unwrap(), 0);
        assert_eq!(rank(vec![vec![1, 2], vec![2, 4]]).unwrap(), 1);
        assert_eq!(rank(vec![vec![1, -1, 0], vec![0, 1, -1], vec![1, 0, -1]]).unwrap(), 2);
        assert_eq!(rank(vec![vec![2, 3], vec![4, 5]]).unwrap(), 2);
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(determinant(vec![vec![2, 0], vec![0, 3]]), 6);
        assert_eq!(determinant(vec![vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(determinant(vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]), 2);
        assert_eq!(determinant(vec![vec![1, 2], vec![2, 4]]), 0);
    }

    #[test]
    fn cofactor_normal_is_orthogonal() {
        let vs = [vec![-1, 1, 0]];
        let n = cofactor_normal(&[vs[0].clone(), vec![0, 0, 1]], 3);
        assert_eq!(n.iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![1, 1, 0]);
        assert_eq!(cofactor_normal(&[], 1), vec![1]);
    }
}
