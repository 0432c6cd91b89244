//! Exact dense linear algebra over a [`Field`].

use super::Field;
use crate::error::{Error, Result};

/// Solve `a x = b` by Gauss–Jordan elimination.
pub fn solve<F: Field>(mut a: Vec<Vec<F>>, mut b: Vec<F>) -> Result<Vec<F>> {
    let n = a.len();
    assert!(a.iter().all(|row| row.len() == n) && b.len() == n);
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::Singular)?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = F::one() / a[col][col].clone();
        for x in a[col].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        b[col] = b[col].clone() * inv;
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in col..n {
                let v = a[col][c].clone();
                a[r][c] = a[r][c].clone() - f.clone() * v;
            }
            b[r] = b[r].clone() - f * b[col].clone();
        }
    }
    Ok(b)
}

/// Inverse of a square matrix.
pub fn inverse<F: Field>(a: &[Vec<F>]) -> Result<Vec<Vec<F>>> {
    let n = a.len();
    let mut cols = Vec::with_capacity(n);
    for k in 0..n {
        let e = (0..n).map(|i| if i == k { F::one() } else { F::zero() }).collect();
        cols.push(solve(a.to_vec(), e)?);
    }
    Ok((0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect())
}
