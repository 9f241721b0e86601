//! Exact Gauss-Jordan elimination over the rationals for small square matrices.

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type RationalMatrix = Vec<Vec<BigRational>>;

fn reduce(mut m: RationalMatrix, mut aug: Option<&mut RationalMatrix>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        if let Some(a) = aug.as_deref_mut() {
            a.swap(rank, pivot);
        }
        let inv = m[rank][col].recip();
        for x in m[rank].iter_mut() {
            *x *= &inv;
        }
        if let Some(a) = aug.as_deref_mut() {
            for x in a[rank].iter_mut() {
                *x *= &inv;
            }
        }
        for r in 0..rows {
            if r == rank || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            let pivot_row = m[rank].clone();
            for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                *x -= &factor * y;
            }
            if let Some(a) = aug.as_deref_mut() {
                for c in 0..a[r].len() {
                    let delta = &factor * &a[rank][c];
                    a[r][c] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn rank(m: &[Vec<BigRational>]) -> usize {
    reduce(m.to_vec(), None)
}

pub fn inverse(m: &[Vec<BigRational>]) -> Option<RationalMatrix> {
    let n = m.len();
    let mut aug = identity(n);
    (reduce(m.to_vec(), Some(&mut aug)) == n).then_some(aug)
}

pub fn identity(n: usize) -> RationalMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn transpose(m: &[Vec<BigRational>]) -> RationalMatrix {
    let n = m.first().map_or(0, Vec::len);
    (0..n)
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn multiply(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> RationalMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigRational::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}
