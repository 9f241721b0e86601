//! Seeded generators of small exact matrices.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;

use crate::evaluation::linalg::{self, RationalMatrix};

fn small_rational<R: Rng>(rng: &mut R) -> BigRational {
    let n: i64 = rng.random_range(-4..=4);
    let d: i64 = rng.random_range(1..=3);
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn random_matrix<R: Rng>(rng: &mut R, dim: usize) -> RationalMatrix {
    (0..dim)
        .map(|_| (0..dim).map(|_| small_rational(rng)).collect())
        .collect()
}

/// Rejection-samples until the matrix has full rank.
pub fn random_invertible<R: Rng>(rng: &mut R, dim: usize) -> RationalMatrix {
    loop {
        let m = random_matrix(rng, dim);
        if linalg::rank(&m) == dim {
            return m;
        }
    }
}

/// A matrix of rank below `dim`: the last row is a combination of the others
/// (all zero when `dim == 1`).
pub fn random_singular<R: Rng>(rng: &mut R, dim: usize) -> RationalMatrix {
    let mut m = random_matrix(rng, dim);
    let coeffs: Vec<BigRational> = (0..dim.saturating_sub(1))
        .map(|_| small_rational(rng))
        .collect();
    let last: Vec<BigRational> = (0..dim)
        .map(|j| {
            coeffs
                .iter()
                .enumerate()
                .fold(BigRational::zero(), |acc, (i, c)| acc + c * &m[i][j])
        })
        .collect();
    m[dim - 1] = last;
    debug_assert!(linalg::rank(&m) < dim);
    m
}

/// The matrix `g` with `g^T f = 1`, i.e. the transpose of the inverse.
pub fn dual_inverse(f: &[Vec<BigRational>]) -> Option<RationalMatrix> {
    linalg::inverse(f).map(|inv| linalg::transpose(&inv))
}
