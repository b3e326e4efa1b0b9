#![allow(dead_code)]

use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use zclass_core::construct::EntryBounds;
use zclass_core::rational::frac;
use zclass_core::{RatMatrix, Rational};

pub fn q(p: i64, d: i64) -> Rational {
    frac(p, d)
}

pub fn m(rows: &[&[i64]]) -> RatMatrix {
    RatMatrix::from_i64(rows)
}

/// Rows of `(numerator, denominator)` pairs.
pub fn mq(rows: &[&[(i64, i64)]]) -> RatMatrix {
    RatMatrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&(p, d)| frac(p, d)).collect())
            .collect(),
    )
    .unwrap()
}

pub fn lead() -> RatMatrix {
    m(&[&[0, -1, -1], &[-1, 0, 0], &[-1, 0, 0]])
}

pub fn mpcounter() -> RatMatrix {
    m(&[
        &[2, -4, -1, -1],
        &[-2, 4, -1, -4],
        &[-2, -2, 1, -6],
        &[0, 0, 0, 0],
    ])
}

/// Random `rows x cols` matrix of rank at most `r`, as a product of two
/// random factors, so rank-deficient inputs are common.
pub fn random_low_rank(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> RatMatrix {
    let bounds = EntryBounds {
        max_numer: 5,
        max_denom: 3,
    };
    let r = rng.gen_range(1..=rows.min(cols));
    let mut f = RatMatrix::zeros(rows, r);
    let mut g = RatMatrix::zeros(r, cols);
    for i in 0..rows {
        for j in 0..r {
            f[(i, j)] = bounds.any(rng);
        }
    }
    for i in 0..r {
        for j in 0..cols {
            g[(i, j)] = bounds.any(rng);
        }
    }
    &f * &g
}

/// Random matrix with independent entries, zero with probability 1/4.
pub fn random_dense(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> RatMatrix {
    let bounds = EntryBounds::default();
    let mut a = RatMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            a[(i, j)] = if rng.gen_ratio(1, 4) {
                Rational::zero()
            } else {
                bounds.any(rng)
            };
        }
    }
    a
}

/// Cofactor-expansion determinant, independent of the library's elimination.
pub fn cofactor_det(a: &RatMatrix) -> Rational {
    let n = a.rows();
    if n == 0 {
        return Rational::from_integer(1.into());
    }
    if n == 1 {
        return a[(0, 0)].clone();
    }
    let mut acc = Rational::zero();
    for j in 0..n {
        if a[(0, j)].is_zero() {
            continue;
        }
        let rows: Vec<usize> = (1..n).collect();
        let cols: Vec<usize> = (0..n).filter(|&k| k != j).collect();
        let minor = cofactor_det(&a.select(&rows, &cols));
        let term = &a[(0, j)] * minor;
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Every principal minor of order `>= lo`, by cofactor expansion.
pub fn principal_minors(a: &RatMatrix, lo: usize) -> Vec<Rational> {
    let n = a.rows();
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        if idx.len() >= lo {
            out.push(cofactor_det(&a.select(&idx, &idx)));
        }
    }
    out
}

/// `|i - j| >= 2` entries are exactly zero.
pub fn is_tridiagonal(a: &RatMatrix) -> bool {
    a.find(|i, j, v| i.abs_diff(j) >= 2 && !v.is_zero()).is_none()
}
