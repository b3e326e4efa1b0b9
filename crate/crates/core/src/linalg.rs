//! Exact dense linear algebra over the rationals.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{dot, IndexSet, RatMatrix};
use crate::rational::{denominator_lcm, Rational};

/// Determinant by fraction-free (Bareiss) elimination.
///
/// Each row is scaled to integers first, so the elimination runs on
/// `BigInt` and every intermediate division is exact.
pub fn det(a: &RatMatrix) -> Result<Rational> {
    let n = a.require_square()?;
    let mut scale = BigInt::one();
    let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for i in 0..n {
        let row = a.row(i);
        let l = denominator_lcm(row);
        m.push(
            row.iter()
                .map(|v| (v * Rational::from_integer(l.clone())).to_integer())
                .collect(),
        );
        scale *= l;
    }
    let d = bareiss(&mut m);
    Ok(Rational::new(d, scale))
}

fn bareiss(m: &mut [Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

pub fn principal_submatrix(a: &RatMatrix, s: &IndexSet) -> Result<RatMatrix> {
    let n = a.require_square()?;
    check_set(s, n)?;
    Ok(a.select(s.as_slice(), s.as_slice()))
}

pub fn minor(a: &RatMatrix, rows: &IndexSet, cols: &IndexSet) -> Result<Rational> {
    if rows.len() != cols.len() {
        return Err(Error::IndexSet(format!(
            "row set has {} indices, column set has {}",
            rows.len(),
            cols.len()
        )));
    }
    check_set(rows, a.rows())?;
    check_set(cols, a.cols())?;
    det(&a.select(rows.as_slice(), cols.as_slice()))
}

fn check_set(s: &IndexSet, n: usize) -> Result<()> {
    if s.is_empty() {
        return Err(Error::IndexSet("empty index set".into()));
    }
    if s.as_slice().iter().any(|&i| i >= n) {
        return Err(Error::IndexSet(format!("{s} out of range for dimension {n}")));
    }
    Ok(())
}

/// Gauss–Jordan inverse; a singular input reports its (zero) determinant.
pub fn inverse(a: &RatMatrix) -> Result<RatMatrix> {
    let n = a.require_square()?;
    let mut aug = RatMatrix::block(
        a,
        &RatMatrix::identity(n),
        &RatMatrix::zeros(1, n),
        &RatMatrix::zeros(1, n),
    )?;
    let r = rref_in_place(&mut aug, n);
    if r.len() < n {
        return Err(Error::Singular {
            det: Rational::zero(),
        });
    }
    Ok(aug.select(&(0..n).collect::<Vec<_>>(), &(n..2 * n).collect::<Vec<_>>()))
}

/// Solves `A x = b` for square nonsingular `A`.
pub fn solve(a: &RatMatrix, b: &[Rational]) -> Result<Vec<Rational>> {
    Ok(inverse(a)?.mul_vec(b))
}

/// Reduces the first `limit` columns in place and returns the pivot columns.
fn rref_in_place(m: &mut RatMatrix, limit: usize) -> Vec<usize> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..limit.min(cols) {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                let tmp = m[(p, j)].clone();
                m[(p, j)] = m[(r, j)].clone();
                m[(r, j)] = tmp;
            }
        }
        let inv = m[(r, c)].recip();
        for j in 0..cols {
            if !m[(r, j)].is_zero() {
                m[(r, j)] *= &inv;
            }
        }
        for i in 0..rows {
            if i == r || m[(i, c)].is_zero() {
                continue;
            }
            let f = m[(i, c)].clone();
            for j in 0..cols {
                if !m[(r, j)].is_zero() {
                    let d = &f * &m[(r, j)];
                    m[(i, j)] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

#[derive(Clone, Debug, PartialEq)]
pub struct Rref {
    pub reduced: RatMatrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn rref(a: &RatMatrix) -> Rref {
    let mut m = a.clone();
    let pivots = rref_in_place(&mut m, a.cols());
    Rref { reduced: m, pivots }
}

pub fn rank(a: &RatMatrix) -> usize {
    rref(a).rank()
}

/// One basis vector per free column, read off the reduced form.
pub fn nullspace_basis(a: &RatMatrix) -> Vec<Vec<Rational>> {
    let r = rref(a);
    let n = a.cols();
    (0..n)
        .filter(|c| !r.pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); n];
            v[free] = Rational::one();
            for (row, &p) in r.pivots.iter().enumerate() {
                v[p] = -r.reduced[(row, free)].clone();
            }
            v
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct FullRankFactorization {
    pub f: RatMatrix,
    pub g: RatMatrix,
    pub rank: usize,
}

impl FullRankFactorization {
    /// Accepts any pair with `F·G = A` and both factors of full rank.
    pub fn from_parts(a: &RatMatrix, f: RatMatrix, g: RatMatrix) -> Result<Self> {
        let r = f.cols();
        if g.rows() != r || f.rows() != a.rows() || g.cols() != a.cols() {
            return Err(Error::Dimension("factor shapes do not match".into()));
        }
        if &f * &g != *a {
            return Err(Error::Postcondition("F·G differs from the matrix".into()));
        }
        if rank(&f) != r || rank(&g) != r {
            return Err(Error::Postcondition("factor is rank deficient".into()));
        }
        Ok(Self { f, g, rank: r })
    }
}

/// `F` = pivot columns of `A`, `G` = nonzero rows of its reduced form.
pub fn full_rank_factorization(a: &RatMatrix) -> Result<FullRankFactorization> {
    if a.is_zero() {
        return Err(Error::ZeroMatrix);
    }
    let r = rref(a);
    let k = r.rank();
    let f = a.select(&(0..a.rows()).collect::<Vec<_>>(), &r.pivots);
    let g = r
        .reduced
        .select(&(0..k).collect::<Vec<_>>(), &(0..a.cols()).collect::<Vec<_>>());
    FullRankFactorization::from_parts(a, f, g)
}

/// Strong connectivity of the digraph `i -> j` for `i != j`, `a_ij != 0`.
pub fn is_irreducible(a: &RatMatrix) -> bool {
    let n = a.rows();
    assert!(a.is_square(), "irreducibility needs a square matrix");
    if n == 1 {
        return true;
    }
    let reach = |forward: bool| {
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for v in 0..n {
                let e = if forward { &a[(u, v)] } else { &a[(v, u)] };
                if v != u && !seen[v] && !e.is_zero() {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    };
    reach(true) && reach(false)
}

pub fn comparison_matrix(a: &RatMatrix) -> RatMatrix {
    let mut m = a.abs();
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            if i != j {
                m[(i, j)] = -m[(i, j)].clone();
            }
        }
    }
    m
}

/// `(A + u vᵀ)⁻¹` from `A⁻¹`.
pub fn sherman_morrison(ainv: &RatMatrix, u: &[Rational], v: &[Rational]) -> Result<RatMatrix> {
    let n = ainv.require_square()?;
    if u.len() != n || v.len() != n {
        return Err(Error::Dimension("update vectors must match the matrix".into()));
    }
    let au = ainv.mul_vec(u);
    let va = ainv.transpose().mul_vec(v);
    let denom = Rational::one() + dot(v, &au);
    if denom.is_zero() {
        return Err(Error::NotInvertible);
    }
    let outer = &RatMatrix::column(&au) * &RatMatrix::row_vector(&va);
    Ok(ainv - &outer.scale(&denom.recip()))
}

/// Entries with `|i - j| >= 2` are all zero.
pub fn is_tridiagonal(a: &RatMatrix) -> bool {
    a.find(|i, j, v| i.abs_diff(j) >= 2 && !v.is_zero()).is_none()
}

pub fn is_nonnegative(a: &RatMatrix) -> bool {
    a.all(|v| !v.is_negative())
}

pub fn is_nonpositive(a: &RatMatrix) -> bool {
    a.all(|v| !v.is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn section5() -> RatMatrix {
        RatMatrix::from_i64(&[&[3, -2, -2], &[-2, -1, -1], &[-2, -1, 0]])
    }

    fn type_d4() -> RatMatrix {
        RatMatrix::from_i64(&[
            &[-3, -3, -3, -3],
            &[-3, -2, -2, -2],
            &[-3, -2, -1, -1],
            &[-3, -2, -1, 1],
        ])
    }

    fn cofactor_det(a: &RatMatrix) -> Rational {
        let n = a.rows();
        if n == 1 {
            return a[(0, 0)].clone();
        }
        (0..n)
            .map(|j| {
                let rest: Vec<usize> = (0..n).filter(|&c| c != j).collect();
                let sub = a.select(&(1..n).collect::<Vec<_>>(), &rest);
                let s = if j % 2 == 0 { int(1) } else { int(-1) };
                s * &a[(0, j)] * cofactor_det(&sub)
            })
            .sum()
    }

    #[test]
    fn determinants() {
        assert_eq!(det(&RatMatrix::identity(3)).unwrap(), int(1));
        // cofactor expansion along the first row: 3(0-1) + 2(0-2) - 2(2-2) = -7
        assert_eq!(det(&section5()).unwrap(), int(-7));
        let lead = RatMatrix::from_i64(&[&[0, -1, -1], &[-1, 0, 0], &[-1, 0, 0]]);
        assert_eq!(det(&lead).unwrap(), int(0));
        assert!(det(&RatMatrix::zeros(2, 3)).is_err());
        let fr = RatMatrix::from_rows(vec![
            vec![frac(1, 2), frac(1, 3)],
            vec![frac(-2, 5), frac(7, 4)],
        ])
        .unwrap();
        assert_eq!(det(&fr).unwrap(), cofactor_det(&fr));
    }

    #[test]
    fn needs_pivoting() {
        let a = RatMatrix::from_i64(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]);
        assert_eq!(det(&a).unwrap(), cofactor_det(&a));
    }

    #[test]
    fn submatrices_and_minors() {
        let a = RatMatrix::from_i64(&[&[2, -4, -1], &[-2, 4, -1], &[-2, -2, 1]]);
        let s = IndexSet::new(vec![0, 1], 3).unwrap();
        assert_eq!(
            principal_submatrix(&a, &s).unwrap(),
            RatMatrix::from_i64(&[&[2, -4], &[-2, 4]])
        );
        let one = IndexSet::new(vec![2], 3).unwrap();
        assert_eq!(principal_submatrix(&a, &one).unwrap(), RatMatrix::from_i64(&[&[1]]));
        assert!(principal_submatrix(&a, &IndexSet::new(vec![], 3).unwrap()).is_err());

        let i3 = RatMatrix::identity(3);
        let r = IndexSet::new(vec![0], 3).unwrap();
        let c = IndexSet::new(vec![1], 3).unwrap();
        assert_eq!(minor(&i3, &r, &c).unwrap(), int(0));
        let d = type_d4();
        let s01 = IndexSet::new(vec![0, 1], 4).unwrap();
        assert_eq!(minor(&d, &s01, &s01).unwrap(), int(-3));
        assert!(minor(&d, &s01, &r).is_err());
    }

    #[test]
    fn inverses() {
        let inv = inverse(&section5()).unwrap();
        let expect = RatMatrix::from_i64(&[&[1, -2, 0], &[-2, 4, -7], &[0, -7, 7]])
            .scale(&frac(1, 7));
        assert_eq!(inv, expect);
        assert_eq!(&section5() * &inv, RatMatrix::identity(3));

        let td = inverse(&type_d4()).unwrap();
        let expect = RatMatrix::from_rows(vec![
            vec![frac(2, 3), int(-1), int(0), int(0)],
            vec![int(-1), int(2), int(-1), int(0)],
            vec![int(0), int(-1), frac(3, 2), frac(-1, 2)],
            vec![int(0), int(0), frac(-1, 2), frac(1, 2)],
        ])
        .unwrap();
        assert_eq!(td, expect);
        assert!(is_tridiagonal(&td));
        assert_eq!(inverse(&RatMatrix::identity(4)).unwrap(), RatMatrix::identity(4));
        assert!(matches!(
            inverse(&RatMatrix::from_i64(&[&[1, 2], &[2, 4]])),
            Err(Error::Singular { .. })
        ));
    }

    #[test]
    fn rank_and_nullspace() {
        let m = RatMatrix::from_i64(&[
            &[2, -4, -1, -1],
            &[-2, 4, -1, -4],
            &[-2, -2, 1, -6],
            &[0, 0, 0, 0],
        ]);
        assert_eq!(rank(&m), 3);
        let ns = nullspace_basis(&m);
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        let s = v[0].clone() / int(37);
        let want: Vec<Rational> = [37, 14, 30, -12].iter().map(|&x| int(x) * &s).collect();
        assert_eq!(v, &want);

        assert_eq!(rank(&RatMatrix::identity(3)), 3);
        assert!(nullspace_basis(&RatMatrix::identity(3)).is_empty());
        let z = RatMatrix::zeros(2, 2);
        assert_eq!(rank(&z), 0);
        assert_eq!(
            nullspace_basis(&z),
            vec![vec![int(1), int(0)], vec![int(0), int(1)]]
        );
    }

    #[test]
    fn factorizations() {
        let r1 = RatMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        let frf = full_rank_factorization(&r1).unwrap();
        assert_eq!(frf.f, RatMatrix::from_i64(&[&[1], &[2]]));
        assert_eq!(frf.g, RatMatrix::from_i64(&[&[1, 2]]));
        assert_eq!(full_rank_factorization(&RatMatrix::zeros(2, 2)), Err(Error::ZeroMatrix));

        let a = RatMatrix::from_i64(&[&[0, -1], &[-1, 0]]);
        let lead = RatMatrix::from_i64(&[&[0, -1, -1], &[-1, 0, 0], &[-1, 0, 0]]);
        let f = RatMatrix::from_i64(&[&[0, -1], &[-1, 0], &[-1, 0]]);
        let ainv_b = inverse(&a).unwrap().mul_vec(&[int(-1), int(0)]);
        let g = RatMatrix::block(
            &RatMatrix::identity(2),
            &RatMatrix::column(&ainv_b),
            &RatMatrix::zeros(1, 2),
            &RatMatrix::zeros(1, 1),
        )
        .unwrap()
        .select(&[0, 1], &[0, 1, 2]);
        assert!(FullRankFactorization::from_parts(&lead, f, g).is_ok());

        let inv = section5();
        let frf = full_rank_factorization(&inv).unwrap();
        assert_eq!(frf.rank, 3);
        assert_eq!(frf.g, RatMatrix::identity(3));
    }

    #[test]
    fn irreducibility() {
        let lead = RatMatrix::from_i64(&[&[0, -1, -1], &[-1, 0, 0], &[-1, 0, 0]]);
        assert!(is_irreducible(&lead));
        let red = RatMatrix::from_i64(&[&[1, -2, -1], &[-3, 1, -2], &[0, 0, 0]]);
        assert!(!is_irreducible(&red));
        assert!(!is_irreducible(&RatMatrix::identity(2)));
        assert!(is_irreducible(&RatMatrix::from_i64(&[&[0]])));
    }

    #[test]
    fn comparison() {
        let c = comparison_matrix(&section5());
        assert_eq!(c, RatMatrix::from_i64(&[&[3, -2, -2], &[-2, 1, -1], &[-2, -1, 0]]));
        assert_eq!(det(&c).unwrap(), int(-15));
        let z = RatMatrix::from_i64(&[&[0, -1, -1], &[-1, 0, 0], &[-1, 0, 0]]);
        assert_eq!(comparison_matrix(&z), z);
        assert_eq!(comparison_matrix(&RatMatrix::identity(2)), RatMatrix::identity(2));
    }

    #[test]
    fn rank_one_update() {
        let i2 = RatMatrix::identity(2);
        let zero = vec![int(0), int(0)];
        let e1 = vec![int(1), int(0)];
        assert_eq!(sherman_morrison(&i2, &zero, &e1).unwrap(), i2);
        assert_eq!(
            sherman_morrison(&i2, &e1, &e1).unwrap(),
            RatMatrix::diagonal(&[frac(1, 2), int(1)])
        );
        let i1 = RatMatrix::identity(1);
        assert_eq!(
            sherman_morrison(&i1, &[int(-1)], &[int(1)]),
            Err(Error::NotInvertible)
        );
    }
}
