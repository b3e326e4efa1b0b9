//! Dense row-major matrices of exact rationals and principal index sets.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension(format!("empty matrix {rows}x{cols}")));
        }
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Convenience for literals; panics on ragged or empty input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| crate::rational::int(v)).collect())
                .collect(),
        )
        .expect("well-formed literal")
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0);
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn diagonal(d: &[Rational]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, v) in d.iter().enumerate() {
            m[(i, i)] = v.clone();
        }
        m
    }

    pub fn column(v: &[Rational]) -> Self {
        Self::new(v.len(), 1, v.to_vec()).expect("nonempty column")
    }

    pub fn row_vector(v: &[Rational]) -> Self {
        Self::new(1, v.len(), v.to_vec()).expect("nonempty row")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn map(&self, f: impl Fn(&Rational) -> Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        self.map(|v| v * s)
    }

    pub fn abs(&self) -> Self {
        self.map(|v| v.abs())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn all(&self, pred: impl Fn(&Rational) -> bool) -> bool {
        self.data.iter().all(pred)
    }

    /// First `(i, j)` whose entry fails `pred`, scanning row-major.
    pub fn find(&self, pred: impl Fn(usize, usize, &Rational) -> bool) -> Option<(usize, usize)> {
        (0..self.rows)
            .flat_map(|i| (0..self.cols).map(move |j| (i, j)))
            .find(|&(i, j)| pred(i, j, &self[(i, j)]))
    }

    /// Entrywise `self <= other`.
    pub fn le(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data.iter().zip(&other.data).all(|(a, b)| a <= b)
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)].clone())
            .sum()
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| dot(self.row(i), v))
            .collect()
    }

    /// Rows `rs` and columns `cs`, in the given order.
    pub fn select(&self, rs: &[usize], cs: &[usize]) -> Self {
        let mut out = Vec::with_capacity(rs.len() * cs.len());
        for &i in rs {
            for &j in cs {
                out.push(self[(i, j)].clone());
            }
        }
        Self::new(rs.len(), cs.len(), out).expect("nonempty selection")
    }

    /// `[[self, right], [bottom, corner]]`.
    pub fn block(tl: &Self, tr: &Self, bl: &Self, br: &Self) -> Result<Self> {
        if tl.rows != tr.rows || bl.rows != br.rows || tl.cols != bl.cols || tr.cols != br.cols {
            return Err(Error::Dimension("incompatible blocks".into()));
        }
        let rows = tl.rows + bl.rows;
        let cols = tl.cols + tr.cols;
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = match (i < tl.rows, j < tl.cols) {
                    (true, true) => tl[(i, j)].clone(),
                    (true, false) => tr[(i, j - tl.cols)].clone(),
                    (false, true) => bl[(i - tl.rows, j)].clone(),
                    (false, false) => br[(i - tl.rows, j - tl.cols)].clone(),
                };
            }
        }
        Ok(m)
    }

    /// `P A P^T` where row `i` of the result is row `perm[i]` of `self`.
    pub fn permute_symmetric(&self, perm: &[usize]) -> Self {
        self.select(perm, perm)
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        &mut self.data[i * self.cols + j]
    }
}

impl<'a> Mul<&'a RatMatrix> for &'a RatMatrix {
    type Output = RatMatrix;
    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        self.checked_mul(rhs).expect("matrix product dimensions")
    }
}

impl<'a> Add<&'a RatMatrix> for &'a RatMatrix {
    type Output = RatMatrix;
    fn add(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a RatMatrix> for &'a RatMatrix {
    type Output = RatMatrix;
    fn sub(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &RatMatrix {
    type Output = RatMatrix;
    fn neg(self) -> RatMatrix {
        self.map(|v| -v)
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", format_rational(&self[(i, j)]))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

pub fn vec_is_zero(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Sorted, distinct indices below a parent dimension.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn new(mut idx: Vec<usize>, parent: usize) -> Result<Self> {
        idx.sort_unstable();
        if idx.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::IndexSet(format!("duplicate index in {idx:?}")));
        }
        if let Some(&i) = idx.iter().find(|&&i| i >= parent) {
            return Err(Error::IndexSet(format!("index {i} out of range for dimension {parent}")));
        }
        Ok(Self(idx))
    }

    pub fn full(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn from_mask(mask: u32, n: usize) -> Self {
        Self((0..n).filter(|i| mask >> i & 1 == 1).collect())
    }

    pub fn mask(&self) -> u32 {
        self.0.iter().fold(0, |m, &i| m | 1 << i)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn complement(&self, n: usize) -> Self {
        Self((0..n).filter(|i| !self.0.contains(i)).collect())
    }

    /// All index sets of size `k` in `[0, n)`, lexicographic.
    pub fn subsets(n: usize, k: usize) -> impl Iterator<Item = IndexSet> {
        use itertools::Itertools;
        (0..n).combinations(k).map(IndexSet)
    }

    /// All nonempty index sets, by size then lexicographic.
    pub fn all_nonempty(n: usize) -> impl Iterator<Item = IndexSet> {
        (1..=n).flat_map(move |k| Self::subsets(n, k))
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn construction_guards() {
        assert!(RatMatrix::new(0, 2, vec![]).is_err());
        assert!(RatMatrix::new(2, 2, vec![int(1)]).is_err());
        assert!(RatMatrix::from_rows(vec![vec![int(1)], vec![int(1), int(2)]]).is_err());
    }

    #[test]
    fn product_and_transpose() {
        let a = RatMatrix::from_i64(&[&[1, 2], &[3, 4]]);
        let b = RatMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(&a * &b, RatMatrix::from_i64(&[&[2, 1], &[4, 3]]));
        assert_eq!(a.transpose(), RatMatrix::from_i64(&[&[1, 3], &[2, 4]]));
        assert!(a.checked_mul(&RatMatrix::zeros(3, 1)).is_err());
    }

    #[test]
    fn index_sets() {
        assert!(IndexSet::new(vec![1, 1], 3).is_err());
        assert!(IndexSet::new(vec![3], 3).is_err());
        let s = IndexSet::new(vec![2, 0], 3).unwrap();
        assert_eq!(s.as_slice(), &[0, 2]);
        assert_eq!(s.complement(3).as_slice(), &[1]);
        assert_eq!(IndexSet::from_mask(s.mask(), 3), s);
        assert_eq!(IndexSet::all_nonempty(3).count(), 7);
        let order: Vec<_> = IndexSet::subsets(3, 2).map(|s| s.as_slice().to_vec()).collect();
        assert_eq!(order, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn blocks() {
        let a = RatMatrix::from_i64(&[&[1]]);
        let m = RatMatrix::block(
            &a,
            &RatMatrix::from_i64(&[&[2]]),
            &RatMatrix::from_i64(&[&[3]]),
            &RatMatrix::from_i64(&[&[4]]),
        )
        .unwrap();
        assert_eq!(m, RatMatrix::from_i64(&[&[1, 2], &[3, 4]]));
    }
}
