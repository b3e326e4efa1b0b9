//! Rational polynomials, characteristic polynomials and Sturm root counts.

use num_traits::{One, Signed, Zero};

use crate::matrix::RatMatrix;
use crate::rational::{int, Rational};

/// Coefficients in ascending order of degree, with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly(Vec<Rational>);

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.0.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    /// Remainder of division by a nonzero divisor.
    pub fn rem(&self, d: &Poly) -> Poly {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.leading();
        let mut r = self.0.clone();
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1;
            let f = &r[k] / &lead;
            if !f.is_zero() {
                for (i, c) in d.0.iter().enumerate() {
                    r[k - dd + i] -= &f * c;
                }
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        Poly::new(r)
    }

    /// Divides out the largest power of `x`; returns the quotient and the power.
    pub fn strip_zero_roots(&self) -> (Poly, usize) {
        let k = self.0.iter().take_while(|c| c.is_zero()).count();
        (Poly::new(self.0[k.min(self.0.len())..].to_vec()), k)
    }
}

/// `det(λI − A)` by the Faddeev–LeVerrier recursion.
pub fn charpoly(a: &RatMatrix) -> Poly {
    let n = a.rows();
    assert!(a.is_square(), "characteristic polynomial of a non-square matrix");
    let mut c = vec![Rational::zero(); n + 1];
    c[n] = Rational::one();
    let mut m = RatMatrix::zeros(n, n);
    let id = RatMatrix::identity(n);
    for k in 1..=n {
        m = &(a * &m) + &id.scale(&c[n - k + 1]);
        let am = a * &m;
        c[n - k] = -am.trace() / int(k as i64);
    }
    Poly::new(c)
}

pub fn sturm_sequence(p: &Poly) -> Vec<Poly> {
    let mut seq = vec![p.clone()];
    let d = p.derivative();
    if d.is_zero() {
        return seq;
    }
    seq.push(d);
    loop {
        let k = seq.len();
        let r = seq[k - 2].rem(&seq[k - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(Poly::new(r.0.into_iter().map(|c| -c).collect()));
    }
    seq
}

#[derive(Clone, Copy, Debug)]
pub enum At<'a> {
    NegInf,
    Value(&'a Rational),
    PosInf,
}

fn sign_changes(seq: &[Poly], x: At<'_>) -> usize {
    let signs: Vec<i8> = seq
        .iter()
        .map(|p| {
            let v = match x {
                At::Value(x) => p.eval(x),
                At::PosInf => p.leading(),
                At::NegInf => {
                    if p.degree().unwrap_or(0) % 2 == 0 {
                        p.leading()
                    } else {
                        -p.leading()
                    }
                }
            };
            if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            }
        })
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Distinct real roots in `(lo, hi]`.
pub fn count_roots(p: &Poly, lo: At<'_>, hi: At<'_>) -> usize {
    if p.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let seq = sturm_sequence(p);
    sign_changes(&seq, lo).saturating_sub(sign_changes(&seq, hi))
}

pub fn negative_root_count(p: &Poly) -> usize {
    let (q, _) = p.strip_zero_roots();
    count_roots(&q, At::NegInf, At::Value(&Rational::zero()))
}

/// Distinct real roots strictly greater than `t`.
pub fn roots_above(p: &Poly, t: &Rational) -> usize {
    count_roots(p, At::Value(t), At::PosInf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::det;

    fn poly(c: &[i64]) -> Poly {
        Poly::new(c.iter().map(|&v| int(v)).collect())
    }

    #[test]
    fn charpoly_matches_determinant_oracle() {
        let a = RatMatrix::from_i64(&[&[2, -4, -1], &[-2, 4, -1], &[-2, -2, 1]]);
        let p = charpoly(&a);
        assert_eq!(p, poly(&[24, 2, -7, 1]));
        for lam in -3..=7 {
            let l = int(lam);
            let shifted = &RatMatrix::identity(3).scale(&l) - &a;
            assert_eq!(p.eval(&l), det(&shifted).unwrap());
        }
    }

    #[test]
    fn sturm_counts() {
        // (x+1)(x-2)(x-6)
        let p = poly(&[12, 4, -7, 1]);
        assert_eq!(negative_root_count(&p), 1);
        assert_eq!(roots_above(&p, &int(2)), 1);
        assert_eq!(roots_above(&p, &int(1)), 2);
        // x^2 (x+1)^2 : distinct negative roots counted once
        let q = poly(&[0, 0, 1, 2, 1]);
        assert_eq!(negative_root_count(&q), 1);
        // x^2 + 1 has no real roots
        assert_eq!(count_roots(&poly(&[1, 0, 1]), At::NegInf, At::PosInf), 0);
        assert_eq!(negative_root_count(&poly(&[-1, 0, 1])), 1);
    }

    #[test]
    fn remainder() {
        let r = poly(&[-1, 0, 1]).rem(&poly(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(poly(&[1, 0, 1]).rem(&poly(&[0, 1])), poly(&[1]));
    }
}
