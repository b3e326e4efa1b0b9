//! Spectral radius brackets by exact bisection.
//!
//! For `B >= 0`, `sI - B` is an invertible M-matrix exactly when `s > ρ(B)`,
//! so that predicate drives a bisection on `s` without ever touching an
//! eigenvalue. A midpoint where `sI - B` is a singular M-matrix is `ρ(B)`
//! itself and collapses the bracket.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use super::{invertible_m_verdict, m_verdict, Subject};
use crate::error::{Error, Result};
use crate::linalg::is_nonnegative;
use crate::matrix::{IndexSet, RatMatrix};
use crate::poly::{charpoly, roots_above};
use crate::rational::{int, pow2_neg, Rational};

pub const DEFAULT_PRECISION_BITS: u32 = 30;
pub const ESCALATED_PRECISION_BITS: u32 = 60;

/// `lo <= ρ < hi`, or `lo == hi == ρ` once an exact hit was found.
#[derive(Clone, Debug, PartialEq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn exact(v: Rational) -> Self {
        Self {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    /// Position of `t` relative to the bracketed value, when the bracket decides it.
    pub fn compare(&self, t: &Rational) -> Option<Ordering> {
        if self.is_exact() {
            Some(t.cmp(&self.lo))
        } else if *t < self.lo {
            Some(Ordering::Less)
        } else if *t >= self.hi {
            Some(Ordering::Greater)
        } else {
            None
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralDiagnostics {
    pub rho: Interval,
    /// Brackets for the largest spectral radius over order-`r` principal submatrices.
    pub rho_r: BTreeMap<usize, Interval>,
    pub precision: Rational,
}

fn shifted(b: &RatMatrix, s: &Rational) -> RatMatrix {
    &RatMatrix::identity(b.rows()).scale(s) - b
}

/// Brackets `ρ(B)` to within `precision`.
pub fn spectral_radius(b: &RatMatrix, precision: &Rational) -> Result<Interval> {
    let n = b.require_square()?;
    if !is_nonnegative(b) {
        return Err(Error::Precondition("spectral bisection needs B >= 0".into()));
    }
    if !precision.is_positive() {
        return Err(Error::Precondition("precision must be positive".into()));
    }
    let max_row: Rational = (0..n)
        .map(|i| b.row(i).iter().cloned().sum::<Rational>())
        .max()
        .unwrap_or_else(Rational::zero);
    let mut lo = Rational::zero();
    let mut hi = max_row + int(1);
    if is_exact_hit(b, &lo)? {
        return Ok(Interval::exact(lo));
    }
    let two = int(2);
    while &hi - &lo > *precision {
        let mid = (&lo + &hi) / &two;
        if is_exact_hit(b, &mid)? {
            return Ok(Interval::exact(mid));
        }
        if invertible_m_verdict(&Subject::new(&shifted(b, &mid))?)?.holds {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Interval { lo, hi })
}

fn is_exact_hit(b: &RatMatrix, s: &Rational) -> Result<bool> {
    let subject = Subject::new(&shifted(b, s))?;
    Ok(subject.det().is_zero() && m_verdict(&subject)?.holds)
}

pub fn spectral_diagnostics(b: &RatMatrix, precision: &Rational) -> Result<SpectralDiagnostics> {
    let n = b.require_square()?;
    let rho = spectral_radius(b, precision)?;
    let mut rho_r = BTreeMap::new();
    for r in 1..n {
        let mut best: Option<Interval> = None;
        for s in IndexSet::subsets(n, r) {
            let iv = spectral_radius(&b.select(s.as_slice(), s.as_slice()), precision)?;
            best = Some(match best {
                None => iv,
                Some(cur) => Interval {
                    lo: cur.lo.max(iv.lo),
                    hi: cur.hi.max(iv.hi),
                },
            });
        }
        rho_r.insert(r, best.expect("at least one subset"));
    }
    rho_r.insert(n, rho.clone());
    Ok(SpectralDiagnostics {
        rho,
        rho_r,
        precision: precision.clone(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectralVerdict {
    Holds,
    Fails,
    BoundaryUndecided,
}

impl SpectralVerdict {
    pub fn as_bool(self) -> Option<bool> {
        match self {
            SpectralVerdict::Holds => Some(true),
            SpectralVerdict::Fails => Some(false),
            SpectralVerdict::BoundaryUndecided => None,
        }
    }
}

/// Orders `t` against `ρ(B)`: bisection at the default precision, then the
/// escalated one, then (if allowed) an exact Sturm count on `det(λI - B)`.
fn compare_to_radius(b: &RatMatrix, t: &Rational, exact_tiebreak: bool) -> Result<Option<Ordering>> {
    for bits in [DEFAULT_PRECISION_BITS, ESCALATED_PRECISION_BITS] {
        if let Some(o) = spectral_radius(b, &pow2_neg(bits))?.compare(t) {
            return Ok(Some(o));
        }
    }
    if !exact_tiebreak {
        return Ok(None);
    }
    // ρ(B) is the largest real eigenvalue of B >= 0.
    let p = charpoly(b);
    Ok(Some(if roots_above(&p, t) > 0 {
        Ordering::Less
    } else if p.eval(t).is_zero() {
        Ordering::Equal
    } else {
        Ordering::Greater
    }))
}

/// The F₀ test read through `A = tI - B`: `ρ_{n-2}(B) <= t < ρ_{n-1}(B)`,
/// with `t` the largest diagonal entry of `A`.
pub fn f0_spectral(a: &RatMatrix, exact_tiebreak: bool) -> Result<SpectralVerdict> {
    let n = a.require_square()?;
    if n < 3 {
        return Err(Error::DimensionTooSmall { n, min: 3 });
    }
    if a.find(|i, j, v| i != j && v.is_positive()).is_some() {
        return Ok(SpectralVerdict::Fails);
    }
    let t = (0..n).map(|i| a[(i, i)].clone()).max().expect("n >= 3");
    let b = &RatMatrix::identity(n).scale(&t) - a;
    let mut undecided = false;
    for s in IndexSet::subsets(n, n - 2) {
        let sub = b.select(s.as_slice(), s.as_slice());
        match compare_to_radius(&sub, &t, exact_tiebreak)? {
            Some(Ordering::Less) => return Ok(SpectralVerdict::Fails),
            Some(_) => {}
            None => undecided = true,
        }
    }
    let mut some_above = false;
    for s in IndexSet::subsets(n, n - 1) {
        let sub = b.select(s.as_slice(), s.as_slice());
        match compare_to_radius(&sub, &t, exact_tiebreak)? {
            Some(Ordering::Less) => {
                some_above = true;
                break;
            }
            Some(_) => {}
            None => undecided = true,
        }
    }
    Ok(match (some_above, undecided) {
        (true, false) => SpectralVerdict::Holds,
        (false, false) => SpectralVerdict::Fails,
        _ => SpectralVerdict::BoundaryUndecided,
    })
}

/// The M test read through `A = tI - B`: `t >= ρ(B)`.
pub fn m_spectral(a: &RatMatrix, exact_tiebreak: bool) -> Result<SpectralVerdict> {
    let n = a.require_square()?;
    if a.find(|i, j, v| i != j && v.is_positive()).is_some() {
        return Ok(SpectralVerdict::Fails);
    }
    let t = (0..n).map(|i| a[(i, i)].clone()).max().expect("n >= 1");
    let b = &RatMatrix::identity(n).scale(&t) - a;
    Ok(match compare_to_radius(&b, &t, exact_tiebreak)? {
        Some(Ordering::Less) => SpectralVerdict::Fails,
        Some(_) => SpectralVerdict::Holds,
        None => SpectralVerdict::BoundaryUndecided,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn zero_matrix_radius() {
        let iv = spectral_radius(&RatMatrix::zeros(2, 2), &pow2_neg(30)).unwrap();
        assert_eq!(iv, Interval::exact(int(0)));
    }

    #[test]
    fn swap_radius() {
        let b = RatMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        let iv = spectral_radius(&b, &pow2_neg(30)).unwrap();
        assert!(iv.lo <= int(1) && int(1) <= iv.hi);
        assert!(iv.width() <= pow2_neg(30));
    }

    #[test]
    fn irrational_radius_brackets() {
        // ρ = (1 + √5)/2
        let b = RatMatrix::from_i64(&[&[1, 1], &[1, 0]]);
        let iv = spectral_radius(&b, &pow2_neg(30)).unwrap();
        assert!(!iv.is_exact());
        assert!(iv.lo < frac(1619, 1000) && iv.hi > frac(1618, 1000));
        assert!(iv.width() <= pow2_neg(30));
    }

    #[test]
    fn rejects_negative_entries() {
        let b = RatMatrix::from_i64(&[&[0, -1], &[1, 0]]);
        assert!(spectral_radius(&b, &pow2_neg(10)).is_err());
    }

    #[test]
    fn diagnostics_for_f0() {
        let a = RatMatrix::from_i64(&[&[0, -1, -1], &[-1, 0, 0], &[-1, 0, 0]]);
        // t = 0, B = -A
        let b = a.map(|v| -v);
        let d = spectral_diagnostics(&b, &pow2_neg(30)).unwrap();
        let t = int(0);
        assert_ne!(d.rho_r[&1].compare(&t), Some(Ordering::Less));
        assert_eq!(d.rho_r[&2].compare(&t), Some(Ordering::Less));
        assert_eq!(f0_spectral(&a, true).unwrap(), SpectralVerdict::Holds);
        assert_eq!(
            f0_spectral(&RatMatrix::identity(3), true).unwrap(),
            SpectralVerdict::Fails
        );
    }

    #[test]
    fn m_spectral_examples() {
        let a = RatMatrix::from_i64(&[&[2, -1], &[-1, 2]]);
        assert_eq!(m_spectral(&a, true).unwrap(), SpectralVerdict::Holds);
        let s = RatMatrix::from_i64(&[&[1, -1], &[-1, 1]]);
        assert_eq!(m_spectral(&s, true).unwrap(), SpectralVerdict::Holds);
        let n = RatMatrix::from_i64(&[&[1, -2], &[-2, 1]]);
        assert_eq!(m_spectral(&n, true).unwrap(), SpectralVerdict::Fails);
    }
}
