//! Small linear complementarity problems: find `x >= 0` with
//! `y = Ax + q >= 0` and `xᵀy = 0`.
//!
//! Solutions are enumerated over complementary supports. Supports are visited
//! by size, then lexicographically, so outputs are deterministic.

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::io::vector_json;
use crate::linalg::{det, solve};
use crate::matrix::{dot, IndexSet, RatMatrix};
use crate::polyhedral::{feasibility_with_cap, Feasibility, PolyhedralSystem};
use crate::rational::Rational;

pub const MAX_LCP_DIM: usize = 10;
pub const MAX_PROPERTY_DIM: usize = 8;

#[derive(Clone, Debug, PartialEq)]
pub struct LcpInstance {
    pub a: RatMatrix,
    pub q: Vec<Rational>,
}

impl LcpInstance {
    pub fn new(a: RatMatrix, q: Vec<Rational>) -> Result<Self> {
        let n = a.require_square()?;
        if q.len() != n {
            return Err(Error::Dimension(format!(
                "q has {} entries for a {n}x{n} matrix",
                q.len()
            )));
        }
        Ok(Self { a, q })
    }

    pub fn n(&self) -> usize {
        self.q.len()
    }

    pub fn w(&self, x: &[Rational]) -> Vec<Rational> {
        self.a
            .mul_vec(x)
            .into_iter()
            .zip(&self.q)
            .map(|(v, q)| v + q)
            .collect()
    }

    /// `x >= 0`, `Ax + q >= 0` and `xᵀ(Ax + q) = 0`, checked from scratch.
    pub fn is_solution(&self, x: &[Rational]) -> bool {
        let y = self.w(x);
        x.len() == self.n()
            && x.iter().all(|v| !v.is_negative())
            && y.iter().all(|v| !v.is_negative())
            && dot(x, &y).is_zero()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LcpSolution {
    pub x: Vec<Rational>,
    pub y: Vec<Rational>,
    /// Supports `S` (with `y_S = 0`, `x` zero off `S`) that produced this `x`.
    pub supports: Vec<IndexSet>,
    /// Found on a support with singular `A_SS`; `x` represents a family.
    pub degenerate: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LcpOutcome {
    pub feasible: bool,
    pub feasible_point: Option<Vec<Rational>>,
    pub solutions: Vec<LcpSolution>,
}

impl LcpOutcome {
    pub fn to_json(&self) -> Value {
        json!({
            "feasible": self.feasible,
            "feasible_point": self.feasible_point.as_deref().map(vector_json),
            "solutions": self.solutions.iter().map(|s| json!({
                "x": vector_json(&s.x),
                "y": vector_json(&s.y),
                "supports": s.supports.iter().map(|t| t.as_slice().to_vec()).collect::<Vec<_>>(),
                "degenerate": s.degenerate,
            })).collect::<Vec<_>>(),
        })
    }
}

fn zero_vec(n: usize) -> Vec<Rational> {
    vec![Rational::zero(); n]
}

/// Supports by size, then lexicographic, starting with the empty one.
fn supports(n: usize) -> impl Iterator<Item = IndexSet> {
    (0..=n).flat_map(move |k| IndexSet::subsets(n, k))
}

fn scatter(s: &IndexSet, xs: &[Rational], n: usize) -> Vec<Rational> {
    let mut x = zero_vec(n);
    for (&i, v) in s.as_slice().iter().zip(xs) {
        x[i] = v.clone();
    }
    x
}

/// The feasible set FEA(A, q): `x >= 0`, `Ax + q >= 0`.
pub fn feasible_point(inst: &LcpInstance) -> Result<Feasibility> {
    let n = inst.n();
    let mut sys = PolyhedralSystem::new(n);
    for j in 0..n {
        sys.var_ge(j, Rational::zero());
    }
    for i in 0..n {
        sys.add_ge(inst.a.row(i).to_vec(), -inst.q[i].clone());
    }
    feasibility_with_cap(&sys, MAX_LCP_DIM)
}

pub fn solve_enumerate(inst: &LcpInstance) -> Result<LcpOutcome> {
    let n = inst.n();
    if n > MAX_LCP_DIM {
        return Err(Error::TooLarge {
            n,
            max: MAX_LCP_DIM,
        });
    }
    let fea = feasible_point(inst)?;
    let mut solutions: Vec<LcpSolution> = Vec::new();
    for s in supports(n) {
        let Some((x, degenerate)) = support_solution(inst, &s)? else {
            continue;
        };
        if !inst.is_solution(&x) {
            return Err(Error::Postcondition(format!(
                "support {s} produced a non-solution"
            )));
        }
        match solutions.iter_mut().find(|sol| sol.x == x) {
            Some(sol) => {
                sol.supports.push(s);
                sol.degenerate |= degenerate;
            }
            None => solutions.push(LcpSolution {
                y: inst.w(&x),
                x,
                supports: vec![s],
                degenerate,
            }),
        }
    }
    Ok(LcpOutcome {
        feasible: fea.is_feasible(),
        feasible_point: fea.witness().map(<[Rational]>::to_vec),
        solutions,
    })
}

/// A point with `x` supported in `S`, `y_S = 0`, `x_S >= 0`, `y >= 0`.
fn support_solution(inst: &LcpInstance, s: &IndexSet) -> Result<Option<(Vec<Rational>, bool)>> {
    let n = inst.n();
    let idx = s.as_slice();
    if idx.is_empty() {
        let x = zero_vec(n);
        return Ok(inst.q.iter().all(|v| !v.is_negative()).then_some((x, false)));
    }
    let a_ss = inst.a.select(idx, idx);
    if !det(&a_ss)?.is_zero() {
        let rhs: Vec<Rational> = idx.iter().map(|&i| -inst.q[i].clone()).collect();
        let xs = solve(&a_ss, &rhs)?;
        let x = scatter(s, &xs, n);
        let ok = xs.iter().all(|v| !v.is_negative())
            && inst.w(&x).iter().all(|v| !v.is_negative());
        return Ok(ok.then_some((x, false)));
    }
    let k = idx.len();
    let mut sys = PolyhedralSystem::new(k);
    for j in 0..k {
        sys.var_ge(j, Rational::zero());
    }
    for i in 0..n {
        let coeffs: Vec<Rational> = idx.iter().map(|&j| inst.a[(i, j)].clone()).collect();
        if idx.contains(&i) {
            sys.add_eq(coeffs, -inst.q[i].clone());
        } else {
            sys.add_ge(coeffs, -inst.q[i].clone());
        }
    }
    Ok(match feasibility_with_cap(&sys, MAX_LCP_DIM)? {
        Feasibility::Feasible(xs) => Some((scatter(s, &xs, n), true)),
        Feasibility::Infeasible(_) => None,
    })
}

/// `LCP(A, 0)` has only the trivial solution. A `false` verdict carries a
/// nonzero solution scaled so its entries sum to one.
pub fn is_r0(a: &RatMatrix) -> Result<(bool, Option<Vec<Rational>>)> {
    let n = a.require_square()?;
    if n > MAX_LCP_DIM {
        return Err(Error::TooLarge {
            n,
            max: MAX_LCP_DIM,
        });
    }
    let inst = LcpInstance::new(a.clone(), zero_vec(n))?;
    for s in supports(n).filter(|s| !s.is_empty()) {
        let idx = s.as_slice();
        if !det(&a.select(idx, idx))?.is_zero() {
            continue;
        }
        let k = idx.len();
        let mut sys = PolyhedralSystem::new(k);
        for j in 0..k {
            sys.var_ge(j, Rational::zero());
        }
        sys.add_eq(vec![Rational::one(); k], Rational::one());
        for i in 0..n {
            let coeffs: Vec<Rational> = idx.iter().map(|&j| a[(i, j)].clone()).collect();
            if idx.contains(&i) {
                sys.add_eq(coeffs, Rational::zero());
            } else {
                sys.add_ge(coeffs, Rational::zero());
            }
        }
        if let Feasibility::Feasible(xs) = feasibility_with_cap(&sys, MAX_LCP_DIM)? {
            let x = scatter(&s, &xs, n);
            debug_assert!(inst.is_solution(&x));
            return Ok((false, Some(x)));
        }
    }
    Ok((true, None))
}

/// Every nonzero `x >= 0` has some `k` with `x_k > 0` and `(Ax)_k >= 0`.
/// A `false` verdict carries an `x` with `(Ax)_k < 0` on its whole support.
pub fn is_semimonotone(a: &RatMatrix) -> Result<(bool, Option<Vec<Rational>>)> {
    let n = a.require_square()?;
    if n > MAX_PROPERTY_DIM {
        return Err(Error::TooLarge {
            n,
            max: MAX_PROPERTY_DIM,
        });
    }
    for s in supports(n).filter(|s| !s.is_empty()) {
        let idx = s.as_slice();
        let k = idx.len();
        let mut sys = PolyhedralSystem::new(k);
        for j in 0..k {
            sys.var_ge(j, Rational::one());
        }
        for &i in idx {
            let coeffs: Vec<Rational> = idx.iter().map(|&j| a[(i, j)].clone()).collect();
            sys.add_le(coeffs, -Rational::one());
        }
        if let Feasibility::Feasible(xs) = feasibility_with_cap(&sys, MAX_PROPERTY_DIM)? {
            return Ok((false, Some(scatter(&s, &xs, n))));
        }
    }
    Ok((true, None))
}

/// A vector `y >= 0`, `Σy = 1`, `Aᵀy <= 0`: the witness every matrix in
/// `Q₀ \ Q` must have.
pub fn q0_necessary_witness(a: &RatMatrix) -> Result<Option<Vec<Rational>>> {
    let n = a.require_square()?;
    if n > MAX_PROPERTY_DIM {
        return Err(Error::TooLarge {
            n,
            max: MAX_PROPERTY_DIM,
        });
    }
    let mut sys = PolyhedralSystem::new(n);
    for j in 0..n {
        sys.var_ge(j, Rational::zero());
    }
    sys.add_eq(vec![Rational::one(); n], Rational::one());
    for j in 0..n {
        sys.add_le(a.col(j), Rational::zero());
    }
    Ok(feasibility_with_cap(&sys, MAX_PROPERTY_DIM)?
        .witness()
        .map(<[Rational]>::to_vec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn identity_nonnegative_q() {
        let inst = LcpInstance::new(RatMatrix::identity(3), v(&[1, 0, 2])).unwrap();
        let out = solve_enumerate(&inst).unwrap();
        assert!(out.feasible);
        assert_eq!(out.solutions.len(), 1);
        assert_eq!(out.solutions[0].x, v(&[0, 0, 0]));
    }

    #[test]
    fn feasible_but_unsolvable() {
        let m = RatMatrix::from_i64(&[&[0, -1, -1], &[-1, 0, -1], &[0, 0, 0]]);
        let inst = LcpInstance::new(-&m, v(&[-1, 1, 1])).unwrap();
        let out = solve_enumerate(&inst).unwrap();
        assert!(out.feasible);
        assert!(out.solutions.is_empty());
        let mut fea = PolyhedralSystem::new(3);
        for j in 0..3 {
            fea.var_ge(j, int(0));
        }
        for i in 0..3 {
            fea.add_ge(inst.a.row(i).to_vec(), -inst.q[i].clone());
        }
        assert!(fea.satisfied_by(&v(&[1, 1, 0])));
    }

    #[test]
    fn degenerate_family() {
        // A = 0, q = 0: every x >= 0 solves; the representative is x = 0.
        let inst = LcpInstance::new(RatMatrix::zeros(2, 2), v(&[0, 0])).unwrap();
        let out = solve_enumerate(&inst).unwrap();
        assert_eq!(out.solutions.len(), 1);
        assert!(out.solutions[0].degenerate);
        assert_eq!(out.solutions[0].supports.len(), 4);
    }

    #[test]
    fn r0_examples() {
        assert_eq!(is_r0(&RatMatrix::identity(2)).unwrap(), (true, None));
        // singular F0 with b = 0
        let m = RatMatrix::from_i64(&[&[0, -1, 0], &[-1, 0, 0], &[-1, 0, 0]]);
        let (ok, w) = is_r0(&m).unwrap();
        assert!(!ok);
        assert_eq!(w.unwrap(), v(&[0, 0, 1]));
        let lead = RatMatrix::from_i64(&[&[0, -1, -1], &[-1, 0, 0], &[-1, 0, 0]]);
        assert!(is_r0(&lead).unwrap().0);
    }

    #[test]
    fn semimonotone_examples() {
        assert!(is_semimonotone(&RatMatrix::identity(3)).unwrap().0);
        let lead = RatMatrix::from_i64(&[&[0, -1, -1], &[-1, 0, 0], &[-1, 0, 0]]);
        let (ok, w) = is_semimonotone(&lead).unwrap();
        assert!(!ok);
        let x = w.unwrap();
        let ax = lead.mul_vec(&x);
        assert!((0..3).all(|k| x[k].is_zero() || ax[k].is_negative()));
        assert!(is_semimonotone(&RatMatrix::from_i64(&[&[1, 2], &[0, 3]])).unwrap().0);
    }

    #[test]
    fn q0_witness_examples() {
        assert_eq!(q0_necessary_witness(&RatMatrix::identity(2)).unwrap(), None);
        let w = q0_necessary_witness(&-&RatMatrix::identity(2)).unwrap().unwrap();
        assert_eq!(w.iter().cloned().sum::<Rational>(), int(1));
        assert!(w.iter().all(|x| !x.is_negative()));
    }
}
