//! Exact feasibility of small polyhedral systems by Fourier–Motzkin
//! elimination.
//!
//! Feasible systems come back with a point found by back-substitution;
//! infeasible ones with Farkas multipliers `y` (nonnegative on `<=` rows)
//! such that `yᵀA = 0` and `yᵀb < 0`. Both are re-verified before return.

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::dot;
use crate::rational::Rational;

pub const DEFAULT_VAR_CAP: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
}

/// `coeffs · x  (<= | =)  rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub rel: Relation,
    pub rhs: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PolyhedralSystem {
    nvars: usize,
    rows: Vec<Constraint>,
}

impl PolyhedralSystem {
    pub fn new(nvars: usize) -> Self {
        Self {
            nvars,
            rows: Vec::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rows(&self) -> &[Constraint] {
        &self.rows
    }

    fn push(&mut self, coeffs: Vec<Rational>, rel: Relation, rhs: Rational) -> &mut Self {
        assert_eq!(coeffs.len(), self.nvars, "constraint width");
        self.rows.push(Constraint { coeffs, rel, rhs });
        self
    }

    pub fn add_le(&mut self, coeffs: Vec<Rational>, rhs: Rational) -> &mut Self {
        self.push(coeffs, Relation::Le, rhs)
    }

    pub fn add_ge(&mut self, coeffs: Vec<Rational>, rhs: Rational) -> &mut Self {
        self.push(coeffs.into_iter().map(|c| -c).collect(), Relation::Le, -rhs)
    }

    pub fn add_eq(&mut self, coeffs: Vec<Rational>, rhs: Rational) -> &mut Self {
        self.push(coeffs, Relation::Eq, rhs)
    }

    /// `x_j (<= | >=) bound` shortcuts.
    pub fn var_le(&mut self, j: usize, bound: Rational) -> &mut Self {
        let c = self.unit(j);
        self.add_le(c, bound)
    }

    pub fn var_ge(&mut self, j: usize, bound: Rational) -> &mut Self {
        let c = self.unit(j);
        self.add_ge(c, bound)
    }

    fn unit(&self, j: usize) -> Vec<Rational> {
        let mut c = vec![Rational::zero(); self.nvars];
        c[j] = Rational::one();
        c
    }

    pub fn satisfied_by(&self, x: &[Rational]) -> bool {
        x.len() == self.nvars
            && self.rows.iter().all(|r| {
                let v = dot(&r.coeffs, x);
                match r.rel {
                    Relation::Le => v <= r.rhs,
                    Relation::Eq => v == r.rhs,
                }
            })
    }

    /// Checks `yᵀA = 0`, `yᵀb < 0` and `y >= 0` on inequality rows.
    pub fn certifies_infeasible(&self, y: &[Rational]) -> bool {
        if y.len() != self.rows.len() {
            return false;
        }
        let signs_ok = self
            .rows
            .iter()
            .zip(y)
            .all(|(r, m)| r.rel == Relation::Eq || !m.is_negative());
        let combo_zero = (0..self.nvars).all(|j| {
            self.rows
                .iter()
                .zip(y)
                .map(|(r, m)| &r.coeffs[j] * m)
                .sum::<Rational>()
                .is_zero()
        });
        let rhs: Rational = self.rows.iter().zip(y).map(|(r, m)| &r.rhs * m).sum();
        signs_ok && combo_zero && rhs.is_negative()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Feasibility {
    Feasible(Vec<Rational>),
    Infeasible(Vec<Rational>),
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }

    pub fn witness(&self) -> Option<&[Rational]> {
        match self {
            Feasibility::Feasible(x) => Some(x),
            Feasibility::Infeasible(_) => None,
        }
    }
}

/// A derived inequality `coeffs · x <= rhs` with its multipliers over the
/// original rows.
#[derive(Clone, Debug)]
struct Row {
    coeffs: Vec<Rational>,
    rhs: Rational,
    mult: Vec<Rational>,
}

impl Row {
    fn scale(&mut self, s: &Rational) {
        for c in self.coeffs.iter_mut().chain(self.mult.iter_mut()) {
            if !c.is_zero() {
                *c *= s;
            }
        }
        self.rhs *= s;
    }

    /// Makes the first nonzero coefficient `±1`.
    fn normalize(&mut self) {
        if let Some(c) = self.coeffs.iter().find(|c| !c.is_zero()) {
            let s = c.abs().recip();
            if !s.is_one() {
                self.scale(&s);
            }
        }
    }

    fn history(&self) -> usize {
        self.mult.iter().filter(|m| !m.is_zero()).count()
    }

    fn combine(pos: &Row, neg: &Row, v: usize) -> Row {
        // pos has coefficient p > 0 at v, neg has n < 0: (-n)·pos + p·neg.
        let p = pos.coeffs[v].clone();
        let n = -neg.coeffs[v].clone();
        let mix = |a: &[Rational], b: &[Rational]| -> Vec<Rational> {
            a.iter().zip(b).map(|(x, y)| x * &n + y * &p).collect()
        };
        let mut coeffs = mix(&pos.coeffs, &neg.coeffs);
        coeffs[v] = Rational::zero();
        Row {
            coeffs,
            rhs: &pos.rhs * &n + &neg.rhs * &p,
            mult: mix(&pos.mult, &neg.mult),
        }
    }
}

/// Drops trivial rows, keeps the tightest of parallel rows. Returns a row
/// `0 <= negative` if one appears.
fn tidy(rows: Vec<Row>) -> std::result::Result<Vec<Row>, Row> {
    let mut best: HashMap<Vec<Rational>, Row> = HashMap::new();
    let mut order: Vec<Vec<Rational>> = Vec::new();
    for mut r in rows {
        if r.coeffs.iter().all(Zero::is_zero) {
            if r.rhs.is_negative() {
                return Err(r);
            }
            continue;
        }
        r.normalize();
        match best.get_mut(&r.coeffs) {
            Some(cur) => {
                if r.rhs < cur.rhs {
                    *cur = r;
                }
            }
            None => {
                order.push(r.coeffs.clone());
                best.insert(r.coeffs.clone(), r);
            }
        }
    }
    Ok(order.into_iter().map(|k| best.remove(&k).expect("present")).collect())
}

pub fn feasibility(sys: &PolyhedralSystem) -> Result<Feasibility> {
    feasibility_with_cap(sys, DEFAULT_VAR_CAP)
}

pub fn feasibility_with_cap(sys: &PolyhedralSystem, cap: usize) -> Result<Feasibility> {
    let nv = sys.nvars;
    if nv > cap {
        return Err(Error::TooLarge { n: nv, max: cap });
    }
    let m = sys.rows.len();
    let mut rows = Vec::with_capacity(2 * m);
    for (i, c) in sys.rows.iter().enumerate() {
        let mut mult = vec![Rational::zero(); m];
        mult[i] = Rational::one();
        let r = Row {
            coeffs: c.coeffs.clone(),
            rhs: c.rhs.clone(),
            mult,
        };
        if c.rel == Relation::Eq {
            let mut neg = r.clone();
            neg.scale(&-Rational::one());
            rows.push(neg);
        }
        rows.push(r);
    }

    let infeasible = |r: Row| -> Result<Feasibility> {
        if !sys.certifies_infeasible(&r.mult) {
            return Err(Error::Postcondition("infeasibility certificate failed".into()));
        }
        Ok(Feasibility::Infeasible(r.mult))
    };

    let mut rows = match tidy(rows) {
        Ok(r) => r,
        Err(bad) => return infeasible(bad),
    };
    let mut remaining: Vec<usize> = (0..nv).collect();
    // (variable, rows mentioning it at the moment it was eliminated)
    let mut stages: Vec<(usize, Vec<Row>)> = Vec::new();

    while !remaining.is_empty() {
        // cheapest variable: fewest new rows
        let (idx, &v) = remaining
            .iter()
            .enumerate()
            .min_by_key(|(_, &v)| {
                let p = rows.iter().filter(|r| r.coeffs[v].is_positive()).count();
                let q = rows.iter().filter(|r| r.coeffs[v].is_negative()).count();
                (p * q, v)
            })
            .expect("nonempty");
        remaining.remove(idx);
        let eliminated = stages.len() + 1;
        let (with, without): (Vec<Row>, Vec<Row>) =
            rows.into_iter().partition(|r| !r.coeffs[v].is_zero());
        let pos: Vec<&Row> = with.iter().filter(|r| r.coeffs[v].is_positive()).collect();
        let neg: Vec<&Row> = with.iter().filter(|r| r.coeffs[v].is_negative()).collect();
        let mut next = without;
        for p in &pos {
            for n in &neg {
                let r = Row::combine(p, n, v);
                // Chernikov: a row built from more than k+1 originals after
                // k eliminations is implied by the others.
                if r.history() <= eliminated + 1 || r.coeffs.iter().all(Zero::is_zero) {
                    next.push(r);
                }
            }
        }
        rows = match tidy(next) {
            Ok(r) => r,
            Err(bad) => return infeasible(bad),
        };
        stages.push((v, with));
    }

    let mut x = vec![Rational::zero(); nv];
    for (v, stage) in stages.iter().rev() {
        let mut lo: Option<Rational> = None;
        let mut hi: Option<Rational> = None;
        for r in stage {
            let rest: Rational = r
                .coeffs
                .iter()
                .enumerate()
                .filter(|(j, c)| j != v && !c.is_zero())
                .map(|(j, c)| c * &x[j])
                .sum();
            let bound = (&r.rhs - rest) / &r.coeffs[*v];
            if r.coeffs[*v].is_positive() {
                hi = Some(hi.map_or(bound.clone(), |h: Rational| h.min(bound)));
            } else {
                lo = Some(lo.map_or(bound.clone(), |l: Rational| l.max(bound)));
            }
        }
        let zero = Rational::zero();
        x[*v] = match (lo, hi) {
            (Some(l), _) if l > zero => l,
            (_, Some(h)) if h < zero => h,
            _ => zero,
        };
    }
    if !sys.satisfied_by(&x) {
        return Err(Error::Postcondition("back-substituted point violates the system".into()));
    }
    Ok(Feasibility::Feasible(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn simple_infeasible() {
        let mut s = PolyhedralSystem::new(1);
        s.var_ge(0, int(0)).add_ge(v(&[-1]), int(1));
        match feasibility(&s).unwrap() {
            Feasibility::Infeasible(y) => assert!(s.certifies_infeasible(&y)),
            f => panic!("expected infeasible, got {f:?}"),
        }
    }

    #[test]
    fn empty_system() {
        assert_eq!(
            feasibility(&PolyhedralSystem::new(3)).unwrap(),
            Feasibility::Feasible(v(&[0, 0, 0]))
        );
        assert_eq!(
            feasibility(&PolyhedralSystem::new(0)).unwrap(),
            Feasibility::Feasible(vec![])
        );
    }

    #[test]
    fn equalities_and_fractions() {
        // x + y = 1, x - y >= 1/2, y >= 0
        let mut s = PolyhedralSystem::new(2);
        s.add_eq(v(&[1, 1]), int(1))
            .add_ge(v(&[1, -1]), frac(1, 2))
            .var_ge(1, int(0));
        let f = feasibility(&s).unwrap();
        assert!(s.satisfied_by(f.witness().unwrap()));
        s.var_ge(1, frac(1, 2));
        assert!(!feasibility(&s).unwrap().is_feasible());
    }

    #[test]
    fn cap_enforced() {
        let s = PolyhedralSystem::new(9);
        assert_eq!(feasibility(&s), Err(Error::TooLarge { n: 9, max: 8 }));
        assert!(feasibility_with_cap(&s, 9).is_ok());
    }

    #[test]
    fn section_lcp_feasible_point() {
        // x >= 0, -M x + q >= 0 for M = [[0,-1,-1],[-1,0,-1],[0,0,0]], q = (-1,1,1)
        let mut s = PolyhedralSystem::new(3);
        for j in 0..3 {
            s.var_ge(j, int(0));
        }
        s.add_ge(v(&[0, 1, 1]), int(1))
            .add_ge(v(&[1, 0, 1]), int(-1))
            .add_ge(v(&[0, 0, 0]), int(-1));
        assert!(s.satisfied_by(&v(&[1, 1, 0])));
        assert!(feasibility(&s).unwrap().is_feasible());
    }
}
