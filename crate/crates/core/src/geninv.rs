//! Moore–Penrose and group inverses over the rationals.

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::classify::is_f0;
use crate::error::{Error, Result};
use crate::io::matrix_json;
use crate::linalg::{full_rank_factorization, inverse, is_irreducible, is_nonpositive, rref, FullRankFactorization};
use crate::matrix::{dot, vec_is_zero, RatMatrix};
use crate::polyhedral::{feasibility_with_cap, Feasibility, PolyhedralSystem};
use crate::rational::Rational;

/// Variable cap for the monotonicity feasibility systems.
const MONOTONE_VAR_CAP: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PenroseChecks {
    pub axa: bool,
    pub xax: bool,
    pub ax_symmetric: bool,
    pub xa_symmetric: bool,
}

impl PenroseChecks {
    pub fn evaluate(a: &RatMatrix, x: &RatMatrix) -> Self {
        let ax = a * x;
        let xa = x * a;
        Self {
            axa: &ax * a == *a,
            xax: &xa * x == *x,
            ax_symmetric: ax.transpose() == ax,
            xa_symmetric: xa.transpose() == xa,
        }
    }

    pub fn all(&self) -> bool {
        self.axa && self.xax && self.ax_symmetric && self.xa_symmetric
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PseudoInverseResult {
    pub pinv: RatMatrix,
    pub method: &'static str,
    pub checks: PenroseChecks,
}

impl PseudoInverseResult {
    pub fn to_json(&self) -> Value {
        let mut v = matrix_json(&self.pinv);
        v["method"] = json!(self.method);
        v["checks"] = json!({
            "AXA=A": self.checks.axa,
            "XAX=X": self.checks.xax,
            "AX symmetric": self.checks.ax_symmetric,
            "XA symmetric": self.checks.xa_symmetric,
        });
        v
    }
}

/// A way of computing `A†`.
pub trait PseudoInverseMethod: Send + Sync {
    fn name(&self) -> &'static str;
    /// `A†` for a nonzero `A`.
    fn compute(&self, a: &RatMatrix) -> Result<RatMatrix>;
}

/// `A† = Gᵀ(GGᵀ)⁻¹(FᵀF)⁻¹Fᵀ` from a full-rank factorization `A = FG`.
pub struct FullRankMethod;

impl PseudoInverseMethod for FullRankMethod {
    fn name(&self) -> &'static str {
        "frf"
    }

    fn compute(&self, a: &RatMatrix) -> Result<RatMatrix> {
        let FullRankFactorization { f, g, .. } = full_rank_factorization(a)?;
        let ft = f.transpose();
        let gt = g.transpose();
        let ggt_inv = inverse(&(&g * &gt))?;
        let ftf_inv = inverse(&(&ft * &f))?;
        Ok(&(&(&gt * &ggt_inv) * &ftf_inv) * &ft)
    }
}

/// Greville's column recursion.
pub struct GrevilleMethod;

impl PseudoInverseMethod for GrevilleMethod {
    fn name(&self) -> &'static str {
        "greville"
    }

    fn compute(&self, a: &RatMatrix) -> Result<RatMatrix> {
        let (m, n) = (a.rows(), a.cols());
        let col_pinv = |c: &[Rational]| -> Vec<Rational> {
            let nn = dot(c, c);
            if nn.is_zero() {
                vec![Rational::zero(); c.len()]
            } else {
                c.iter().map(|v| v / &nn).collect()
            }
        };
        let a1 = a.col(0);
        // rows of the current pseudoinverse, one per processed column
        let mut x: Vec<Vec<Rational>> = vec![col_pinv(&a1)];
        for k in 1..n {
            let ak = a.col(k);
            let xk = RatMatrix::from_rows(x.clone())?;
            let d = xk.mul_vec(&ak);
            let prev = a.select(&(0..m).collect::<Vec<_>>(), &(0..k).collect::<Vec<_>>());
            let pd = prev.mul_vec(&d);
            let c: Vec<Rational> = ak.iter().zip(&pd).map(|(u, v)| u - v).collect();
            let b: Vec<Rational> = if !vec_is_zero(&c) {
                col_pinv(&c)
            } else {
                let s = (Rational::one() + dot(&d, &d)).recip();
                xk.transpose().mul_vec(&d).into_iter().map(|v| v * &s).collect()
            };
            for (row, di) in x.iter_mut().zip(&d) {
                if di.is_zero() {
                    continue;
                }
                for (e, bj) in row.iter_mut().zip(&b) {
                    *e -= di * bj;
                }
            }
            x.push(b);
        }
        RatMatrix::from_rows(x)
    }
}

pub struct PseudoInverseRegistry {
    methods: Vec<Box<dyn PseudoInverseMethod>>,
}

impl Default for PseudoInverseRegistry {
    fn default() -> Self {
        Self {
            methods: vec![Box::new(FullRankMethod), Box::new(GrevilleMethod)],
        }
    }
}

impl PseudoInverseRegistry {
    pub fn register(&mut self, method: Box<dyn PseudoInverseMethod>) {
        self.methods.retain(|m| m.name() != method.name());
        self.methods.push(method);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.methods.iter().map(|m| m.name()).collect()
    }

    pub fn get(&self, name: &str) -> Result<&dyn PseudoInverseMethod> {
        self.methods
            .iter()
            .find(|m| m.name().eq_ignore_ascii_case(name))
            .map(|m| m.as_ref())
            .ok_or_else(|| {
                Error::Unsupported(format!(
                    "unknown pseudoinverse method {name:?} (known: {})",
                    self.names().join(", ")
                ))
            })
    }

    /// Runs a method and verifies the four Penrose equations.
    pub fn pinv(&self, a: &RatMatrix, name: &str) -> Result<PseudoInverseResult> {
        let method = self.get(name)?;
        let pinv = if a.is_zero() {
            RatMatrix::zeros(a.cols(), a.rows())
        } else {
            method.compute(a)?
        };
        let checks = PenroseChecks::evaluate(a, &pinv);
        if !checks.all() {
            return Err(Error::Postcondition(format!(
                "{} pseudoinverse fails the Penrose equations: {checks:?}",
                method.name()
            )));
        }
        Ok(PseudoInverseResult {
            pinv,
            method: method.name(),
            checks,
        })
    }
}

pub fn moore_penrose(a: &RatMatrix) -> Result<PseudoInverseResult> {
    PseudoInverseRegistry::default().pinv(a, "frf")
}

pub fn moore_penrose_greville(a: &RatMatrix) -> Result<PseudoInverseResult> {
    PseudoInverseRegistry::default().pinv(a, "greville")
}

#[derive(Clone, Debug, PartialEq)]
pub enum GroupCertificate {
    /// `GF` from a full-rank factorization, invertible.
    InvertibleCore(RatMatrix),
    /// `GF` singular, with a nonzero null vector.
    SingularCore { gf: RatMatrix, null_vector: Vec<Rational> },
    ZeroMatrix,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GroupInverseResult {
    pub exists: bool,
    pub ginv: Option<RatMatrix>,
    pub certificate: GroupCertificate,
}

impl GroupInverseResult {
    pub fn to_json(&self) -> Value {
        match &self.ginv {
            Some(x) => {
                let mut v = matrix_json(x);
                v["exists"] = json!(true);
                v["method"] = json!("frf");
                v["checks"] = json!({"AXA=A": true, "XAX=X": true, "AX=XA": true});
                v
            }
            None => {
                let mut v = json!({"exists": false});
                if let GroupCertificate::SingularCore { gf, null_vector } = &self.certificate {
                    v["GF"] = matrix_json(gf);
                    v["null_vector"] = crate::io::vector_json(null_vector);
                }
                v
            }
        }
    }
}

fn group_equations_hold(a: &RatMatrix, x: &RatMatrix) -> bool {
    let ax = a * x;
    &ax * a == *a && &(x * a) * x == *x && ax == x * a
}

/// `X = F(GF)⁻²G` for a given full-rank factorization.
fn group_inverse_from(a: &RatMatrix, frf: &FullRankFactorization) -> Result<GroupInverseResult> {
    let gf = &frf.g * &frf.f;
    match inverse(&gf) {
        Ok(core) => {
            let core2 = &core * &core;
            let x = &(&frf.f * &core2) * &frf.g;
            if !group_equations_hold(a, &x) {
                return Err(Error::Postcondition("group inverse equations fail".into()));
            }
            Ok(GroupInverseResult {
                exists: true,
                ginv: Some(x),
                certificate: GroupCertificate::InvertibleCore(gf),
            })
        }
        Err(Error::Singular { .. }) => {
            let null_vector = crate::linalg::nullspace_basis(&gf)
                .into_iter()
                .next()
                .expect("singular core has a null vector");
            Ok(GroupInverseResult {
                exists: false,
                ginv: None,
                certificate: GroupCertificate::SingularCore { gf, null_vector },
            })
        }
        Err(e) => Err(e),
    }
}

pub fn group_inverse(a: &RatMatrix) -> Result<GroupInverseResult> {
    let n = a.require_square()?;
    if a.is_zero() {
        return Ok(GroupInverseResult {
            exists: true,
            ginv: Some(RatMatrix::zeros(n, n)),
            certificate: GroupCertificate::ZeroMatrix,
        });
    }
    group_inverse_from(a, &full_rank_factorization(a)?)
}

/// `[[A, b], [cᵀ, d]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockF0Form {
    pub a: RatMatrix,
    pub b: Vec<Rational>,
    pub c: Vec<Rational>,
    pub d: Rational,
}

impl BlockF0Form {
    pub fn new(a: RatMatrix, b: Vec<Rational>, c: Vec<Rational>, d: Rational) -> Result<Self> {
        let n = a.require_square()?;
        if b.len() != n || c.len() != n {
            return Err(Error::Dimension("b and c must match the block size".into()));
        }
        Ok(Self { a, b, c, d })
    }

    /// Splits off the last row and column.
    pub fn split(m: &RatMatrix) -> Result<Self> {
        let n1 = m.require_square()?;
        if n1 < 2 {
            return Err(Error::Dimension("need at least a 2x2 matrix to split".into()));
        }
        let n = n1 - 1;
        let idx: Vec<usize> = (0..n).collect();
        Self::new(
            m.select(&idx, &idx),
            (0..n).map(|i| m[(i, n)].clone()).collect(),
            (0..n).map(|j| m[(n, j)].clone()).collect(),
            m[(n, n)].clone(),
        )
    }

    pub fn n(&self) -> usize {
        self.b.len()
    }

    pub fn assemble(&self) -> RatMatrix {
        RatMatrix::block(
            &self.a,
            &RatMatrix::column(&self.b),
            &RatMatrix::row_vector(&self.c),
            &RatMatrix::from_rows(vec![vec![self.d.clone()]]).expect("1x1"),
        )
        .expect("consistent blocks")
    }

    /// `d = 0`, `A` invertible, `cᵀA⁻¹b = 0` and the assembled matrix is F₀.
    pub fn check_singular_f0(&self) -> Result<RatMatrix> {
        if !self.d.is_zero() {
            return Err(Error::Precondition("corner entry d must be 0".into()));
        }
        let ainv = inverse(&self.a)
            .map_err(|_| Error::Precondition("leading block A is singular".into()))?;
        if !dot(&self.c, &ainv.mul_vec(&self.b)).is_zero() {
            return Err(Error::Precondition("cᵀA⁻¹b is not 0".into()));
        }
        if !is_f0(&self.assemble())? {
            return Err(Error::Precondition("assembled matrix is not F0".into()));
        }
        Ok(ainv)
    }
}

/// Group inverse of a singular F₀ matrix `[[A, b], [cᵀ, 0]]`.
///
/// Existence is certified by `1 + cᵀA⁻²b > 0`. The two reducible shapes use
/// closed block forms (`c = 0`: `[[A⁻¹, A⁻²b], [0, 0]]`; `b = 0`:
/// `[[A⁻¹, 0], [cᵀA⁻², 0]]`), which must be nonpositive. Otherwise the
/// factorization `F = [A; cᵀ]`, `G = [I | A⁻¹b]` is used. Every route is
/// compared with the generic group inverse of the assembled matrix.
pub fn singular_f0_group_inverse(form: &BlockF0Form) -> Result<GroupInverseResult> {
    let ainv = form.check_singular_f0()?;
    let n = form.n();
    let m = form.assemble();
    let ainv2 = &ainv * &ainv;
    let key = Rational::one() + dot(&form.c, &ainv2.mul_vec(&form.b));
    if !key.is_positive() {
        return Err(Error::Postcondition(format!(
            "1 + cᵀA⁻²b = {key} is not positive"
        )));
    }
    let zero_row = RatMatrix::zeros(1, n);
    let zero_corner = RatMatrix::zeros(1, 1);
    let (x, certificate) = if vec_is_zero(&form.c) {
        let x = RatMatrix::block(&ainv, &RatMatrix::column(&ainv2.mul_vec(&form.b)), &zero_row, &zero_corner)?;
        if !is_nonpositive(&x) {
            return Err(Error::Postcondition("reducible closed form is not nonpositive".into()));
        }
        (x, GroupCertificate::InvertibleCore(form.a.clone()))
    } else if vec_is_zero(&form.b) {
        let bottom = ainv2.transpose().mul_vec(&form.c);
        let x = RatMatrix::block(
            &ainv,
            &RatMatrix::zeros(n, 1),
            &RatMatrix::row_vector(&bottom),
            &zero_corner,
        )?;
        if !is_nonpositive(&x) {
            return Err(Error::Postcondition("reducible closed form is not nonpositive".into()));
        }
        (x, GroupCertificate::InvertibleCore(form.a.clone()))
    } else {
        let g_col = ainv.mul_vec(&form.b);
        let mut f_rows = form.a.to_rows();
        f_rows.push(form.c.clone());
        let f = RatMatrix::from_rows(f_rows)?;
        let g = RatMatrix::from_rows(
            RatMatrix::identity(n)
                .to_rows()
                .into_iter()
                .zip(g_col)
                .map(|(mut row, gi)| {
                    row.push(gi);
                    row
                })
                .collect(),
        )?;
        let frf = FullRankFactorization::from_parts(&m, f, g)?;
        let r = group_inverse_from(&m, &frf)?;
        match (r.ginv, r.certificate) {
            (Some(x), cert) => (x, cert),
            _ => return Err(Error::Postcondition("block factorization has singular GF".into())),
        }
    };
    let generic = group_inverse(&m)?;
    if generic.ginv.as_ref() != Some(&x) {
        return Err(Error::Postcondition(
            "block group inverse differs from the generic one".into(),
        ));
    }
    Ok(GroupInverseResult {
        exists: true,
        ginv: Some(x),
        certificate,
    })
}

/// Whether the assembled singular F₀ matrix is irreducible.
pub fn block_is_irreducible(form: &BlockF0Form) -> bool {
    is_irreducible(&form.assemble())
}

/// `Gx >= 0` with `x` in the row space of `G` forces `x >= 0`. A `false`
/// verdict carries such an `x` with a negative coordinate.
pub fn is_row_monotone(g: &RatMatrix) -> Result<(bool, Option<Vec<Rational>>)> {
    let n = g.cols();
    let r = rref(g);
    let k = r.rank();
    if k == 0 {
        return Ok((true, None));
    }
    // x = Rᵀz with R the nonzero reduced rows
    let basis = r
        .reduced
        .select(&(0..k).collect::<Vec<_>>(), &(0..n).collect::<Vec<_>>());
    let gbt = g * &basis.transpose();
    let bt = basis.transpose();
    for j in 0..n {
        let mut sys = PolyhedralSystem::new(k);
        for i in 0..g.rows() {
            sys.add_ge(gbt.row(i).to_vec(), Rational::zero());
        }
        sys.add_le(bt.row(j).to_vec(), -Rational::one());
        if let Feasibility::Feasible(z) = feasibility_with_cap(&sys, MONOTONE_VAR_CAP)? {
            return Ok((false, Some(bt.mul_vec(&z))));
        }
    }
    Ok((true, None))
}

/// `Mx <= 0`, `x_{n+1} = 0` forces `x >= 0`, for `M = [[A, b], [cᵀ, d]]`
/// with `A⁻¹ <= 0`. A `false` verdict carries the offending `x`.
pub fn block_monotonicity_check(form: &BlockF0Form) -> Result<(bool, Option<Vec<Rational>>)> {
    let ainv = inverse(&form.a)
        .map_err(|_| Error::Precondition("leading block A must be invertible".into()))?;
    if !is_nonpositive(&ainv) {
        return Err(Error::Precondition("A⁻¹ must be entrywise nonpositive".into()));
    }
    let m = form.assemble();
    let n = form.n();
    // x_{n+1} = 0, so only the first n columns of M act.
    let cols: Vec<usize> = (0..n).collect();
    let mm = m.select(&(0..=n).collect::<Vec<_>>(), &cols);
    for j in 0..n {
        let mut sys = PolyhedralSystem::new(n);
        for i in 0..=n {
            sys.add_le(mm.row(i).to_vec(), Rational::zero());
        }
        sys.var_le(j, -Rational::one());
        if let Feasibility::Feasible(x) = feasibility_with_cap(&sys, MONOTONE_VAR_CAP)? {
            let mut full = x;
            full.push(Rational::zero());
            return Ok((false, Some(full)));
        }
    }
    Ok((true, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn mpcounter() -> RatMatrix {
        RatMatrix::from_i64(&[
            &[2, -4, -1, -1],
            &[-2, 4, -1, -4],
            &[-2, -2, 1, -6],
            &[0, 0, 0, 0],
        ])
    }

    fn lead() -> RatMatrix {
        RatMatrix::from_i64(&[&[0, -1, -1], &[-1, 0, 0], &[-1, 0, 0]])
    }

    fn rat_rows(rows: &[&[(i64, i64)]]) -> RatMatrix {
        RatMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&(p, q)| frac(p, q)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn reducible_example_pinv() {
        let m = RatMatrix::from_i64(&[&[1, -2, -1], &[-3, 1, -2], &[0, 0, 0]]);
        let want = rat_rows(&[
            &[(1, 15), (-1, 5), (0, 1)],
            &[(-1, 3), (0, 1), (0, 1)],
            &[(-4, 15), (-1, 5), (0, 1)],
        ]);
        assert_eq!(moore_penrose(&m).unwrap().pinv, want);
        assert_eq!(moore_penrose_greville(&m).unwrap().pinv, want);
    }

    #[test]
    fn irreducible_example_pinv() {
        let m = RatMatrix::from_i64(&[&[0, -1, -1], &[-2, 0, 0], &[-1, 0, 0]]);
        let want = rat_rows(&[
            &[(0, 1), (-2, 5), (-1, 5)],
            &[(-1, 2), (0, 1), (0, 1)],
            &[(-1, 2), (0, 1), (0, 1)],
        ]);
        let p = moore_penrose(&m).unwrap();
        assert_eq!(p.pinv, want);
        assert!(is_nonpositive(&p.pinv));
    }

    #[test]
    fn counterexample_pinv() {
        // Verified by the four Penrose equations; the second row differs from
        // the printed (-149, 257, -220, 0)/2609.
        let raw = rat_rows(&[
            &[(538, 1), (245, 1), (-327, 1), (0, 1)],
            &[(-149, 1), (679, 2), (-459, 2), (0, 1)],
            &[(-692, 1), (-577, 1), (440, 1), (0, 1)],
            &[(-245, 1), (-291, 1), (-176, 1), (0, 1)],
        ]);
        let want = raw.scale(&frac(1, 2609));
        let p = moore_penrose(&mpcounter()).unwrap();
        assert_eq!(p.pinv, want);
        assert_eq!(moore_penrose_greville(&mpcounter()).unwrap().pinv, want);
        assert!(p.pinv[(0, 1)].is_positive());
    }

    #[test]
    fn zero_and_identity() {
        let z = RatMatrix::zeros(2, 3);
        assert_eq!(moore_penrose(&z).unwrap().pinv, RatMatrix::zeros(3, 2));
        let i = RatMatrix::identity(3);
        assert_eq!(moore_penrose_greville(&i).unwrap().pinv, i);
        assert!(PseudoInverseRegistry::default().get("svd").is_err());
    }

    #[test]
    fn group_inverse_examples() {
        let g = group_inverse(&lead()).unwrap();
        assert_eq!(g.ginv.unwrap(), lead().scale(&frac(1, 2)));
        let nil = group_inverse(&RatMatrix::from_i64(&[&[0, 1], &[0, 0]])).unwrap();
        assert!(!nil.exists);
        let idem = RatMatrix::from_i64(&[&[1, 0], &[0, 0]]);
        assert_eq!(group_inverse(&idem).unwrap().ginv.unwrap(), idem);
    }

    #[test]
    fn reducible_block_closed_form() {
        let form = BlockF0Form::new(
            RatMatrix::from_i64(&[&[0, -1], &[-1, 0]]),
            vec![int(-1), int(0)],
            vec![int(0), int(0)],
            int(0),
        )
        .unwrap();
        let r = singular_f0_group_inverse(&form).unwrap();
        assert_eq!(
            r.ginv.unwrap(),
            RatMatrix::from_i64(&[&[0, -1, -1], &[-1, 0, 0], &[0, 0, 0]])
        );
    }

    #[test]
    fn lead_block_form() {
        let form = BlockF0Form::split(&lead()).unwrap();
        let r = singular_f0_group_inverse(&form).unwrap();
        assert_eq!(r.ginv.unwrap(), lead().scale(&frac(1, 2)));
        let bad = BlockF0Form::split(&RatMatrix::identity(3)).unwrap();
        assert!(singular_f0_group_inverse(&bad).is_err());
    }

    #[test]
    fn row_monotonicity() {
        let (ok, w) = is_row_monotone(&-&mpcounter()).unwrap();
        assert!(!ok);
        let x = w.unwrap();
        assert!(x.iter().any(|v| v.is_negative()));
        assert!((-&mpcounter()).mul_vec(&x).iter().all(|v| !v.is_negative()));
        // x lies in the row space: orthogonal to the null vector
        assert!(dot(&x, &[int(37), int(14), int(30), int(-12)]).is_zero());
        let u = vec![int(6), int(3), int(-6), int(7)];
        assert_eq!(mpcounter().mul_vec(&u), vec![int(-1), int(-22), int(-66), int(0)]);
        assert!(is_row_monotone(&RatMatrix::identity(3)).unwrap().0);
    }

    #[test]
    fn block_monotone() {
        let form = BlockF0Form::split(&mpcounter()).unwrap();
        assert_eq!(block_monotonicity_check(&form).unwrap(), (true, None));
        let id = BlockF0Form::split(&RatMatrix::identity(3)).unwrap();
        assert!(matches!(block_monotonicity_check(&id), Err(Error::Precondition(_))));
    }
}
