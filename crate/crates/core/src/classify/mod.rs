//! Membership tests for the Z-matrix subclasses.
//!
//! Every predicate is decided from exact principal minors. Each class is a
//! [`MatrixClass`] strategy held in a [`ClassRegistry`]; a full
//! [`ClassReport`] runs every registered strategy against one matrix.

mod spectral;

pub use spectral::{
    f0_spectral, m_spectral, spectral_diagnostics, spectral_radius, Interval, SpectralDiagnostics,
    SpectralVerdict, DEFAULT_PRECISION_BITS, ESCALATED_PRECISION_BITS,
};

use std::cell::{OnceCell, RefCell};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::io::{matrix_json, rational_json, vector_json};
use crate::linalg::{comparison_matrix, det, inverse, is_irreducible, minor};
use crate::matrix::{IndexSet, RatMatrix};
use crate::poly::{charpoly, negative_root_count};
use crate::rational::Rational;

/// Largest order accepted by predicates that enumerate all principal minors.
pub const MAX_MINOR_DIM: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassLabel {
    Z,
    Nonnegative,
    Nonpositive,
    M,
    InvertibleM,
    H,
    N,
    N0,
    F0,
    InverseM,
    InverseN0,
    InverseF0,
    TypeD,
    TotallyNonpositiveGe2,
}

impl ClassLabel {
    pub const ALL: [ClassLabel; 14] = [
        ClassLabel::Z,
        ClassLabel::Nonnegative,
        ClassLabel::Nonpositive,
        ClassLabel::M,
        ClassLabel::InvertibleM,
        ClassLabel::H,
        ClassLabel::N,
        ClassLabel::N0,
        ClassLabel::F0,
        ClassLabel::InverseM,
        ClassLabel::InverseN0,
        ClassLabel::InverseF0,
        ClassLabel::TypeD,
        ClassLabel::TotallyNonpositiveGe2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClassLabel::Z => "Z",
            ClassLabel::Nonnegative => "Nonnegative",
            ClassLabel::Nonpositive => "Nonpositive",
            ClassLabel::M => "M",
            ClassLabel::InvertibleM => "InvertibleM",
            ClassLabel::H => "H",
            ClassLabel::N => "N",
            ClassLabel::N0 => "N0",
            ClassLabel::F0 => "F0",
            ClassLabel::InverseM => "InverseM",
            ClassLabel::InverseN0 => "InverseN0",
            ClassLabel::InverseF0 => "InverseF0",
            ClassLabel::TypeD => "TypeD",
            ClassLabel::TotallyNonpositiveGe2 => "TotallyNonpositiveGe2",
        }
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClassLabel {
    type Err = Error;

    /// Case and separator insensitive: `inverse-n0`, `InverseN0`, `inverse_n0`.
    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .replace('₀', "0")
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .collect::<String>()
            .to_ascii_lowercase();
        ClassLabel::ALL
            .into_iter()
            .find(|l| l.name().to_ascii_lowercase() == key)
            .ok_or_else(|| Error::Parse(format!("unknown class label {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    None,
    IndexSet(IndexSet),
    Minor {
        rows: IndexSet,
        cols: IndexSet,
        value: Rational,
    },
    Entry {
        row: usize,
        col: usize,
        value: Rational,
    },
    Vector(Vec<Rational>),
    Determinant(Rational),
    Note(String),
    /// A witness about a derived matrix (the inverse or the comparison matrix).
    Of {
        of: &'static str,
        inner: Box<Witness>,
    },
}

impl Witness {
    fn principal(s: IndexSet, value: Rational) -> Self {
        Witness::Minor {
            rows: s.clone(),
            cols: s,
            value,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Witness::None => Value::Null,
            Witness::IndexSet(s) => json!({ "index_set": s.as_slice() }),
            Witness::Minor { rows, cols, value } => json!({
                "rows": rows.as_slice(),
                "cols": cols.as_slice(),
                "minor": rational_json(value),
            }),
            Witness::Entry { row, col, value } => json!({
                "row": row,
                "col": col,
                "entry": rational_json(value),
            }),
            Witness::Vector(v) => json!({ "vector": vector_json(v) }),
            Witness::Determinant(d) => json!({ "det": rational_json(d) }),
            Witness::Note(s) => json!({ "note": s }),
            Witness::Of { of, inner } => json!({ "of": of, "witness": inner.to_json() }),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Witness,
    /// Agreement with an independent characterization, when one applies.
    pub cross_check: Option<bool>,
}

impl Verdict {
    pub fn yes(witness: Witness) -> Self {
        Self {
            holds: true,
            witness,
            cross_check: None,
        }
    }

    pub fn no(witness: Witness) -> Self {
        Self {
            holds: false,
            witness,
            cross_check: None,
        }
    }

    fn of(self, of: &'static str) -> Self {
        Self {
            witness: match self.witness {
                Witness::None => Witness::None,
                w => Witness::Of {
                    of,
                    inner: Box::new(w),
                },
            },
            ..self
        }
    }
}

/// A matrix under classification, with memoized principal minors and inverse.
pub struct Subject {
    a: RatMatrix,
    n: usize,
    principal: RefCell<HashMap<u32, Rational>>,
    inverse: OnceCell<Option<RatMatrix>>,
    det: OnceCell<Rational>,
}

impl Subject {
    pub fn new(a: &RatMatrix) -> Result<Self> {
        let n = a.require_square()?;
        Ok(Self {
            a: a.clone(),
            n,
            principal: RefCell::new(HashMap::new()),
            inverse: OnceCell::new(),
            det: OnceCell::new(),
        })
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.a
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn require_small(&self) -> Result<()> {
        if self.n > MAX_MINOR_DIM {
            Err(Error::TooLarge {
                n: self.n,
                max: MAX_MINOR_DIM,
            })
        } else {
            Ok(())
        }
    }

    pub fn principal_minor(&self, s: &IndexSet) -> Rational {
        if s.len() == self.n {
            return self.det().clone();
        }
        let key = s.mask();
        if let Some(v) = self.principal.borrow().get(&key) {
            return v.clone();
        }
        let v = det(&self.a.select(s.as_slice(), s.as_slice())).expect("square selection");
        self.principal.borrow_mut().insert(key, v.clone());
        v
    }

    pub fn det(&self) -> &Rational {
        self.det
            .get_or_init(|| det(&self.a).expect("subject is square"))
    }

    pub fn inverse(&self) -> Option<&RatMatrix> {
        self.inverse
            .get_or_init(|| {
                if self.det().is_zero() {
                    None
                } else {
                    Some(inverse(&self.a).expect("nonzero determinant"))
                }
            })
            .as_ref()
    }

    /// First principal index set (by order, then lexicographic) with
    /// `2 <= |S| <= max_order` whose minor fails `ok`. Orders start at `min_order`.
    fn first_principal_violation(
        &self,
        min_order: usize,
        max_order: usize,
        ok: impl Fn(&Rational) -> bool,
    ) -> Option<(IndexSet, Rational)> {
        (min_order..=max_order.min(self.n))
            .flat_map(|k| IndexSet::subsets(self.n, k))
            .map(|s| {
                let v = self.principal_minor(&s);
                (s, v)
            })
            .find(|(_, v)| !ok(v))
    }
}

fn first_entry(a: &RatMatrix, bad: impl Fn(usize, usize, &Rational) -> bool) -> Option<Witness> {
    a.find(bad).map(|(i, j)| Witness::Entry {
        row: i,
        col: j,
        value: a[(i, j)].clone(),
    })
}

pub fn z_verdict(s: &Subject) -> Verdict {
    match first_entry(&s.a, |i, j, v| i != j && v.is_positive()) {
        Some(w) => Verdict::no(w),
        None => Verdict::yes(Witness::None),
    }
}

pub fn nonnegative_verdict(s: &Subject) -> Verdict {
    match first_entry(&s.a, |_, _, v| v.is_negative()) {
        Some(w) => Verdict::no(w),
        None => Verdict::yes(Witness::None),
    }
}

pub fn nonpositive_verdict(s: &Subject) -> Verdict {
    match first_entry(&s.a, |_, _, v| v.is_positive()) {
        Some(w) => Verdict::no(w),
        None => Verdict::yes(Witness::None),
    }
}

pub fn m_verdict(s: &Subject) -> Result<Verdict> {
    s.require_small()?;
    let z = z_verdict(s);
    if !z.holds {
        return Ok(z);
    }
    Ok(match s.first_principal_violation(1, s.n, |v| !v.is_negative()) {
        Some((set, v)) => Verdict::no(Witness::principal(set, v)),
        None => Verdict::yes(Witness::None),
    })
}

pub fn invertible_m_verdict(s: &Subject) -> Result<Verdict> {
    let z = z_verdict(s);
    if !z.holds {
        return Ok(z);
    }
    for k in 1..=s.n {
        let lead = IndexSet::full(k);
        let v = s.principal_minor(&lead);
        if !v.is_positive() {
            return Ok(Verdict::no(Witness::principal(lead, v)));
        }
    }
    Ok(Verdict::yes(Witness::None))
}

pub fn h_verdict(s: &Subject) -> Result<Verdict> {
    let c = Subject::new(&comparison_matrix(&s.a))?;
    Ok(invertible_m_verdict(&c)?.of("comparison"))
}

/// Shared body of the N and N₀ tests: proper principal minors must satisfy `ok`.
fn n_family(s: &Subject, ok: impl Fn(&Rational) -> bool) -> Result<Verdict> {
    s.require_small()?;
    let z = z_verdict(s);
    if !z.holds {
        return Ok(z);
    }
    let d = s.det().clone();
    if !d.is_negative() {
        return Ok(Verdict::no(Witness::Determinant(d)));
    }
    Ok(match s.first_principal_violation(1, s.n - 1, ok) {
        Some((set, v)) => Verdict::no(Witness::principal(set, v)),
        None => Verdict::yes(Witness::Determinant(d)),
    })
}

pub fn n_verdict(s: &Subject) -> Result<Verdict> {
    n_family(s, |v| v.is_positive())
}

pub fn n0_verdict(s: &Subject) -> Result<Verdict> {
    let mut v = n_family(s, |v| !v.is_negative())?;
    v.cross_check = Some(v.holds == n0_indirect(s));
    Ok(v)
}

/// Z-matrix with `A⁻¹ <= 0` and `A` irreducible.
pub fn n0_indirect(s: &Subject) -> bool {
    z_verdict(s).holds
        && s.inverse().is_some_and(|inv| inv.all(|v| !v.is_positive()))
        && is_irreducible(&s.a)
}

pub fn f0_verdict(s: &Subject) -> Result<Verdict> {
    if s.n < 3 {
        return Err(Error::DimensionTooSmall { n: s.n, min: 3 });
    }
    s.require_small()?;
    let z = z_verdict(s);
    if !z.holds {
        return Ok(z);
    }
    if let Some((set, v)) = s.first_principal_violation(1, s.n - 2, |v| !v.is_negative()) {
        return Ok(Verdict::no(Witness::principal(set, v)));
    }
    // With every smaller principal minor nonnegative, an order n-1 principal
    // submatrix is N₀ exactly when its determinant is negative.
    let mut verdict = match IndexSet::subsets(s.n, s.n - 1).find(|set| s.principal_minor(set).is_negative())
    {
        Some(set) => Verdict::yes(Witness::IndexSet(set)),
        None => Verdict::no(Witness::Note("no order n-1 principal submatrix is N0".into())),
    };
    if s.inverse().is_some() {
        verdict.cross_check = Some(verdict.holds == f0_indirect_nonsingular(s)?);
    }
    Ok(verdict)
}

/// For a nonsingular Z-matrix: `det < 0`, principal minors of the inverse of
/// order at least two are nonpositive, and the inverse has a positive
/// diagonal entry.
pub fn f0_indirect_nonsingular(s: &Subject) -> Result<bool> {
    let Some(inv) = s.inverse() else {
        return Err(Error::Precondition("matrix is singular".into()));
    };
    if !z_verdict(s).holds || !s.det().is_negative() {
        return Ok(false);
    }
    let si = Subject::new(inv)?;
    let minors_ok = si.first_principal_violation(2, s.n, |v| !v.is_positive()).is_none();
    let pos_diag = (0..s.n).any(|i| inv[(i, i)].is_positive());
    Ok(minors_ok && pos_diag)
}

fn singular_witness(s: &Subject) -> Option<Verdict> {
    s.inverse()
        .is_none()
        .then(|| Verdict::no(Witness::Determinant(Rational::zero())))
}

pub fn inverse_m_verdict(s: &Subject) -> Result<Verdict> {
    let sign = nonnegative_verdict(s);
    if !sign.holds {
        return Ok(sign);
    }
    if let Some(v) = singular_witness(s) {
        return Ok(v);
    }
    let si = Subject::new(s.inverse().expect("nonsingular"))?;
    Ok(m_verdict(&si)?.of("inverse"))
}

pub fn inverse_n0_verdict(s: &Subject) -> Result<Verdict> {
    let sign = nonpositive_verdict(s);
    if !sign.holds {
        return Ok(sign);
    }
    if let Some(v) = singular_witness(s) {
        return Ok(v);
    }
    let si = Subject::new(s.inverse().expect("nonsingular"))?;
    let mut v = n_family(&si, |v| !v.is_negative())?.of("inverse");
    // A⁻¹ is N₀ iff A⁻¹ is Z, (A⁻¹)⁻¹ = A <= 0 and A is irreducible.
    let indirect = z_verdict(&si).holds && is_irreducible(&s.a);
    v.cross_check = Some(v.holds == indirect);
    Ok(v)
}

pub fn inverse_f0_verdict(s: &Subject) -> Result<Verdict> {
    if s.n < 3 {
        return Err(Error::DimensionTooSmall { n: s.n, min: 3 });
    }
    if let Some(v) = singular_witness(s) {
        return Ok(v);
    }
    let si = Subject::new(s.inverse().expect("nonsingular"))?;
    let mut v = f0_verdict(&si)?.of("inverse");
    v.cross_check = Some(v.holds == inverse_f0_indirect(s)?);
    Ok(v)
}

/// The nonsingular F₀ characterization read through the inverse: `A⁻¹` is Z,
/// `det A < 0`, every principal minor of `A` of order at least two is
/// nonpositive and `A` has a positive diagonal entry.
pub fn inverse_f0_indirect(s: &Subject) -> Result<bool> {
    s.require_small()?;
    let Some(inv) = s.inverse() else {
        return Ok(false);
    };
    let inv_z = inv.find(|i, j, v| i != j && v.is_positive()).is_none();
    Ok(inv_z
        && s.det().is_negative()
        && s.first_principal_violation(2, s.n, |v| !v.is_positive()).is_none()
        && (0..s.n).any(|i| s.a[(i, i)].is_positive()))
}

/// `det M(i:j) = 0` for every `i != j` with `i + j` even, where `M(i:j)`
/// deletes row `i` and column `j`.
pub fn minor_parity_pattern(a: &RatMatrix) -> Result<Option<(usize, usize, Rational)>> {
    let n = a.require_square()?;
    for i in 0..n {
        for j in 0..n {
            if i == j || (i + j) % 2 == 1 {
                continue;
            }
            let r: Vec<usize> = (0..n).filter(|&k| k != i).collect();
            let c: Vec<usize> = (0..n).filter(|&k| k != j).collect();
            let v = minor(a, &IndexSet::new(r, n)?, &IndexSet::new(c, n)?)?;
            if !v.is_zero() {
                return Ok(Some((i, j, v)));
            }
        }
    }
    Ok(None)
}

/// The parameters `a_1 < ... < a_n` when `A` has the type-D pattern.
pub fn type_d_parameters(a: &RatMatrix) -> Option<Vec<Rational>> {
    type_d_check(a).ok()
}

fn type_d_check(a: &RatMatrix) -> std::result::Result<Vec<Rational>, Witness> {
    let n = a.rows();
    if !a.is_square() {
        return Err(Witness::Note("not square".into()));
    }
    let diag: Vec<Rational> = (0..n).map(|i| a[(i, i)].clone()).collect();
    if let Some(w) = first_entry(a, |i, j, v| *v != diag[i.min(j)]) {
        return Err(w);
    }
    if let Some(k) = (1..n).find(|&k| diag[k] <= diag[k - 1]) {
        return Err(Witness::Note(format!(
            "diagonal not strictly increasing at index {k}"
        )));
    }
    Ok(diag)
}

pub fn type_d_verdict(s: &Subject) -> Verdict {
    match type_d_check(&s.a) {
        Ok(p) => Verdict::yes(Witness::Vector(p)),
        Err(w) => Verdict::no(w),
    }
}

pub fn totally_nonpositive_ge2_verdict(s: &Subject) -> Result<Verdict> {
    s.require_small()?;
    for k in 2..=s.n {
        for rows in IndexSet::subsets(s.n, k) {
            for cols in IndexSet::subsets(s.n, k) {
                let v = if rows == cols {
                    s.principal_minor(&rows)
                } else {
                    minor(&s.a, &rows, &cols)?
                };
                if v.is_positive() {
                    return Ok(Verdict::no(Witness::Minor {
                        rows,
                        cols,
                        value: v,
                    }));
                }
            }
        }
    }
    Ok(Verdict::yes(Witness::None))
}

/// A class-membership strategy.
pub trait MatrixClass: Send + Sync {
    fn label(&self) -> ClassLabel;
    fn test(&self, subject: &Subject) -> Result<Verdict>;
}

type VerdictFn = fn(&Subject) -> Result<Verdict>;

struct FnClass {
    label: ClassLabel,
    test: VerdictFn,
}

impl MatrixClass for FnClass {
    fn label(&self) -> ClassLabel {
        self.label
    }

    fn test(&self, subject: &Subject) -> Result<Verdict> {
        (self.test)(subject)
    }
}

pub struct ClassRegistry {
    classes: Vec<Box<dyn MatrixClass>>,
}

impl Default for ClassRegistry {
    fn default() -> Self {
        let mut r = Self::empty();
        let builtin: [(ClassLabel, VerdictFn); 14] = [
            (ClassLabel::Z, |s| Ok(z_verdict(s))),
            (ClassLabel::Nonnegative, |s| Ok(nonnegative_verdict(s))),
            (ClassLabel::Nonpositive, |s| Ok(nonpositive_verdict(s))),
            (ClassLabel::M, m_verdict),
            (ClassLabel::InvertibleM, invertible_m_verdict),
            (ClassLabel::H, h_verdict),
            (ClassLabel::N, n_verdict),
            (ClassLabel::N0, n0_verdict),
            (ClassLabel::F0, f0_verdict),
            (ClassLabel::InverseM, inverse_m_verdict),
            (ClassLabel::InverseN0, inverse_n0_verdict),
            (ClassLabel::InverseF0, inverse_f0_verdict),
            (ClassLabel::TypeD, |s| Ok(type_d_verdict(s))),
            (ClassLabel::TotallyNonpositiveGe2, totally_nonpositive_ge2_verdict),
        ];
        for (label, test) in builtin {
            r.register(Box::new(FnClass { label, test }));
        }
        r
    }
}

impl ClassRegistry {
    pub fn empty() -> Self {
        Self {
            classes: Vec::new(),
        }
    }

    /// Adds a strategy, replacing any existing one with the same label.
    pub fn register(&mut self, class: Box<dyn MatrixClass>) {
        match self.classes.iter().position(|c| c.label() == class.label()) {
            Some(i) => self.classes[i] = class,
            None => self.classes.push(class),
        }
    }

    pub fn get(&self, label: ClassLabel) -> Option<&dyn MatrixClass> {
        self.classes
            .iter()
            .find(|c| c.label() == label)
            .map(|c| c.as_ref())
    }

    pub fn labels(&self) -> Vec<ClassLabel> {
        self.classes.iter().map(|c| c.label()).collect()
    }

    pub fn test(&self, label: ClassLabel, a: &RatMatrix) -> Result<Verdict> {
        let class = self
            .get(label)
            .ok_or_else(|| Error::Unsupported(format!("no strategy registered for {label}")))?;
        class.test(&Subject::new(a)?)
    }

    /// Runs every strategy. Dimension restrictions become `false` with a note.
    pub fn classify(&self, a: &RatMatrix) -> Result<ClassReport> {
        let subject = Subject::new(a)?;
        let mut verdicts = BTreeMap::new();
        for class in &self.classes {
            let v = match class.test(&subject) {
                Ok(v) => v,
                Err(Error::DimensionTooSmall { n, min }) => Verdict::no(Witness::Note(format!(
                    "defined for n >= {min}, got n = {n}"
                ))),
                Err(e) => return Err(e),
            };
            verdicts.insert(class.label(), v);
        }
        Ok(ClassReport {
            matrix: a.clone(),
            verdicts,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassReport {
    pub matrix: RatMatrix,
    pub verdicts: BTreeMap<ClassLabel, Verdict>,
}

impl ClassReport {
    pub fn holds(&self, label: ClassLabel) -> bool {
        self.verdicts.get(&label).is_some_and(|v| v.holds)
    }

    pub fn to_json(&self) -> Value {
        let mut class = Map::new();
        let mut witnesses = Map::new();
        let mut checks = Map::new();
        for (label, v) in &self.verdicts {
            class.insert(label.name().into(), Value::Bool(v.holds));
            witnesses.insert(label.name().into(), v.witness.to_json());
            if let Some(ok) = v.cross_check {
                checks.insert(label.name().into(), Value::Bool(ok));
            }
        }
        json!({
            "matrix": matrix_json(&self.matrix),
            "class": class,
            "witnesses": witnesses,
            "cross_checks": checks,
        })
    }

    /// Labels whose implied class is missing, e.g. `InvertibleM` without `M`.
    pub fn lattice_violations(&self) -> Vec<(ClassLabel, ClassLabel)> {
        use ClassLabel::*;
        let edges = [
            (InvertibleM, M),
            (M, Z),
            (N, N0),
            (N0, Z),
            (F0, Z),
            (InverseN0, Nonpositive),
            (InverseM, Nonnegative),
        ];
        edges
            .into_iter()
            .filter(|&(a, b)| {
                self.verdicts.contains_key(&a)
                    && self.verdicts.contains_key(&b)
                    && self.holds(a)
                    && !self.holds(b)
            })
            .collect()
    }
}

/// Characteristic polynomial (leading coefficient first) and the number of
/// distinct negative real eigenvalues.
#[derive(Clone, Debug, PartialEq)]
pub struct CharPolySignature {
    pub coefficients: Vec<Rational>,
    pub negative_real_root_count: usize,
}

pub fn negative_eigenvalue_count(a: &RatMatrix) -> Result<CharPolySignature> {
    a.require_square()?;
    let p = charpoly(a);
    Ok(CharPolySignature {
        coefficients: p.coeffs().iter().rev().cloned().collect(),
        negative_real_root_count: negative_root_count(&p),
    })
}

fn bool_of(v: Result<Verdict>) -> Result<bool> {
    v.map(|v| v.holds)
}

pub fn is_z(a: &RatMatrix) -> Result<bool> {
    Ok(z_verdict(&Subject::new(a)?).holds)
}

pub fn is_m(a: &RatMatrix) -> Result<bool> {
    bool_of(m_verdict(&Subject::new(a)?))
}

pub fn is_invertible_m(a: &RatMatrix) -> Result<bool> {
    bool_of(invertible_m_verdict(&Subject::new(a)?))
}

pub fn is_h(a: &RatMatrix) -> Result<bool> {
    bool_of(h_verdict(&Subject::new(a)?))
}

pub fn is_n(a: &RatMatrix) -> Result<bool> {
    bool_of(n_verdict(&Subject::new(a)?))
}

pub fn is_n0(a: &RatMatrix) -> Result<bool> {
    bool_of(n0_verdict(&Subject::new(a)?))
}

pub fn is_f0(a: &RatMatrix) -> Result<bool> {
    bool_of(f0_verdict(&Subject::new(a)?))
}

pub fn is_inverse_m(a: &RatMatrix) -> Result<bool> {
    bool_of(inverse_m_verdict(&Subject::new(a)?))
}

pub fn is_inverse_n0(a: &RatMatrix) -> Result<bool> {
    bool_of(inverse_n0_verdict(&Subject::new(a)?))
}

pub fn is_inverse_f0(a: &RatMatrix) -> Result<bool> {
    bool_of(inverse_f0_verdict(&Subject::new(a)?))
}

pub fn is_type_d(a: &RatMatrix) -> bool {
    type_d_parameters(a).is_some()
}

pub fn is_totally_nonpositive_ge2(a: &RatMatrix) -> Result<bool> {
    bool_of(totally_nonpositive_ge2_verdict(&Subject::new(a)?))
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

    fn type_d4() -> RatMatrix {
        RatMatrix::from_i64(&[
            &[-3, -3, -3, -3],
            &[-3, -2, -2, -2],
            &[-3, -2, -1, -1],
            &[-3, -2, -1, 1],
        ])
    }

    #[test]
    fn z_examples() {
        assert!(is_z(&RatMatrix::identity(3)).unwrap());
        assert!(is_z(&mpcounter()).unwrap());
        assert!(!is_z(&RatMatrix::from_i64(&[&[0, 1], &[0, 0]])).unwrap());
    }

    #[test]
    fn m_examples() {
        let z = RatMatrix::zeros(3, 3);
        assert!(is_m(&z).unwrap());
        assert!(!is_invertible_m(&z).unwrap());
        let a = RatMatrix::from_i64(&[&[2, -1], &[-1, 2]]);
        assert!(is_invertible_m(&a).unwrap());
        assert_eq!(
            inverse(&a).unwrap(),
            RatMatrix::from_i64(&[&[2, 1], &[1, 2]]).scale(&frac(1, 3))
        );
        // I - B with B = (1/2) J, irreducible and stochastic
        let s = RatMatrix::from_rows(vec![
            vec![frac(1, 2), frac(-1, 2)],
            vec![frac(-1, 2), frac(1, 2)],
        ])
        .unwrap();
        assert!(is_m(&s).unwrap());
        assert!(!is_invertible_m(&s).unwrap());
    }

    #[test]
    fn h_examples() {
        let a = RatMatrix::from_i64(&[&[2, -1], &[-1, 2]]);
        assert!(is_h(&a).unwrap());
        let s5 = RatMatrix::from_i64(&[&[3, -2, -2], &[-2, -1, -1], &[-2, -1, 0]]);
        assert!(!is_h(&s5).unwrap());
        assert!(is_h(&RatMatrix::identity(2)).unwrap());
    }

    #[test]
    fn n_examples() {
        let a = RatMatrix::from_i64(&[&[2, -4, -1], &[-2, 4, -1], &[-2, -2, 1]]);
        assert!(is_n0(&a).unwrap());
        let f5 = RatMatrix::from_i64(&[&[0, -2], &[-3, 0]]);
        assert!(is_n0(&f5).unwrap());
        assert!(!is_n(&f5).unwrap());
        assert!(!is_n0(&RatMatrix::identity(2)).unwrap());
        assert!(!is_n(&RatMatrix::identity(2)).unwrap());
    }

    #[test]
    fn one_by_one_conventions() {
        let pos = RatMatrix::from_i64(&[&[2]]);
        let zero = RatMatrix::from_i64(&[&[0]]);
        let neg = RatMatrix::from_i64(&[&[-1]]);
        assert!(is_m(&zero).unwrap() && !is_invertible_m(&zero).unwrap());
        assert!(is_invertible_m(&pos).unwrap());
        assert!(is_n0(&neg).unwrap() && !is_n0(&zero).unwrap() && !is_m(&neg).unwrap());
    }

    #[test]
    fn f0_examples() {
        let s = Subject::new(&mpcounter()).unwrap();
        let v = f0_verdict(&s).unwrap();
        assert!(v.holds);
        assert_eq!(v.witness, Witness::IndexSet(IndexSet::full(3)));
        assert!(is_f0(&lead()).unwrap());
        assert!(!is_f0(&RatMatrix::identity(3)).unwrap());
        assert_eq!(
            is_f0(&RatMatrix::identity(2)),
            Err(Error::DimensionTooSmall { n: 2, min: 3 })
        );
    }

    #[test]
    fn inverse_class_examples() {
        assert!(is_inverse_f0(&type_d4()).unwrap());
        let d3 = RatMatrix::from_i64(&[&[-3, -3, -3], &[-3, -2, -2], &[-3, -2, -1]]);
        assert!(is_inverse_n0(&d3).unwrap());
        assert!(is_inverse_m(&RatMatrix::identity(3)).unwrap());
        let v = inverse_m_verdict(&Subject::new(&RatMatrix::from_i64(&[&[1, 1], &[1, 1]])).unwrap())
            .unwrap();
        assert_eq!(v, Verdict::no(Witness::Determinant(int(0))));
    }

    #[test]
    fn type_d_examples() {
        let s = Subject::new(&type_d4()).unwrap();
        assert_eq!(
            type_d_verdict(&s).witness,
            Witness::Vector(vec![int(-3), int(-2), int(-1), int(1)])
        );
        assert!(is_totally_nonpositive_ge2(&type_d4()).unwrap());
        assert!(!is_type_d(&RatMatrix::identity(3)));
        assert!(!is_totally_nonpositive_ge2(&RatMatrix::identity(3)).unwrap());
        assert_eq!(minor_parity_pattern(&type_d4()).unwrap(), None);
    }

    #[test]
    fn negative_eigenvalues() {
        let sig = negative_eigenvalue_count(&RatMatrix::identity(2)).unwrap();
        assert_eq!(sig.negative_real_root_count, 0);
        assert_eq!(sig.coefficients, vec![int(1), int(-2), int(1)]);
        let a = RatMatrix::from_i64(&[&[2, -4, -1], &[-2, 4, -1], &[-2, -2, 1]]);
        assert_eq!(negative_eigenvalue_count(&a).unwrap().negative_real_root_count, 1);
        let f = RatMatrix::from_i64(&[&[0, -1], &[-1, 0]]);
        assert_eq!(negative_eigenvalue_count(&f).unwrap().negative_real_root_count, 1);
    }

    #[test]
    fn report_json() {
        let rep = ClassRegistry::default().classify(&lead()).unwrap();
        let j = rep.to_json();
        assert_eq!(j["class"]["F0"], Value::Bool(true));
        assert_eq!(j["class"]["Z"], Value::Bool(true));
        assert_eq!(j["witnesses"]["F0"]["index_set"], json!([0, 1]));
        assert!(rep.lattice_violations().is_empty());
        let small = ClassRegistry::default().classify(&RatMatrix::identity(2)).unwrap();
        assert!(!small.holds(ClassLabel::F0));
    }

    #[test]
    fn labels_parse() {
        assert_eq!("inverse-n0".parse::<ClassLabel>().unwrap(), ClassLabel::InverseN0);
        assert_eq!("f0".parse::<ClassLabel>().unwrap(), ClassLabel::F0);
        assert!("q".parse::<ClassLabel>().is_err());
    }
}
