//! 3×3 circulants `α₀I + α₁P + α₂P²` and their class regions.
//!
//! The complex eigenvalue `z = α₀ + α₁ω + α₂ω²` is encoded as `(a, t)` with
//! `z = a + ib` and `t = √3·b`, so every region boundary (lines `a = c ± |t|`,
//! circles `(a - p)² + (t - q)²/3 = 1`) is a rational comparison.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use num_traits::Signed;

use crate::classify::{ClassLabel, ClassRegistry};
use crate::error::{Error, Result};
use crate::matrix::RatMatrix;
use crate::rational::{format_decimal_exact, format_decimal_places, frac, int, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TraceClass {
    /// `α₀ + α₁ + α₂ = 1`
    Plus,
    /// `α₀ + α₁ + α₂ = -1`
    Minus,
}

impl TraceClass {
    pub fn sum(self) -> Rational {
        match self {
            TraceClass::Plus => int(1),
            TraceClass::Minus => int(-1),
        }
    }
}

impl fmt::Display for TraceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TraceClass::Plus => "+1",
            TraceClass::Minus => "-1",
        })
    }
}

impl FromStr for TraceClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "1" | "+1" | "plus" => Ok(TraceClass::Plus),
            "-1" | "−1" | "minus" => Ok(TraceClass::Minus),
            other => Err(Error::Parse(format!("trace class must be +1 or -1, got {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CirculantParams {
    pub alpha0: Rational,
    pub alpha1: Rational,
    pub alpha2: Rational,
    pub trace_class: Option<TraceClass>,
}

impl CirculantParams {
    pub fn new(alpha0: Rational, alpha1: Rational, alpha2: Rational) -> Self {
        let sum = &alpha0 + &alpha1 + &alpha2;
        let trace_class = [TraceClass::Plus, TraceClass::Minus]
            .into_iter()
            .find(|c| c.sum() == sum);
        Self {
            alpha0,
            alpha1,
            alpha2,
            trace_class,
        }
    }

    pub fn sum(&self) -> Rational {
        &self.alpha0 + &self.alpha1 + &self.alpha2
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CirculantPoint {
    pub a: Rational,
    pub t: Rational,
}

impl CirculantPoint {
    pub fn new(a: Rational, t: Rational) -> Self {
        Self { a, t }
    }
}

impl fmt::Display for CirculantPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.t)
    }
}

pub fn build_circulant(p: &CirculantParams) -> RatMatrix {
    let (x, y, z) = (&p.alpha0, &p.alpha1, &p.alpha2);
    RatMatrix::from_rows(vec![
        vec![x.clone(), y.clone(), z.clone()],
        vec![z.clone(), x.clone(), y.clone()],
        vec![y.clone(), z.clone(), x.clone()],
    ])
    .expect("3x3")
}

pub fn eigen_point(p: &CirculantParams) -> CirculantPoint {
    CirculantPoint {
        a: &p.alpha0 - (&p.alpha1 + &p.alpha2) / int(2),
        t: (&p.alpha1 - &p.alpha2) * frac(3, 2),
    }
}

pub fn params_from_point(pt: &CirculantPoint, trace_class: TraceClass) -> CirculantParams {
    let base = match trace_class {
        TraceClass::Minus => -(&pt.a + int(1)) / int(3),
        TraceClass::Plus => (int(1) - &pt.a) / int(3),
    };
    let alpha1 = &base + &pt.t / int(3);
    let alpha2 = &base - &pt.t / int(3);
    let alpha0 = trace_class.sum() - &alpha1 - &alpha2;
    CirculantParams {
        alpha0,
        alpha1,
        alpha2,
        trace_class: Some(trace_class),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rel {
    Lt,
    Le,
    Gt,
    Ge,
}

/// `lhs rel rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct Condition {
    pub lhs: Rational,
    pub rel: Rel,
    pub rhs: Rational,
}

impl Condition {
    fn new(lhs: Rational, rel: Rel, rhs: Rational) -> Self {
        Self { lhs, rel, rhs }
    }

    pub fn holds(&self) -> bool {
        match self.rel {
            Rel::Lt => self.lhs < self.rhs,
            Rel::Le => self.lhs <= self.rhs,
            Rel::Gt => self.lhs > self.rhs,
            Rel::Ge => self.lhs >= self.rhs,
        }
    }

    pub fn is_tight(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RegionVerdict {
    pub label: ClassLabel,
    pub trace_class: TraceClass,
    pub in_region: bool,
    pub boundary: bool,
}

/// `(a - p)² + (t - q)²/3`
fn ellipse(pt: &CirculantPoint, p: Rational, q: Rational) -> Rational {
    let da = &pt.a - p;
    let dt = &pt.t - q;
    &da * &da + &dt * &dt / int(3)
}

/// Region pairs every rule set knows about.
pub const REGION_LABELS: [(ClassLabel, TraceClass); 6] = [
    (ClassLabel::F0, TraceClass::Minus),
    (ClassLabel::InverseN0, TraceClass::Minus),
    (ClassLabel::InverseF0, TraceClass::Minus),
    (ClassLabel::N0, TraceClass::Minus),
    (ClassLabel::M, TraceClass::Plus),
    (ClassLabel::InverseM, TraceClass::Plus),
];

pub fn region_defined(label: ClassLabel, trace_class: TraceClass) -> bool {
    REGION_LABELS.contains(&(label, trace_class))
}

fn unsupported(label: ClassLabel, trace_class: TraceClass) -> Error {
    Error::Unsupported(format!(
        "no {label} region for trace class {trace_class}"
    ))
}

/// Shared conditions: the F₀, N₀, M and inverse-M regions.
fn common_conditions(
    pt: &CirculantPoint,
    label: ClassLabel,
    trace_class: TraceClass,
) -> Option<Vec<Condition>> {
    let half = frac(1, 2);
    let abs_t = pt.t.abs();
    Some(match (label, trace_class) {
        (ClassLabel::F0, TraceClass::Minus) => vec![
            Condition::new(pt.a.clone(), Rel::Gt, &abs_t - int(1)),
            Condition::new(pt.a.clone(), Rel::Ge, half),
            Condition::new(ellipse(pt, int(1), int(0)), Rel::Lt, int(1)),
        ],
        (ClassLabel::N0, TraceClass::Minus) => vec![
            Condition::new(pt.a.clone(), Rel::Ge, half),
            Condition::new(pt.a.clone(), Rel::Ge, &abs_t - int(1)),
            Condition::new(ellipse(pt, int(1), int(0)), Rel::Ge, int(1)),
        ],
        (ClassLabel::M, TraceClass::Plus) => {
            vec![Condition::new(pt.a.clone(), Rel::Ge, &abs_t + int(1))]
        }
        (ClassLabel::InverseM, TraceClass::Plus) => vec![
            Condition::new(ellipse(pt, half.clone(), frac(3, 2)), Rel::Le, int(1)),
            Condition::new(ellipse(pt, half, frac(-3, 2)), Rel::Le, int(1)),
        ],
        _ => return None,
    })
}

/// A set of region inequalities.
pub trait RegionRules: Send + Sync {
    fn name(&self) -> &'static str;

    fn conditions(
        &self,
        pt: &CirculantPoint,
        label: ClassLabel,
        trace_class: TraceClass,
    ) -> Result<Vec<Condition>>;

    fn region(
        &self,
        pt: &CirculantPoint,
        label: ClassLabel,
        trace_class: TraceClass,
    ) -> Result<RegionVerdict> {
        let conds = self.conditions(pt, label, trace_class)?;
        Ok(RegionVerdict {
            label,
            trace_class,
            in_region: conds.iter().all(Condition::holds),
            boundary: conds.iter().any(Condition::is_tight),
        })
    }
}

/// Inverse-N₀ / inverse-F₀ regions read off the adjugate: `A⁻¹` is a
/// Z-matrix iff both shifted ellipses centred at `(-1/2, ±3/2)` are left,
/// its diagonal is nonnegative iff `(a - 1)² + t²/3 <= 1`, and the sign of
/// `α₀` separates the two classes.
pub struct CorrectedRules;

impl RegionRules for CorrectedRules {
    fn name(&self) -> &'static str {
        "corrected"
    }

    fn conditions(
        &self,
        pt: &CirculantPoint,
        label: ClassLabel,
        trace_class: TraceClass,
    ) -> Result<Vec<Condition>> {
        if let Some(c) = common_conditions(pt, label, trace_class) {
            return Ok(c);
        }
        let half = frac(1, 2);
        let sign = match (label, trace_class) {
            (ClassLabel::InverseN0, TraceClass::Minus) => {
                Condition::new(pt.a.clone(), Rel::Le, half.clone())
            }
            (ClassLabel::InverseF0, TraceClass::Minus) => {
                Condition::new(pt.a.clone(), Rel::Gt, half.clone())
            }
            _ => return Err(unsupported(label, trace_class)),
        };
        Ok(vec![
            Condition::new(ellipse(pt, -half.clone(), frac(3, 2)), Rel::Ge, int(1)),
            Condition::new(ellipse(pt, -half, frac(-3, 2)), Rel::Ge, int(1)),
            Condition::new(ellipse(pt, int(1), int(0)), Rel::Le, int(1)),
            sign,
        ])
    }
}

/// Earlier rules with the inverse-class ellipses centred at (1/2, ±3/2).
/// Kept for comparison; they disagree with direct classification.
pub struct LegacyRules;

impl RegionRules for LegacyRules {
    fn name(&self) -> &'static str {
        "legacy"
    }

    fn conditions(
        &self,
        pt: &CirculantPoint,
        label: ClassLabel,
        trace_class: TraceClass,
    ) -> Result<Vec<Condition>> {
        if let Some(c) = common_conditions(pt, label, trace_class) {
            return Ok(c);
        }
        let half = frac(1, 2);
        let sign = match (label, trace_class) {
            (ClassLabel::InverseN0, TraceClass::Minus) => {
                Condition::new(pt.a.clone(), Rel::Le, half.clone())
            }
            (ClassLabel::InverseF0, TraceClass::Minus) => {
                Condition::new(pt.a.clone(), Rel::Gt, half.clone())
            }
            _ => return Err(unsupported(label, trace_class)),
        };
        Ok(vec![
            Condition::new(ellipse(pt, half.clone(), frac(3, 2)), Rel::Ge, int(1)),
            Condition::new(ellipse(pt, half, frac(-3, 2)), Rel::Ge, int(1)),
            sign,
        ])
    }
}

pub struct RegionRulesRegistry {
    rules: Vec<Box<dyn RegionRules>>,
}

impl Default for RegionRulesRegistry {
    fn default() -> Self {
        Self {
            rules: vec![Box::new(CorrectedRules), Box::new(LegacyRules)],
        }
    }
}

impl RegionRulesRegistry {
    pub fn register(&mut self, rules: Box<dyn RegionRules>) {
        self.rules.retain(|r| r.name() != rules.name());
        self.rules.push(rules);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.rules.iter().map(|r| r.name()).collect()
    }

    pub fn get(&self, name: &str) -> Result<&dyn RegionRules> {
        self.rules
            .iter()
            .find(|r| r.name().eq_ignore_ascii_case(name))
            .map(|r| r.as_ref())
            .ok_or_else(|| {
                Error::Unsupported(format!(
                    "unknown region rule set {name:?} (known: {})",
                    self.names().join(", ")
                ))
            })
    }
}

/// `region` with the default (corrected) rule set.
pub fn region(pt: &CirculantPoint, label: ClassLabel, trace_class: TraceClass) -> Result<RegionVerdict> {
    CorrectedRules.region(pt, label, trace_class)
}

/// Classifies the constructed circulant directly.
pub fn direct_verdict(
    classes: &ClassRegistry,
    pt: &CirculantPoint,
    label: ClassLabel,
    trace_class: TraceClass,
) -> Result<bool> {
    let a = build_circulant(&params_from_point(pt, trace_class));
    Ok(classes.test(label, &a)?.holds)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CrossCheckRow {
    pub point: CirculantPoint,
    pub label: ClassLabel,
    pub region: bool,
    pub direct: bool,
    pub boundary: bool,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct CrossCheckReport {
    pub checked: usize,
    pub boundary_points: usize,
    pub disagreements: Vec<CrossCheckRow>,
}

impl CrossCheckReport {
    pub fn non_boundary_disagreements(&self) -> Vec<&CrossCheckRow> {
        self.disagreements.iter().filter(|r| !r.boundary).collect()
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        let io = |e: csv::Error| Error::Parse(format!("csv write failed: {e}"));
        out.write_record(["a", "t", "label", "region", "direct", "boundary"])
            .map_err(io)?;
        for r in &self.disagreements {
            out.write_record([
                format_decimal_exact(&r.point.a),
                format_decimal_exact(&r.point.t),
                r.label.name().to_string(),
                r.region.to_string(),
                r.direct.to_string(),
                r.boundary.to_string(),
            ])
            .map_err(io)?;
        }
        out.flush().map_err(|e| Error::Parse(format!("csv write failed: {e}")))?;
        Ok(())
    }
}

/// Region verdict against direct classification for each point and label.
pub fn region_cross_check(
    rules: &dyn RegionRules,
    grid: &[CirculantPoint],
    labels: &[ClassLabel],
    trace_class: TraceClass,
) -> Result<CrossCheckReport> {
    let classes = ClassRegistry::default();
    let mut report = CrossCheckReport::default();
    for pt in grid {
        for &label in labels {
            let v = rules.region(pt, label, trace_class)?;
            let direct = direct_verdict(&classes, pt, label, trace_class)?;
            report.checked += 1;
            if v.boundary {
                report.boundary_points += 1;
            }
            if v.in_region != direct {
                report.disagreements.push(CrossCheckRow {
                    point: pt.clone(),
                    label,
                    region: v.in_region,
                    direct,
                    boundary: v.boundary,
                });
            }
        }
    }
    Ok(report)
}

/// A rectangular rational lattice, bounds inclusive.
#[derive(Clone, Debug, PartialEq)]
pub struct GridSpec {
    pub a_min: Rational,
    pub a_max: Rational,
    pub t_min: Rational,
    pub t_max: Rational,
    pub step: Rational,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            a_min: int(-2),
            a_max: int(3),
            t_min: int(-3),
            t_max: int(3),
            step: frac(1, 4),
        }
    }
}

impl GridSpec {
    fn axis(lo: &Rational, hi: &Rational, step: &Rational) -> Vec<Rational> {
        let mut out = Vec::new();
        let mut v = lo.clone();
        while v <= *hi {
            out.push(v.clone());
            v += step;
        }
        out
    }

    /// Points ordered by `a`, then `t`.
    pub fn points(&self) -> Result<Vec<CirculantPoint>> {
        if !self.step.is_positive() {
            return Err(Error::Precondition("grid step must be positive".into()));
        }
        let ts = Self::axis(&self.t_min, &self.t_max, &self.step);
        Ok(Self::axis(&self.a_min, &self.a_max, &self.step)
            .into_iter()
            .flat_map(|a| ts.iter().map(move |t| CirculantPoint::new(a.clone(), t.clone())))
            .collect())
    }
}

/// Writes `a,t,label,in_region,boundary` rows, returning the row count.
/// Coordinates are exact decimals (or `p/q`) unless `decimal_places` is set.
pub fn emit_region_grid<W: Write>(
    rules: &dyn RegionRules,
    grid: &GridSpec,
    labels: &[ClassLabel],
    trace_class: TraceClass,
    decimal_places: Option<usize>,
    w: W,
) -> Result<usize> {
    let fmt = |r: &Rational| match decimal_places {
        Some(p) => format_decimal_places(r, p),
        None => format_decimal_exact(r),
    };
    let io = |e: csv::Error| Error::Parse(format!("csv write failed: {e}"));
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["a", "t", "label", "in_region", "boundary"])
        .map_err(io)?;
    let mut rows = 0;
    for pt in grid.points()? {
        for &label in labels {
            let v = rules.region(&pt, label, trace_class)?;
            out.write_record([
                fmt(&pt.a),
                fmt(&pt.t),
                label.name().to_string(),
                v.in_region.to_string(),
                v.boundary.to_string(),
            ])
            .map_err(io)?;
            rows += 1;
        }
    }
    out.flush().map_err(|e| Error::Parse(format!("csv write failed: {e}")))?;
    Ok(rows)
}

/// The labels with a region in the given trace class.
pub fn labels_for(trace_class: TraceClass) -> Vec<ClassLabel> {
    REGION_LABELS
        .iter()
        .filter(|(_, c)| *c == trace_class)
        .map(|(l, _)| *l)
        .collect()
}
