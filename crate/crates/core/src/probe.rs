//! Seeded probes for open conjectures. A probe samples matrices, evaluates a
//! conjectured property and records violations; it never asserts anything.

use std::collections::BTreeMap;

use num_traits::Signed;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::classify::is_f0;
use crate::construct::{
    random_singular_f0_irreducible, random_singular_f0_reducible, random_z, rng_for, EntryBounds,
};
use crate::error::{Error, Result};
use crate::geninv::group_inverse;
use crate::io::{matrix_from_json, matrix_json};
use crate::linalg::{comparison_matrix, inverse};
use crate::matrix::RatMatrix;
use crate::rational::Rational;

pub const REVERSE_OSTROWSKI_MAX_N: usize = 6;

#[derive(Clone, Debug, PartialEq)]
pub enum Evaluation {
    Skip(String),
    Done { key: String, violation: Option<String> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Counterexample {
    pub trial: usize,
    pub matrix: RatMatrix,
    pub violation: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeReport {
    pub probe: String,
    pub seed: u64,
    pub n: usize,
    pub trials: usize,
    pub skipped: usize,
    pub evaluated: usize,
    pub counterexamples: Vec<Counterexample>,
    pub tally: BTreeMap<String, usize>,
    pub skip_reasons: BTreeMap<String, usize>,
}

impl ProbeReport {
    pub fn to_json(&self) -> Value {
        json!({
            "probe": self.probe,
            "seed": self.seed,
            "n": self.n,
            "trials": self.trials,
            "skipped": self.skipped,
            "evaluated": self.evaluated,
            "tally": self.tally,
            "skip_reasons": self.skip_reasons,
            "counterexamples": self.counterexamples.iter().map(|c| json!({
                "trial": c.trial,
                "matrix": matrix_json(&c.matrix),
                "violation": c.violation,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("probe report: bad or missing {what}"));
        let uint = |k: &str| v[k].as_u64().ok_or_else(|| bad(k));
        let counts = |k: &str| -> Result<BTreeMap<String, usize>> {
            v[k].as_object()
                .ok_or_else(|| bad(k))?
                .iter()
                .map(|(key, c)| Ok((key.clone(), c.as_u64().ok_or_else(|| bad(k))? as usize)))
                .collect()
        };
        let counterexamples = v["counterexamples"]
            .as_array()
            .ok_or_else(|| bad("counterexamples"))?
            .iter()
            .map(|c| {
                Ok(Counterexample {
                    trial: c["trial"].as_u64().ok_or_else(|| bad("trial"))? as usize,
                    matrix: matrix_from_json(&c["matrix"])?,
                    violation: c["violation"].as_str().ok_or_else(|| bad("violation"))?.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            probe: v["probe"].as_str().ok_or_else(|| bad("probe"))?.to_string(),
            seed: uint("seed")?,
            n: uint("n")? as usize,
            trials: uint("trials")? as usize,
            skipped: uint("skipped")? as usize,
            evaluated: uint("evaluated")? as usize,
            counterexamples,
            tally: counts("tally")?,
            skip_reasons: counts("skip_reasons")?,
        })
    }
}

pub trait Probe: Send + Sync {
    fn name(&self) -> &'static str;

    fn check_n(&self, n: usize) -> Result<()>;

    /// The matrix for trial `trial`, or `None` if generation was rejected.
    fn sample(&self, rng: &mut ChaCha8Rng, n: usize, trial: usize) -> Result<Option<RatMatrix>>;

    fn evaluate(&self, a: &RatMatrix) -> Result<Evaluation>;

    fn run(&self, seed: u64, trials: usize, n: usize) -> Result<ProbeReport> {
        self.check_n(n)?;
        let mut report = ProbeReport {
            probe: self.name().to_string(),
            seed,
            n,
            trials,
            skipped: 0,
            evaluated: 0,
            counterexamples: Vec::new(),
            tally: BTreeMap::new(),
            skip_reasons: BTreeMap::new(),
        };
        for trial in 0..trials {
            let mut rng = rng_for(seed, trial as u64);
            let eval = match self.sample(&mut rng, n, trial)? {
                Some(a) => (self.evaluate(&a)?, a),
                None => (Evaluation::Skip("generator rejected".into()), RatMatrix::zeros(n, n)),
            };
            match eval {
                (Evaluation::Skip(reason), _) => {
                    report.skipped += 1;
                    *report.skip_reasons.entry(reason).or_default() += 1;
                }
                (Evaluation::Done { key, violation }, a) => {
                    report.evaluated += 1;
                    *report.tally.entry(key).or_default() += 1;
                    if let Some(violation) = violation {
                        report.counterexamples.push(Counterexample {
                            trial,
                            matrix: a,
                            violation,
                        });
                    }
                }
            }
        }
        Ok(report)
    }

    /// Replays the run and re-evaluates every stored counterexample.
    fn recheck(&self, report: &ProbeReport) -> Result<bool> {
        for c in &report.counterexamples {
            match self.evaluate(&c.matrix)? {
                Evaluation::Done { violation: Some(v), .. } if v == c.violation => {}
                _ => return Ok(false),
            }
        }
        Ok(self.run(report.seed, report.trials, report.n)? == *report)
    }
}

fn first_violation(
    lhs: &RatMatrix,
    rhs: &RatMatrix,
) -> Option<(usize, usize)> {
    lhs.find(|i, j, v| *v > rhs[(i, j)])
}

/// `(𝓜_A)⁻¹ <= |A⁻¹|` for a nonsingular matrix with nonsingular comparison
/// matrix. `None` when the inequality holds.
pub fn reverse_ostrowski_violation(a: &RatMatrix) -> Result<Option<String>> {
    let ainv = inverse(a)?;
    let minv = inverse(&comparison_matrix(a))?;
    let abs = ainv.abs();
    Ok(first_violation(&minv, &abs).map(|(i, j)| {
        format!(
            "entry ({i},{j}): (M_A)^-1 = {} > |A^-1| = {}",
            minv[(i, j)],
            abs[(i, j)]
        )
    }))
}

/// Invertible Z-matrices with a negative diagonal entry.
pub struct ReverseOstrowski;

impl Probe for ReverseOstrowski {
    fn name(&self) -> &'static str {
        "reverse-ostrowski"
    }

    fn check_n(&self, n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::Dimension("n must be positive".into()));
        }
        if n > REVERSE_OSTROWSKI_MAX_N {
            return Err(Error::TooLarge {
                n,
                max: REVERSE_OSTROWSKI_MAX_N,
            });
        }
        Ok(())
    }

    fn sample(&self, rng: &mut ChaCha8Rng, n: usize, _trial: usize) -> Result<Option<RatMatrix>> {
        let bounds = EntryBounds::default();
        let mut a = random_z(rng, n, &bounds);
        let k = rng.gen_range(0..n);
        a[(k, k)] = bounds.negative(rng);
        Ok(Some(a))
    }

    fn evaluate(&self, a: &RatMatrix) -> Result<Evaluation> {
        if !(0..a.rows()).any(|i| a[(i, i)].is_negative()) {
            return Ok(Evaluation::Skip("no negative diagonal entry".into()));
        }
        match reverse_ostrowski_violation(a) {
            Ok(v) => Ok(Evaluation::Done {
                key: if v.is_some() { "violated" } else { "holds" }.into(),
                violation: v,
            }),
            Err(Error::Singular { .. }) => Ok(Evaluation::Skip("A or M_A singular".into())),
            Err(e) => Err(e),
        }
    }
}

/// F₀ analogue of Fan's result: `A - I ∈ F₀` against `A ∈ F₀` and
/// `I - A⁻¹ ∈ F₀`. Even trials draw `A ∈ F₀`, odd trials `A = I + B` with
/// `B ∈ F₀`. Both implications are tracked.
pub struct FanF0;

fn random_f0(rng: &mut ChaCha8Rng, n: usize) -> Result<Option<RatMatrix>> {
    let bounds = EntryBounds::default();
    let form = match random_singular_f0_reducible(rng, n, &bounds) {
        Ok(f) if rng.gen_bool(0.5) => f,
        _ => match random_singular_f0_irreducible(rng, n, &bounds) {
            Ok(f) => f,
            Err(Error::Reject(_)) => return Ok(None),
            Err(e) => return Err(e),
        },
    };
    let mut m = form.assemble();
    // A positive corner keeps F₀ and makes det = d·det(A) < 0.
    if !rng.gen_ratio(1, 4) {
        m[(n - 1, n - 1)] = bounds.positive(rng);
    }
    Ok(Some(m))
}

impl Probe for FanF0 {
    fn name(&self) -> &'static str {
        "fan-f0"
    }

    fn check_n(&self, n: usize) -> Result<()> {
        if n < 3 {
            return Err(Error::DimensionTooSmall { n, min: 3 });
        }
        Ok(())
    }

    fn sample(&self, rng: &mut ChaCha8Rng, n: usize, trial: usize) -> Result<Option<RatMatrix>> {
        Ok(random_f0(rng, n)?.map(|b| {
            if trial % 2 == 1 {
                &b + &RatMatrix::identity(n)
            } else {
                b
            }
        }))
    }

    fn evaluate(&self, a: &RatMatrix) -> Result<Evaluation> {
        let n = a.require_square()?;
        let id = RatMatrix::identity(n);
        let ainv = match inverse(a) {
            Ok(x) => x,
            Err(Error::Singular { .. }) => return Ok(Evaluation::Skip("A singular".into())),
            Err(e) => return Err(e),
        };
        let a_f0 = is_f0(a)?;
        let shifted = is_f0(&(a - &id))?;
        let complement = is_f0(&(&id - &ainv))?;
        let bit = |b: bool| if b { "1" } else { "0" };
        let key = format!(
            "A-I:{} A:{} I-A^-1:{}",
            bit(shifted),
            bit(a_f0),
            bit(complement)
        );
        let violation = if shifted && !(a_f0 && complement) {
            Some("A-I is F0 but A or I-A^-1 is not".to_string())
        } else if a_f0 && complement && !shifted {
            Some("A and I-A^-1 are F0 but A-I is not".to_string())
        } else {
            None
        };
        Ok(Evaluation::Done { key, violation })
    }
}

/// `M# <= 0` for irreducible singular F₀ matrices of order `n >= 4`.
pub struct GroupInverseIrreducibleF0;

impl Probe for GroupInverseIrreducibleF0 {
    fn name(&self) -> &'static str {
        "ginv-irreducible-f0"
    }

    fn check_n(&self, n: usize) -> Result<()> {
        if n < 3 {
            return Err(Error::DimensionTooSmall { n, min: 3 });
        }
        Ok(())
    }

    fn sample(&self, rng: &mut ChaCha8Rng, n: usize, _trial: usize) -> Result<Option<RatMatrix>> {
        match random_singular_f0_irreducible(rng, n, &EntryBounds::default()) {
            Ok(f) => Ok(Some(f.assemble())),
            Err(Error::Reject(_)) => Ok(None),
            Err(e) => Err(e),
        }
    }

    fn evaluate(&self, a: &RatMatrix) -> Result<Evaluation> {
        let g = group_inverse(a)?;
        let Some(x) = g.ginv else {
            return Ok(Evaluation::Done {
                key: "no group inverse".into(),
                violation: Some("group inverse does not exist".into()),
            });
        };
        let zero = Rational::from_integer(0.into());
        Ok(match x.find(|_, _, v| *v > zero) {
            Some((i, j)) => Evaluation::Done {
                key: "positive entry".into(),
                violation: Some(format!("M# entry ({i},{j}) = {} > 0", x[(i, j)])),
            },
            None => Evaluation::Done {
                key: "nonpositive".into(),
                violation: None,
            },
        })
    }
}

pub struct ProbeRegistry {
    probes: Vec<Box<dyn Probe>>,
}

impl Default for ProbeRegistry {
    fn default() -> Self {
        Self {
            probes: vec![
                Box::new(ReverseOstrowski),
                Box::new(FanF0),
                Box::new(GroupInverseIrreducibleF0),
            ],
        }
    }
}

impl ProbeRegistry {
    pub fn register(&mut self, probe: Box<dyn Probe>) {
        self.probes.retain(|p| p.name() != probe.name());
        self.probes.push(probe);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.probes.iter().map(|p| p.name()).collect()
    }

    pub fn get(&self, name: &str) -> Result<&dyn Probe> {
        self.probes
            .iter()
            .find(|p| p.name().eq_ignore_ascii_case(name))
            .map(|p| p.as_ref())
            .ok_or_else(|| {
                Error::Unsupported(format!(
                    "unknown probe {name:?} (known: {})",
                    self.names().join(", ")
                ))
            })
    }
}

pub fn probe_reverse_ostrowski(seed: u64, trials: usize, n: usize) -> Result<ProbeReport> {
    ReverseOstrowski.run(seed, trials, n)
}

pub fn probe_fan_f0(seed: u64, trials: usize, n: usize) -> Result<ProbeReport> {
    FanF0.run(seed, trials, n)
}
