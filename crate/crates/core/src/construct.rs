//! Constructors and seeded random generators for the matrix families.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::{
    is_f0, is_h, is_inverse_f0, is_inverse_n0, is_invertible_m, is_n, is_n0, is_z,
};
use crate::error::{Error, Result};
use crate::geninv::BlockF0Form;
use crate::linalg::{inverse, is_irreducible};
use crate::matrix::{dot, vec_is_zero, RatMatrix};
use crate::rational::{frac, int, Rational};

/// Attempts allowed per requested instance before giving up.
pub const ATTEMPTS_PER_INSTANCE: usize = 2000;

/// Independent stream for instance `index` under `seed`.
pub fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Random rationals `p/q` with `|p| <= max_numer`, `1 <= q <= max_denom`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EntryBounds {
    pub max_numer: i64,
    pub max_denom: i64,
}

impl Default for EntryBounds {
    fn default() -> Self {
        Self {
            max_numer: 9,
            max_denom: 4,
        }
    }
}

impl EntryBounds {
    pub fn any<R: Rng>(&self, rng: &mut R) -> Rational {
        frac(
            rng.gen_range(-self.max_numer..=self.max_numer),
            rng.gen_range(1..=self.max_denom),
        )
    }

    pub fn positive<R: Rng>(&self, rng: &mut R) -> Rational {
        frac(
            rng.gen_range(1..=self.max_numer),
            rng.gen_range(1..=self.max_denom),
        )
    }

    pub fn negative<R: Rng>(&self, rng: &mut R) -> Rational {
        -self.positive(rng)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TypeDSpec {
    a: Vec<Rational>,
}

impl TypeDSpec {
    pub fn new(a: Vec<Rational>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::Dimension("type-D needs at least one parameter".into()));
        }
        if let Some(k) = (1..a.len()).find(|&k| a[k] <= a[k - 1]) {
            return Err(Error::Precondition(format!(
                "type-D parameters must be strictly increasing (a[{}] = {} >= a[{}] = {})",
                k - 1,
                a[k - 1],
                k,
                a[k]
            )));
        }
        Ok(Self { a })
    }

    pub fn params(&self) -> &[Rational] {
        &self.a
    }
}

/// `a_ij = a_min(i,j)`.
pub fn make_type_d(spec: &TypeDSpec) -> RatMatrix {
    let n = spec.a.len();
    let mut m = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = spec.a[i.min(j)].clone();
        }
    }
    m
}

#[derive(Clone, Debug, PartialEq)]
pub enum BorderAlpha {
    Midpoint,
    Value(Rational),
}

#[derive(Clone, Debug, PartialEq)]
pub struct BorderSpec {
    pub a: RatMatrix,
    pub alpha: BorderAlpha,
}

/// `q`, `t`, `γ`, `δ` of the bordering construction.
#[derive(Clone, Debug, PartialEq)]
pub struct BorderInterval {
    pub q: Rational,
    pub t: Rational,
    pub gamma: Rational,
    pub delta: Rational,
}

impl BorderInterval {
    pub fn of(a: &RatMatrix) -> Result<Self> {
        let n = a.require_square()?;
        if !is_invertible_m(a)? {
            return Err(Error::Precondition("A must be an invertible M-matrix".into()));
        }
        let ainv = inverse(a)?;
        let q: Rational = ainv.entries().iter().cloned().sum();
        let t = (0..n)
            .map(|j| ainv.col(j).into_iter().sum::<Rational>())
            .min()
            .expect("n >= 1");
        if q == t {
            return Err(Error::Precondition(
                "q equals the minimum column sum of A⁻¹, so γ is undefined".into(),
            ));
        }
        Ok(Self {
            gamma: -(&q - &t).recip(),
            delta: -q.recip(),
            q,
            t,
        })
    }

    pub fn midpoint(&self) -> Rational {
        (&self.gamma + &self.delta) / int(2)
    }

    pub fn contains(&self, alpha: &Rational) -> bool {
        self.gamma < *alpha && *alpha < self.delta
    }
}

/// `[[A, -e], [αeᵀ, 1]]`, checked to be an N-matrix with negative inverse.
pub fn border_m_to_n(spec: &BorderSpec) -> Result<RatMatrix> {
    let iv = BorderInterval::of(&spec.a)?;
    let alpha = match &spec.alpha {
        BorderAlpha::Midpoint => iv.midpoint(),
        BorderAlpha::Value(v) => v.clone(),
    };
    if !iv.contains(&alpha) {
        return Err(Error::Precondition(format!(
            "alpha = {alpha} is outside ({}, {})",
            iv.gamma, iv.delta
        )));
    }
    let n = spec.a.rows();
    let m = RatMatrix::block(
        &spec.a,
        &RatMatrix::column(&vec![-Rational::one(); n]),
        &RatMatrix::row_vector(&vec![alpha; n]),
        &RatMatrix::identity(1),
    )?;
    let minv = inverse(&m)?;
    if !minv.all(|v| v.is_negative()) {
        return Err(Error::Postcondition("bordered matrix inverse is not negative".into()));
    }
    if !is_n(&m)? {
        return Err(Error::Postcondition("bordered matrix is not an N-matrix".into()));
    }
    Ok(m)
}

/// Assembles `[[A, b], [cᵀ, 0]]` when it is a singular F₀ matrix.
pub fn make_singular_f0(a: &RatMatrix, b: &[Rational], c: &[Rational]) -> Result<BlockF0Form> {
    let form = BlockF0Form::new(a.clone(), b.to_vec(), c.to_vec(), Rational::zero())?;
    if !is_n0(a)? {
        return Err(Error::Reject("A is not an N0-matrix".into()));
    }
    if b.iter().any(|v| v.is_positive()) {
        return Err(Error::Reject("b has a positive entry".into()));
    }
    if c.iter().any(|v| v.is_positive()) {
        return Err(Error::Reject("c has a positive entry".into()));
    }
    let ainv = inverse(a)?;
    let orth = dot(c, &ainv.mul_vec(b));
    if !orth.is_zero() {
        return Err(Error::Reject(format!("cᵀA⁻¹b = {orth} is not 0")));
    }
    if !is_f0(&form.assemble())? {
        return Err(Error::Reject("assembled matrix is not F0".into()));
    }
    Ok(form)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InstanceLabel {
    Z,
    InvertibleM,
    N0,
    F0SingularReducible,
    F0SingularIrreducible3x3,
    /// Any order `>= 3`; order 3 uses the 3×3 forms.
    F0SingularIrreducible,
    H,
    TypeDInvN0,
    TypeDInvF0,
}

impl InstanceLabel {
    pub const ALL: [InstanceLabel; 9] = [
        InstanceLabel::Z,
        InstanceLabel::InvertibleM,
        InstanceLabel::N0,
        InstanceLabel::F0SingularReducible,
        InstanceLabel::F0SingularIrreducible3x3,
        InstanceLabel::F0SingularIrreducible,
        InstanceLabel::H,
        InstanceLabel::TypeDInvN0,
        InstanceLabel::TypeDInvF0,
    ];

    pub fn name(self) -> &'static str {
        match self {
            InstanceLabel::Z => "Z",
            InstanceLabel::InvertibleM => "InvertibleM",
            InstanceLabel::N0 => "N0",
            InstanceLabel::F0SingularReducible => "F0-singular-reducible",
            InstanceLabel::F0SingularIrreducible3x3 => "F0-singular-irreducible-3x3",
            InstanceLabel::F0SingularIrreducible => "F0-singular-irreducible",
            InstanceLabel::H => "H",
            InstanceLabel::TypeDInvN0 => "TypeD-invN0",
            InstanceLabel::TypeDInvF0 => "TypeD-invF0",
        }
    }

    fn min_n(self) -> usize {
        match self {
            InstanceLabel::N0 | InstanceLabel::TypeDInvF0 => 2,
            InstanceLabel::F0SingularReducible
            | InstanceLabel::F0SingularIrreducible3x3
            | InstanceLabel::F0SingularIrreducible => 3,
            _ => 1,
        }
    }
}

impl fmt::Display for InstanceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for InstanceLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = |s: &str| -> String {
            s.chars()
                .filter(|c| c.is_ascii_alphanumeric())
                .collect::<String>()
                .to_ascii_lowercase()
        };
        let k = key(&s.replace('₀', "0"));
        InstanceLabel::ALL
            .into_iter()
            .find(|l| key(l.name()) == k)
            .ok_or_else(|| Error::Parse(format!("unknown instance label {s:?}")))
    }
}

/// Random Z-matrix: any diagonal, off-diagonal zero with probability 1/3.
pub fn random_z<R: Rng>(rng: &mut R, n: usize, bounds: &EntryBounds) -> RatMatrix {
    let mut m = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = if i == j {
                bounds.any(rng)
            } else if rng.gen_ratio(1, 3) {
                Rational::zero()
            } else {
                bounds.negative(rng)
            };
        }
    }
    m
}

/// Strictly diagonally dominant Z-matrix with positive diagonal.
pub fn random_invertible_m<R: Rng>(rng: &mut R, n: usize, bounds: &EntryBounds) -> RatMatrix {
    let mut m = random_z(rng, n, bounds);
    for i in 0..n {
        let off: Rational = (0..n).filter(|&j| j != i).map(|j| -m[(i, j)].clone()).sum();
        m[(i, i)] = off + bounds.positive(rng);
    }
    m
}

/// Comparison matrix strictly diagonally dominant, off-diagonal signs mixed.
pub fn random_h<R: Rng>(rng: &mut R, n: usize, bounds: &EntryBounds) -> RatMatrix {
    let mut m = RatMatrix::zeros(n, n);
    for i in 0..n {
        let mut off = Rational::zero();
        for j in 0..n {
            if i != j && !rng.gen_ratio(1, 3) {
                m[(i, j)] = bounds.any(rng);
                off += m[(i, j)].abs();
            }
        }
        let d = off + bounds.positive(rng);
        m[(i, i)] = if rng.gen_bool(0.5) { d } else { -d };
    }
    m
}

fn random_diag_positive<R: Rng>(rng: &mut R, n: usize, bounds: &EntryBounds) -> RatMatrix {
    RatMatrix::diagonal(&(0..n).map(|_| bounds.positive(rng)).collect::<Vec<_>>())
}

/// One of the four 2×2 N₀ shapes.
fn random_n0_2x2<R: Rng>(rng: &mut R, bounds: &EntryBounds) -> RatMatrix {
    let beta = bounds.negative(rng);
    let gamma = bounds.negative(rng);
    let bg = &beta * &gamma;
    let (alpha, delta) = match rng.gen_range(0..4) {
        0 => (Rational::zero(), bounds.positive(rng)),
        1 => (bounds.positive(rng), Rational::zero()),
        2 => (Rational::zero(), Rational::zero()),
        _ => {
            // αδ < βγ
            let alpha = bounds.positive(rng);
            let cap = &bg / &alpha;
            let delta = &cap * frac(rng.gen_range(1..8), 8);
            (alpha, delta)
        }
    };
    RatMatrix::from_rows(vec![vec![alpha, beta], vec![gamma, delta]]).expect("2x2")
}

/// Random N₀-matrix: the bordering construction for `n >= 3`, scaled by
/// positive diagonals and symmetrically permuted.
pub fn random_n0<R: Rng>(rng: &mut R, n: usize, bounds: &EntryBounds) -> Result<RatMatrix> {
    match n {
        0 => Err(Error::Dimension("n must be positive".into())),
        1 => Ok(RatMatrix::diagonal(&[bounds.negative(rng)])),
        2 => Ok(random_n0_2x2(rng, bounds)),
        _ => {
            let a = random_invertible_m(rng, n - 1, bounds);
            let iv = BorderInterval::of(&a)?;
            let alpha = &iv.gamma + (&iv.delta - &iv.gamma) * frac(rng.gen_range(1..16), 16);
            let m = border_m_to_n(&BorderSpec {
                a,
                alpha: BorderAlpha::Value(alpha),
            })?;
            let scaled = &(&random_diag_positive(rng, n, bounds) * &m)
                * &random_diag_positive(rng, n, bounds);
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(rng);
            Ok(scaled.permute_symmetric(&perm))
        }
    }
}

fn random_nonpositive_nonzero<R: Rng>(rng: &mut R, n: usize, bounds: &EntryBounds) -> Vec<Rational> {
    loop {
        let v: Vec<Rational> = (0..n)
            .map(|_| {
                if rng.gen_ratio(1, 3) {
                    Rational::zero()
                } else {
                    bounds.negative(rng)
                }
            })
            .collect();
        if !vec_is_zero(&v) {
            return v;
        }
    }
}

/// Reducible singular F₀: `c = 0` or `b = 0`.
pub fn random_singular_f0_reducible<R: Rng>(
    rng: &mut R,
    n: usize,
    bounds: &EntryBounds,
) -> Result<BlockF0Form> {
    let a = random_n0(rng, n - 1, bounds)?;
    let v = random_nonpositive_nonzero(rng, n - 1, bounds);
    let zero = vec![Rational::zero(); n - 1];
    if rng.gen_bool(0.5) {
        make_singular_f0(&a, &v, &zero)
    } else {
        make_singular_f0(&a, &zero, &v)
    }
}

/// Irreducible singular F₀ of order 3 from the 2×2 N₀ shapes.
pub fn random_singular_f0_irreducible_3x3<R: Rng>(rng: &mut R, bounds: &EntryBounds) -> Result<BlockF0Form> {
    let beta = bounds.negative(rng);
    let gamma = bounds.negative(rng);
    let z = Rational::zero();
    let (a, b, c) = match rng.gen_range(0..4) {
        0 => (
            [[z.clone(), beta], [gamma, z.clone()]],
            [bounds.negative(rng), z.clone()],
            [bounds.negative(rng), z.clone()],
        ),
        1 => (
            [[z.clone(), beta], [gamma, z.clone()]],
            [z.clone(), bounds.negative(rng)],
            [z.clone(), bounds.negative(rng)],
        ),
        2 => (
            [[z.clone(), beta], [gamma, bounds.positive(rng)]],
            [z.clone(), bounds.negative(rng)],
            [z.clone(), bounds.negative(rng)],
        ),
        _ => (
            [[bounds.positive(rng), beta], [gamma, z.clone()]],
            [bounds.negative(rng), z.clone()],
            [bounds.negative(rng), z.clone()],
        ),
    };
    let a = RatMatrix::from_rows(a.into_iter().map(|r| r.to_vec()).collect())?;
    let form = make_singular_f0(&a, &b, &c)?;
    if !is_irreducible(&form.assemble()) {
        return Err(Error::Reject("assembled matrix is reducible".into()));
    }
    Ok(form)
}

/// Weighted cycle plus sparse diagonal and chords. A zero-diagonal weighted
/// cycle is N₀ with a sparse inverse, so off-diagonal zeros of `A⁻¹` are common.
fn random_cycle_n0<R: Rng>(rng: &mut R, k: usize, bounds: &EntryBounds) -> RatMatrix {
    let mut perm: Vec<usize> = (0..k).collect();
    perm.shuffle(rng);
    let mut a = RatMatrix::zeros(k, k);
    for idx in 0..k {
        a[(perm[idx], perm[(idx + 1) % k])] = bounds.negative(rng);
    }
    for i in 0..k {
        if rng.gen_ratio(2, 5) {
            a[(i, i)] = bounds.positive(rng) / int(4);
        }
    }
    for i in 0..k {
        for j in 0..k {
            if i != j && a[(i, j)].is_zero() && rng.gen_ratio(3, 20) {
                a[(i, j)] = bounds.negative(rng) / int(4);
            }
        }
    }
    a
}

/// Irreducible singular F₀ of order `n >= 3`. For `n >= 4`: an N₀ block `A`
/// with `(A⁻¹)_ij = 0` (`i != j`), `b = -βe_j`, `c = -γe_i`, so `cᵀA⁻¹b = 0`.
pub fn random_singular_f0_irreducible<R: Rng>(
    rng: &mut R,
    n: usize,
    bounds: &EntryBounds,
) -> Result<BlockF0Form> {
    if n == 3 {
        return random_singular_f0_irreducible_3x3(rng, bounds);
    }
    let k = n - 1;
    let a = random_cycle_n0(rng, k, bounds);
    if !is_n0(&a)? {
        return Err(Error::Reject("cycle block is not N0".into()));
    }
    let ainv = inverse(&a)?;
    let zeros: Vec<(usize, usize)> = (0..k)
        .flat_map(|i| (0..k).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && ainv[(i, j)].is_zero())
        .collect();
    let &(i, j) = zeros
        .choose(rng)
        .ok_or_else(|| Error::Reject("A⁻¹ has no off-diagonal zero".into()))?;
    let mut b = vec![Rational::zero(); k];
    let mut c = vec![Rational::zero(); k];
    b[j] = bounds.negative(rng);
    c[i] = bounds.negative(rng);
    let form = make_singular_f0(&a, &b, &c)?;
    if !is_irreducible(&form.assemble()) {
        return Err(Error::Reject("assembled matrix is reducible".into()));
    }
    Ok(form)
}

/// Strictly increasing parameters: all negative, or all but the last.
pub fn random_type_d<R: Rng>(rng: &mut R, n: usize, last_positive: bool, bounds: &EntryBounds) -> TypeDSpec {
    let mut a = vec![Rational::zero(); n];
    let mut cur = Rational::zero();
    let neg = if last_positive { n - 1 } else { n };
    for k in (0..neg).rev() {
        cur -= bounds.positive(rng);
        a[k] = cur.clone();
    }
    if last_positive {
        a[n - 1] = bounds.positive(rng);
    }
    TypeDSpec::new(a).expect("strictly increasing by construction")
}

fn candidate<R: Rng>(label: InstanceLabel, rng: &mut R, n: usize, bounds: &EntryBounds) -> Result<RatMatrix> {
    let m = match label {
        InstanceLabel::Z => random_z(rng, n, bounds),
        InstanceLabel::InvertibleM => random_invertible_m(rng, n, bounds),
        InstanceLabel::N0 => random_n0(rng, n, bounds)?,
        InstanceLabel::F0SingularReducible => random_singular_f0_reducible(rng, n, bounds)?.assemble(),
        InstanceLabel::F0SingularIrreducible3x3 => random_singular_f0_irreducible_3x3(rng, bounds)?.assemble(),
        InstanceLabel::F0SingularIrreducible => random_singular_f0_irreducible(rng, n, bounds)?.assemble(),
        InstanceLabel::H => random_h(rng, n, bounds),
        InstanceLabel::TypeDInvN0 => make_type_d(&random_type_d(rng, n, false, bounds)),
        InstanceLabel::TypeDInvF0 => make_type_d(&random_type_d(rng, n, true, bounds)),
    };
    Ok(m)
}

/// Whether `m` is a valid instance of `label`.
pub fn verify_instance(label: InstanceLabel, m: &RatMatrix) -> Result<bool> {
    Ok(match label {
        InstanceLabel::Z => is_z(m)?,
        InstanceLabel::InvertibleM => is_invertible_m(m)?,
        InstanceLabel::N0 => is_n0(m)?,
        InstanceLabel::F0SingularReducible => {
            let f = BlockF0Form::split(m)?;
            f.check_singular_f0().is_ok() && !is_irreducible(m)
        }
        InstanceLabel::F0SingularIrreducible3x3 | InstanceLabel::F0SingularIrreducible => {
            let f = BlockF0Form::split(m)?;
            f.check_singular_f0().is_ok() && is_irreducible(m)
        }
        InstanceLabel::H => is_h(m)?,
        InstanceLabel::TypeDInvN0 => is_inverse_n0(m)?,
        InstanceLabel::TypeDInvF0 => is_inverse_f0(m)?,
    })
}

/// `count` verified instances; instance `i` draws from stream `(seed, i)`.
pub fn rand_instances(label: InstanceLabel, n: usize, seed: u64, count: usize) -> Result<Vec<RatMatrix>> {
    rand_instances_with(label, n, seed, count, &EntryBounds::default())
}

pub fn rand_instances_with(
    label: InstanceLabel,
    n: usize,
    seed: u64,
    count: usize,
    bounds: &EntryBounds,
) -> Result<Vec<RatMatrix>> {
    if n < label.min_n() {
        return Err(Error::DimensionTooSmall { n, min: label.min_n() });
    }
    if label == InstanceLabel::F0SingularIrreducible3x3 && n != 3 {
        return Err(Error::Precondition(format!("{label} needs n = 3")));
    }
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0;
    for index in 0..count {
        let mut rng = rng_for(seed, index as u64);
        let mut found = None;
        for _ in 0..ATTEMPTS_PER_INSTANCE {
            attempts += 1;
            match candidate(label, &mut rng, n, bounds) {
                Ok(m) if verify_instance(label, &m)? => {
                    found = Some(m);
                    break;
                }
                Ok(_) | Err(Error::Reject(_)) => {}
                Err(e) => return Err(e),
            }
        }
        match found {
            Some(m) => out.push(m),
            None => {
                return Err(Error::BudgetExhausted {
                    attempts,
                    accepted: out.len(),
                    requested: count,
                })
            }
        }
    }
    Ok(out)
}
