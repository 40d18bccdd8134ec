//! Symmetry certificates for pairs `Φ = rx + A`, `Ψ = −rx + B` (r > 0).
//!
//! The pipeline checks that all four second-level digit multisets are
//! duplicate-free and that `A + rA = B − rB` and `rB + A = −rA + B`. From
//! those it aligns the digits (`b_i − r·b_n = a_i + r·a_1` for every `i`),
//! reads off the common difference `C = r·b_n + r·a_1`, and proves
//! `A = C(1−r)/r − A` through the generating function of `A`. The attractor
//! is then symmetric about `(a_1 + b_n)/2`, which is confirmed on an exact
//! cover.

use std::collections::HashMap;
use std::fmt;
use std::time::{Duration, Instant};

use num_traits::{One, Signed};
use thiserror::Error;

use crate::cover::{
    same_attractor_test, AttractorComparison, CoverBudget, CoverError, CoverExpansion,
};
use crate::ifs::{hull, HomogeneousIFS};
use crate::laurent::genfun;
use crate::multiset::{multiset_equal, scale, sumset, DigitMultiset};
use crate::rational::{format_rational, Rational};

/// Named hypotheses of the symmetry argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Precondition {
    Ratio,
    Cardinality,
    ConstantDifference,
    Distinctness,
    MultisetIdentity,
}

impl Precondition {
    pub fn name(&self) -> &'static str {
        match self {
            Precondition::Ratio => "ratio",
            Precondition::Cardinality => "cardinality",
            Precondition::ConstantDifference => "constant-difference",
            Precondition::Distinctness => "distinctness",
            Precondition::MultisetIdentity => "multiset-identity",
        }
    }
}

impl fmt::Display for Precondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmetryError {
    #[error("hypothesis {which} violated: {detail}")]
    HypothesisViolated { which: Precondition, detail: String },
    /// A step the argument guarantees did not go through. Signals a defect.
    #[error("internal contradiction: {0}")]
    InternalContradiction(String),
}

impl SymmetryError {
    fn violated(which: Precondition, detail: impl Into<String>) -> Self {
        SymmetryError::HypothesisViolated {
            which,
            detail: detail.into(),
        }
    }

    pub fn precondition(&self) -> Option<Precondition> {
        match self {
            SymmetryError::HypothesisViolated { which, .. } => Some(*which),
            SymmetryError::InternalContradiction(_) => None,
        }
    }
}

fn require_positive(r: &Rational) -> Result<(), SymmetryError> {
    if r.is_positive() {
        Ok(())
    } else {
        Err(SymmetryError::violated(
            Precondition::Ratio,
            format!("ratio {} must be positive", format_rational(r)),
        ))
    }
}

fn require_same_size(a: &DigitMultiset, b: &DigitMultiset) -> Result<(), SymmetryError> {
    if a.len() == b.len() && !a.is_empty() {
        Ok(())
    } else {
        Err(SymmetryError::violated(
            Precondition::Cardinality,
            format!("|A| = {} and |B| = {}", a.len(), b.len()),
        ))
    }
}

/// `A + rA`.
pub fn self_sum(a: &DigitMultiset, r: &Rational) -> DigitMultiset {
    sumset(a, &scale(r, a))
}

/// `B − rB`.
pub fn self_difference(b: &DigitMultiset, r: &Rational) -> DigitMultiset {
    sumset(b, &scale(&-r, b))
}

fn require_identity(
    label: &str,
    lhs: &DigitMultiset,
    rhs: &DigitMultiset,
) -> Result<(), SymmetryError> {
    if multiset_equal(lhs, rhs) {
        Ok(())
    } else {
        Err(SymmetryError::violated(
            Precondition::MultisetIdentity,
            format!("{label}: {lhs} != {rhs}"),
        ))
    }
}

fn require_distinct(label: &str, m: &DigitMultiset) -> Result<(), SymmetryError> {
    match m.entries().iter().find(|(_, k)| *k > 1) {
        None => Ok(()),
        Some((v, k)) => Err(SymmetryError::violated(
            Precondition::Distinctness,
            format!("{label} repeats {} ({k} times)", format_rational(v)),
        )),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReflectionOutcome {
    /// The common difference `C = b_i − a_i`.
    pub difference: Rational,
    /// `s = C(1−r)/r`, with `A = s − A`.
    pub reflection: Rational,
}

/// Constant-difference reflection: if `B = A + C` elementwise and
/// `A + rA = B − rB`, then `A = C(1−r)/r − A`.
///
/// The conclusion is confirmed on the generating function of `A` before it
/// is returned.
pub fn constant_difference_reflection(
    a: &DigitMultiset,
    b: &DigitMultiset,
    r: &Rational,
) -> Result<ReflectionOutcome, SymmetryError> {
    require_positive(r)?;
    require_same_size(a, b)?;
    let mut pairs = a.iter().zip(b.iter());
    let (a1, b1) = pairs.next().expect("nonempty");
    let difference = b1 - a1;
    for (i, (ai, bi)) in pairs.enumerate() {
        if bi - ai != difference {
            return Err(SymmetryError::violated(
                Precondition::ConstantDifference,
                format!(
                    "b_{} - a_{} = {} but b_1 - a_1 = {}",
                    i + 2,
                    i + 2,
                    format_rational(&(bi - ai)),
                    format_rational(&difference)
                ),
            ));
        }
    }
    require_identity("A + rA = B - rB", &self_sum(a, r), &self_difference(b, r))?;

    let reflection = &difference * (Rational::one() - r) / r;
    match genfun(a).reversal_shift_equal(&reflection) {
        Ok(true) => Ok(ReflectionOutcome {
            difference,
            reflection,
        }),
        Ok(false) => Err(SymmetryError::InternalContradiction(format!(
            "A(t) != t^{} A(1/t)",
            format_rational(&reflection)
        ))),
        Err(e) => Err(SymmetryError::InternalContradiction(e.to_string())),
    }
}

/// Digit alignment for a pair of sorted digit sets.
///
/// Indices are 1-based. For every `k`:
/// `b_k − r·b_n = a_{s(k)} + r·a_{t(k)}` and `a_k + r·a_1 = b_{u(k)} − r·b_{v(k)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlignmentWitness {
    pub n: usize,
    pub s: Vec<usize>,
    pub t: Vec<usize>,
    pub u: Vec<usize>,
    pub v: Vec<usize>,
    /// The common values `b_i − r·b_n = a_i + r·a_1`.
    pub aligned: Vec<Rational>,
}

impl AlignmentWitness {
    pub fn is_identity_alignment(&self) -> bool {
        (0..self.n).all(|k| {
            self.s[k] == k + 1 && self.u[k] == k + 1 && self.t[k] == 1 && self.v[k] == self.n
        })
    }
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&i| {
        (1..=p.len()).contains(&i) && !std::mem::replace(&mut seen[i - 1], true)
    })
}

// value -> (i, j) over all x_i + c·y_j; None if a value repeats
fn representation_index(
    x: &[Rational],
    y: &[Rational],
    c: &Rational,
) -> Option<HashMap<Rational, (usize, usize)>> {
    let mut map = HashMap::with_capacity(x.len() * y.len());
    for (i, xi) in x.iter().enumerate() {
        for (j, yj) in y.iter().enumerate() {
            if map.insert(xi + c * yj, (i + 1, j + 1)).is_some() {
                return None;
            }
        }
    }
    Some(map)
}

/// Aligns two digit sets: under the distinctness hypotheses and
/// `A + rA = B − rB`, proves `b_i − r·b_n = a_i + r·a_1` for every `i`.
pub fn align_digits(
    a: &DigitMultiset,
    b: &DigitMultiset,
    r: &Rational,
) -> Result<AlignmentWitness, SymmetryError> {
    require_positive(r)?;
    require_same_size(a, b)?;
    require_distinct("A", a)?;
    require_distinct("B", b)?;
    let plus = self_sum(a, r);
    require_distinct("A + rA", &plus)?;
    require_distinct("rB + A", &sumset(&scale(r, b), a))?;
    require_distinct("-rA + B", &sumset(&scale(&-r, a), b))?;
    require_identity("A + rA = B - rB", &plus, &self_difference(b, r))?;

    let av = a.to_vec();
    let bv = b.to_vec();
    let n = av.len();
    let neg_r = -r;
    let a_reps = representation_index(&av, &av, r)
        .ok_or_else(|| SymmetryError::InternalContradiction("A + rA repeats".into()))?;
    let b_reps = representation_index(&bv, &bv, &neg_r)
        .ok_or_else(|| SymmetryError::InternalContradiction("B - rB repeats".into()))?;

    let (a1, bn) = (&av[0], &bv[n - 1]);
    let mut s = Vec::with_capacity(n);
    let mut t = Vec::with_capacity(n);
    let mut u = Vec::with_capacity(n);
    let mut v = Vec::with_capacity(n);
    for k in 0..n {
        let lhs = &bv[k] - r * bn;
        let &(sk, tk) = a_reps.get(&lhs).ok_or_else(|| {
            SymmetryError::InternalContradiction(format!("b_{} - r b_n not in A + rA", k + 1))
        })?;
        let rhs = &av[k] + r * a1;
        let &(uk, vk) = b_reps.get(&rhs).ok_or_else(|| {
            SymmetryError::InternalContradiction(format!("a_{} + r a_1 not in B - rB", k + 1))
        })?;
        s.push(sk);
        t.push(tk);
        u.push(uk);
        v.push(vk);
    }
    if !is_permutation(&s) || !is_permutation(&u) {
        return Err(SymmetryError::InternalContradiction(
            "s or u is not a permutation".into(),
        ));
    }

    // induction on i: u(j) = s(j) = j for j < i forces u(i), s(i) >= i,
    // which squeezes b_i - r b_n between a_i + r a_1 from both sides
    let mut aligned = Vec::with_capacity(n);
    for i in 0..n {
        if u[i] < i + 1 || s[i] < i + 1 {
            return Err(SymmetryError::InternalContradiction(format!(
                "induction step {} failed: u = {}, s = {}",
                i + 1,
                u[i],
                s[i]
            )));
        }
        let lower = &av[i] + r * a1;
        let upper_side = &bv[i] - r * bn;
        let via_u = &bv[u[i] - 1] - r * &bv[v[i] - 1];
        let via_s = &av[s[i] - 1] + r * &av[t[i] - 1];
        if via_u != lower || via_s != upper_side {
            return Err(SymmetryError::InternalContradiction(format!(
                "representation of step {} does not hold",
                i + 1
            )));
        }
        // a_i + r a_1 = b_u(i) - r b_v(i) >= b_i - r b_n, and symmetrically via s
        let from_u = bv[u[i] - 1] >= bv[i] && bv[v[i] - 1] <= *bn;
        let from_s = av[s[i] - 1] >= av[i] && av[t[i] - 1] >= *a1;
        if !(from_u && from_s && lower == upper_side) {
            return Err(SymmetryError::InternalContradiction(format!(
                "b_{i1} - r b_n != a_{i1} + r a_1",
                i1 = i + 1
            )));
        }
        if s[i] != i + 1 || u[i] != i + 1 {
            return Err(SymmetryError::InternalContradiction(format!(
                "representation of step {} is not diagonal",
                i + 1
            )));
        }
        aligned.push(lower);
    }
    Ok(AlignmentWitness {
        n,
        s,
        t,
        u,
        v,
        aligned,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MirrorError {
    #[error("ratio {0} is negative; pass the system with the positive ratio")]
    NegativeRatio(String),
}

/// The only `Ψ = −rx + B` compatible with the digit alignment for `Φ = rx + A`:
/// `b_n = (a_n + r·a_1)/(1 − r)` and `b_i = a_i + r·a_1 + r·b_n`.
pub fn mirror_candidate(phi: &HomogeneousIFS) -> Result<HomogeneousIFS, MirrorError> {
    let r = phi.ratio();
    if r.is_negative() {
        return Err(MirrorError::NegativeRatio(format_rational(r)));
    }
    let a1 = phi.min_digit();
    let an = phi.max_digit();
    let bn = (an + r * a1) / (Rational::one() - r);
    let shift = r * a1 + r * &bn;
    let digits = phi.digits().translate(&shift);
    Ok(HomogeneousIFS::new(-r, digits).expect("translation keeps a valid digit set"))
}

/// The center `m` with `A = 2m − A`, if one exists.
pub fn is_symmetric_multiset(a: &DigitMultiset) -> Option<Rational> {
    let twice = a.min()? + a.max()?;
    if a.reflect(&twice) == *a {
        Some(twice / Rational::from_integer(2.into()))
    } else {
        None
    }
}

/// Whether the level-`k` cover is invariant under reflection about `center`.
pub fn attractor_symmetry_check(
    phi: &HomogeneousIFS,
    center: &Rational,
    level: u32,
    budget: CoverBudget,
) -> Result<bool, CoverError> {
    let mut expansion = CoverExpansion::new(phi, budget);
    expansion.advance_to(level)?;
    Ok(expansion.report().is_symmetric_about(center))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryCertificate {
    /// Common difference `C = r·b_n + r·a_1`.
    pub difference: Rational,
    /// `m = C(1−r)/(2r)`, with `A = 2m − A`.
    pub digit_center: Rational,
    /// `(a_1 + b_n)/2 = m/(1−r)`, the center of the attractor.
    pub attractor_center: Rational,
    /// Level at which the cover reflection was checked.
    pub symmetry_level: u32,
    pub checks: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairVerdict {
    Symmetric(SymmetryCertificate),
    PreconditionFailed { name: Precondition, detail: String },
    AttractorsDiffer { level: u32, lower_bound: Rational },
    Inconclusive { detail: String },
}

impl PairVerdict {
    pub fn kind(&self) -> &'static str {
        match self {
            PairVerdict::Symmetric(_) => "symmetric",
            PairVerdict::PreconditionFailed { .. } => "precondition_failed",
            PairVerdict::AttractorsDiffer { .. } => "attractors_differ",
            PairVerdict::Inconclusive { .. } => "inconclusive",
        }
    }

    pub fn is_symmetric(&self) -> bool {
        matches!(self, PairVerdict::Symmetric(_))
    }

    pub fn certificate(&self) -> Option<&SymmetryCertificate> {
        match self {
            PairVerdict::Symmetric(c) => Some(c),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineConfig {
    pub epsilon: Rational,
    pub k_max: u32,
    /// Cover level for the reflection check (lowered if the budget demands).
    pub symmetry_level: u32,
    pub budget: CoverBudget,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            epsilon: Rational::new(1.into(), 1_000_000.into()),
            k_max: 24,
            symmetry_level: 6,
            budget: CoverBudget::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepRecord {
    pub name: &'static str,
    pub passed: bool,
    pub elapsed: Duration,
}

#[derive(Debug, Clone)]
pub struct PipelineRun {
    pub verdict: PairVerdict,
    pub steps: Vec<StepRecord>,
    /// Whether the arguments were swapped so that the first has positive ratio.
    pub swapped: bool,
    pub attractor_test: Option<Result<AttractorComparison, String>>,
}

struct Recorder {
    steps: Vec<StepRecord>,
}

impl Recorder {
    fn run<T, E>(&mut self, name: &'static str, f: impl FnOnce() -> Result<T, E>) -> Result<T, E> {
        let start = Instant::now();
        let out = f();
        self.steps.push(StepRecord {
            name,
            passed: out.is_ok(),
            elapsed: start.elapsed(),
        });
        out
    }
}

fn failed(e: SymmetryError) -> PairVerdict {
    match e {
        SymmetryError::HypothesisViolated { which, detail } => {
            PairVerdict::PreconditionFailed { name: which, detail }
        }
        SymmetryError::InternalContradiction(detail) => PairVerdict::Inconclusive {
            detail: format!("internal contradiction: {detail}"),
        },
    }
}

/// Runs every stage of the symmetry argument on `(Φ, Ψ)`.
pub fn theorem_pipeline(
    phi: &HomogeneousIFS,
    psi: &HomogeneousIFS,
    config: &PipelineConfig,
) -> PairVerdict {
    run_pipeline(phi, psi, config).verdict
}

/// [`theorem_pipeline`] with per-step timings and the attractor comparison.
pub fn run_pipeline(
    phi: &HomogeneousIFS,
    psi: &HomogeneousIFS,
    config: &PipelineConfig,
) -> PipelineRun {
    let mut rec = Recorder { steps: Vec::new() };
    let swapped = phi.ratio().is_negative() && psi.ratio().is_positive();
    let (phi, psi) = if swapped { (psi, phi) } else { (phi, psi) };
    let mut attractor_test = None;
    let verdict = pipeline_steps(phi, psi, config, &mut rec, &mut attractor_test)
        .unwrap_or_else(|v| v);
    PipelineRun {
        verdict,
        steps: rec.steps,
        swapped,
        attractor_test,
    }
}

// Err carries an early verdict so `?` can short-circuit.
#[allow(clippy::result_large_err)]
fn pipeline_steps(
    phi: &HomogeneousIFS,
    psi: &HomogeneousIFS,
    config: &PipelineConfig,
    rec: &mut Recorder,
    attractor_test: &mut Option<Result<AttractorComparison, String>>,
) -> Result<PairVerdict, PairVerdict> {
    let r = phi.ratio().clone();
    let (a, b) = (phi.digits(), psi.digits());
    let mut checks = Vec::new();

    rec.run("ratio", || {
        if r.is_positive() && psi.ratio() == &-&r {
            Ok(())
        } else {
            Err(SymmetryError::violated(
                Precondition::Ratio,
                format!(
                    "ratios {} and {} are not opposite",
                    format_rational(phi.ratio()),
                    format_rational(psi.ratio())
                ),
            ))
        }
    })
    .map_err(failed)?;
    checks.push(format!("ratios are r = {} and -r", format_rational(&r)));

    rec.run("map-count", || require_same_size(a, b)).map_err(failed)?;
    checks.push(format!("both systems have n = {} maps", a.len()));

    let plus = self_sum(a, &r);
    let minus = self_difference(b, &r);
    let cross_phi_psi = sumset(&scale(&r, b), a);
    let cross_psi_phi = sumset(&scale(&-&r, a), b);
    rec.run("distinctness", || {
        require_distinct("A + rA", &plus)?;
        require_distinct("B - rB", &minus)?;
        require_distinct("rB + A", &cross_phi_psi)?;
        require_distinct("-rA + B", &cross_psi_phi)
    })
    .map_err(failed)?;
    checks.push("A + rA, B - rB, rB + A, -rA + B have n^2 distinct elements".into());

    rec.run("multiset-identities", || {
        require_identity("A + rA = B - rB", &plus, &minus)?;
        require_identity("rB + A = -rA + B", &cross_phi_psi, &cross_psi_phi)
    })
    .map_err(failed)?;
    checks.push("A + rA = B - rB and rB + A = -rA + B".into());

    let witness = rec.run("alignment", || align_digits(a, b, &r)).map_err(failed)?;
    checks.push(format!(
        "b_i - r b_n = a_i + r a_1 for all {} indices",
        witness.n
    ));

    let av = a.to_vec();
    let bv = b.to_vec();
    let (a1, bn) = (&av[0], &bv[bv.len() - 1]);
    let difference = &r * bn + &r * a1;
    let reflection = rec
        .run("reflection", || {
            let out = constant_difference_reflection(a, b, &r)?;
            if out.difference != difference {
                return Err(SymmetryError::InternalContradiction(format!(
                    "b_1 - a_1 = {} but r b_n + r a_1 = {}",
                    format_rational(&out.difference),
                    format_rational(&difference)
                )));
            }
            Ok(out)
        })
        .map_err(failed)?;
    checks.push(format!(
        "A = {} - A with C = {}",
        format_rational(&reflection.reflection),
        format_rational(&difference)
    ));

    let two = Rational::from_integer(2.into());
    let digit_center = &reflection.reflection / &two;
    let attractor_center = (a1 + bn) / &two;
    if &digit_center / (Rational::one() - &r) != attractor_center {
        return Err(PairVerdict::Inconclusive {
            detail: "internal contradiction: attractor center mismatch".into(),
        });
    }

    let level = highest_level_within(phi.len(), config.symmetry_level, config.budget);
    let symmetric = rec
        .run("attractor-symmetry", || {
            match attractor_symmetry_check(phi, &attractor_center, level, config.budget) {
                Ok(true) => Ok(()),
                Ok(false) => Err(format!(
                    "level-{level} cover is not symmetric about {}",
                    format_rational(&attractor_center)
                )),
                Err(e) => Err(e.to_string()),
            }
        });
    if let Err(detail) = symmetric {
        return Err(PairVerdict::Inconclusive {
            detail: format!("internal contradiction: {detail}"),
        });
    }
    let h = hull(phi);
    checks.push(format!(
        "level-{level} cover of {h} is symmetric about {}",
        format_rational(&attractor_center)
    ));

    let comparison = rec.run("same-attractor", || {
        same_attractor_test(phi, psi, &config.epsilon, config.k_max, config.budget)
    });
    *attractor_test = Some(comparison.clone().map_err(|e| e.to_string()));
    match comparison {
        Ok(AttractorComparison::ConfirmedDistinct { level, lower }) => {
            return Err(PairVerdict::AttractorsDiffer {
                level,
                lower_bound: lower,
            })
        }
        Ok(AttractorComparison::IndistinguishableAt {
            epsilon,
            level,
            upper,
        }) => checks.push(format!(
            "attractors within {} <= {} at level {level}",
            format_rational(&upper),
            format_rational(&epsilon)
        )),
        Err(e) => checks.push(format!("attractor comparison: {e}")),
    }

    Ok(PairVerdict::Symmetric(SymmetryCertificate {
        difference,
        digit_center,
        attractor_center,
        symmetry_level: level,
        checks,
    }))
}

fn highest_level_within(maps: usize, wanted: u32, budget: CoverBudget) -> u32 {
    let mut level = 0;
    let mut count: u64 = 1;
    while level < wanted {
        match count.checked_mul(maps as u64) {
            Some(c) if c <= budget.0 => count = c,
            _ => break,
        }
        level += 1;
    }
    level
}
