//! Certified interval covers of attractors.
//!
//! The level-`k` cover of `Φ = rx + A` is the family `{φ_w(H) : |w| = k}`
//! where `H` is the hull. All `n^k` intervals share the width `|r|^k·|H|`,
//! contain the attractor between them, and have both endpoints on the
//! attractor. Covers are stored on a common integer lattice `(1/den)·ℤ`
//! so expansion, sorting and comparisons never normalize fractions.

use std::env;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::ifs::{hull, HomogeneousIFS, Interval};
use crate::rational::{common_denominator, format_rational, lattice_numerator, pow, Rational};

pub const DEFAULT_INTERVAL_BUDGET: u64 = 1 << 24;

/// Environment variable read by the CLI to override the interval budget.
pub const BUDGET_ENV_VAR: &str = "IFS_COVER_BUDGET";

/// Ceiling on the number of intervals a single cover may hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverBudget(pub u64);

impl Default for CoverBudget {
    fn default() -> Self {
        CoverBudget(DEFAULT_INTERVAL_BUDGET)
    }
}

impl CoverBudget {
    /// Reads [`BUDGET_ENV_VAR`], falling back to the default when unset.
    pub fn from_env() -> Result<Self, CoverError> {
        match env::var(BUDGET_ENV_VAR) {
            Ok(text) => text
                .trim()
                .parse::<u64>()
                .ok()
                .filter(|v| *v > 0)
                .map(CoverBudget)
                .ok_or(CoverError::InvalidBudget(text)),
            Err(_) => Ok(CoverBudget::default()),
        }
    }

    fn allows(&self, n: usize, level: u32) -> bool {
        let mut count: u64 = 1;
        for _ in 0..level {
            count = match count.checked_mul(n as u64) {
                Some(c) => c,
                None => return false,
            };
        }
        count <= self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("level {level} needs {maps}^{level} intervals, over the budget of {budget}")]
    BudgetExceeded { level: u32, maps: usize, budget: u64 },
    #[error("invalid interval budget {0:?}")]
    InvalidBudget(String),
}

#[derive(Debug, Clone)]
pub struct CoverReport {
    level: u32,
    den: BigInt,
    // sorted left endpoints, as numerators over `den`
    los: Vec<BigInt>,
    width: BigInt,
    error_bound: Rational,
}

impl CoverReport {
    pub fn level(&self) -> u32 {
        self.level
    }

    /// Number of intervals (`n^k`, unmerged).
    pub fn len(&self) -> usize {
        self.los.len()
    }

    pub fn is_empty(&self) -> bool {
        self.los.is_empty()
    }

    /// `|r|^k · width(H)`; also the width of every interval.
    pub fn error_bound(&self) -> &Rational {
        &self.error_bound
    }

    pub fn interval(&self, index: usize) -> Interval {
        let lo = &self.los[index];
        Interval::new(
            Rational::new(lo.clone(), self.den.clone()),
            Rational::new(lo + &self.width, self.den.clone()),
        )
    }

    pub fn iter(&self) -> impl Iterator<Item = Interval> + '_ {
        (0..self.len()).map(move |i| self.interval(i))
    }

    /// All intervals, sorted by left endpoint.
    pub fn intervals(&self) -> Vec<Interval> {
        self.iter().collect()
    }

    /// True iff both covers hold the same multiset of intervals (levels may differ).
    pub fn same_intervals(&self, other: &CoverReport) -> bool {
        self.len() == other.len()
            && &self.width * &other.den == &other.width * &self.den
            && self
                .los
                .iter()
                .zip(&other.los)
                .all(|(a, b)| a * &other.den == b * &self.den)
    }

    /// Connected components of the union, on the lattice scaled by `factor`.
    fn components(&self, factor: &BigInt) -> Vec<(BigInt, BigInt)> {
        let width = &self.width * factor;
        let mut out: Vec<(BigInt, BigInt)> = Vec::new();
        for lo in &self.los {
            let lo = lo * factor;
            let hi = &lo + &width;
            match out.last_mut() {
                Some(last) if lo <= last.1 => {
                    if hi > last.1 {
                        last.1 = hi;
                    }
                }
                _ => out.push((lo, hi)),
            }
        }
        out
    }

    /// Sorted, deduplicated endpoints on the lattice scaled by `factor`.
    fn endpoints(&self, factor: &BigInt) -> Vec<BigInt> {
        let mut pts: Vec<BigInt> = Vec::with_capacity(2 * self.len());
        for lo in &self.los {
            let lo = lo * factor;
            pts.push(&lo + &self.width * factor);
            pts.push(lo);
        }
        pts.sort();
        pts.dedup();
        pts
    }

    /// Union of the cover, merged into disjoint closed intervals.
    pub fn merged(&self) -> Vec<Interval> {
        self.components(&BigInt::from(1))
            .into_iter()
            .map(|(lo, hi)| {
                Interval::new(
                    Rational::new(lo, self.den.clone()),
                    Rational::new(hi, self.den.clone()),
                )
            })
            .collect()
    }
}

impl CoverReport {
    /// True iff the interval multiset is invariant under `x ↦ 2·center − x`.
    pub fn is_symmetric_about(&self, center: &Rational) -> bool {
        let twice = center * Rational::from_integer(BigInt::from(2) * &self.den);
        if !twice.is_integer() {
            return false;
        }
        // reflection maps [lo, lo + w] to [2c − lo − w, 2c − lo]
        let target = twice.to_integer() - &self.width;
        let n = self.los.len();
        (0..n).all(|i| &self.los[i] + &self.los[n - 1 - i] == target)
    }
}

/// Incremental level-by-level expansion; each step costs `n^(k+1)` additions.
pub struct CoverExpansion {
    maps: usize,
    numer: BigInt,
    denom: BigInt,
    base_den: BigInt,
    digit_nums: Vec<BigInt>,
    hull_lo: BigInt,
    hull_hi: BigInt,
    hull_width: Rational,
    level: u32,
    // unsorted offsets over denom^level·base_den, in blocks by outermost digit
    offsets: Vec<BigInt>,
    denom_pow: BigInt,
    numer_pow: BigInt,
    budget: CoverBudget,
}

impl CoverExpansion {
    pub fn new(phi: &HomogeneousIFS, budget: CoverBudget) -> Self {
        let h = hull(phi);
        let digits = phi.digit_vec();
        let base_den = common_denominator(digits.iter().chain([&h.lo, &h.hi]));
        CoverExpansion {
            maps: digits.len(),
            numer: phi.ratio().numer().clone(),
            denom: phi.ratio().denom().clone(),
            digit_nums: digits.iter().map(|d| lattice_numerator(d, &base_den)).collect(),
            hull_lo: lattice_numerator(&h.lo, &base_den),
            hull_hi: lattice_numerator(&h.hi, &base_den),
            hull_width: h.width(),
            base_den,
            level: 0,
            offsets: vec![BigInt::zero()],
            denom_pow: BigInt::from(1),
            numer_pow: BigInt::from(1),
            budget,
        }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Advances one level; fails without changing state when over budget.
    pub fn step(&mut self) -> Result<(), CoverError> {
        let next = self.level + 1;
        if !self.budget.allows(self.maps, next) {
            return Err(CoverError::BudgetExceeded {
                level: next,
                maps: self.maps,
                budget: self.budget.0,
            });
        }
        let denom_pow = &self.denom_pow * &self.denom;
        let mut offsets = Vec::with_capacity(self.offsets.len() * self.maps);
        for digit in &self.digit_nums {
            let shift = digit * &denom_pow;
            offsets.extend(self.offsets.iter().map(|t| &shift + &self.numer * t));
        }
        self.offsets = offsets;
        self.denom_pow = denom_pow;
        self.numer_pow = &self.numer_pow * &self.numer;
        self.level = next;
        Ok(())
    }

    pub fn advance_to(&mut self, level: u32) -> Result<(), CoverError> {
        if level > self.level && !self.budget.allows(self.maps, level) {
            return Err(CoverError::BudgetExceeded {
                level,
                maps: self.maps,
                budget: self.budget.0,
            });
        }
        while self.level < level {
            self.step()?;
        }
        Ok(())
    }

    fn lattice_den(&self) -> BigInt {
        &self.denom_pow * &self.base_den
    }

    // left-endpoint shift and width of r^k·H on the current lattice
    fn scaled_hull(&self) -> (BigInt, BigInt) {
        let a = &self.numer_pow * &self.hull_lo;
        let b = &self.numer_pow * &self.hull_hi;
        if a <= b {
            let w = &b - &a;
            (a, w)
        } else {
            let w = &a - &b;
            (b, w)
        }
    }

    /// Unsorted left endpoints tagged with the index of the outermost map.
    fn grouped_los(&self) -> (BigInt, Vec<(BigInt, usize)>, BigInt) {
        let (shift, width) = self.scaled_hull();
        let block = (self.offsets.len() / self.maps).max(1);
        let tagged = self
            .offsets
            .iter()
            .enumerate()
            .map(|(i, t)| (t + &shift, if self.level == 0 { 0 } else { i / block }))
            .collect();
        (self.lattice_den(), tagged, width)
    }

    pub fn report(&self) -> CoverReport {
        let (shift, width) = self.scaled_hull();
        let mut los: Vec<BigInt> = self.offsets.iter().map(|t| t + &shift).collect();
        los.sort();
        let error_bound = pow(&Rational::new(self.numer.abs(), self.denom.clone()), self.level)
            * &self.hull_width;
        CoverReport {
            level: self.level,
            den: self.lattice_den(),
            los,
            width,
            error_bound,
        }
    }
}

pub fn cover(phi: &HomogeneousIFS, level: u32) -> Result<CoverReport, CoverError> {
    cover_with_budget(phi, level, CoverBudget::default())
}

pub fn cover_with_budget(
    phi: &HomogeneousIFS,
    level: u32,
    budget: CoverBudget,
) -> Result<CoverReport, CoverError> {
    let mut expansion = CoverExpansion::new(phi, budget);
    expansion.advance_to(level)?;
    Ok(expansion.report())
}

fn common_scale(a: &CoverReport, b: &CoverReport) -> (BigInt, BigInt, BigInt) {
    let den = a.den.lcm(&b.den);
    let fa = &den / &a.den;
    let fb = &den / &b.den;
    (den, fa, fb)
}

// distance from `x` to a sorted list of disjoint closed components
fn point_to_components(x: &BigInt, comps: &[(BigInt, BigInt)]) -> BigInt {
    let idx = comps.partition_point(|(lo, _)| lo <= x);
    let mut best: Option<BigInt> = None;
    if idx > 0 {
        let (_, hi) = &comps[idx - 1];
        let d = if x <= hi { BigInt::zero() } else { x - hi };
        best = Some(d);
    }
    if idx < comps.len() {
        let d = &comps[idx].0 - x;
        best = Some(match best {
            Some(b) if b <= d => b,
            _ => d,
        });
    }
    best.expect("nonempty components")
}

fn in_components(x: &BigInt, comps: &[(BigInt, BigInt)]) -> bool {
    let idx = comps.partition_point(|(lo, _)| lo <= x);
    idx > 0 && x <= &comps[idx - 1].1
}

// sup over X of dist(·, Y), times two. Inputs must be on a lattice where
// every gap midpoint of Y is a lattice point.
fn directed_twice(xs: &[(BigInt, BigInt)], ys: &[(BigInt, BigInt)]) -> BigInt {
    let mut best = BigInt::zero();
    for (lo, hi) in xs {
        for p in [lo, hi] {
            let d = point_to_components(p, ys) * 2;
            if d > best {
                best = d;
            }
        }
    }
    // the distance to Y peaks at the midpoints of Y's gaps
    for w in ys.windows(2) {
        let gap = &w[1].0 - &w[0].1;
        if gap > best && in_components(&((&w[0].1 + &w[1].0) / 2), xs) {
            best = gap;
        }
    }
    best
}

/// Exact Hausdorff distance between the unions of two covers.
pub fn union_hausdorff(a: &CoverReport, b: &CoverReport) -> Rational {
    let (den, fa, fb) = common_scale(a, b);
    // doubled lattice so every gap midpoint is a lattice point
    let two = BigInt::from(2);
    let xa = a.components(&(&fa * &two));
    let xb = b.components(&(&fb * &two));
    let d = directed_twice(&xa, &xb).max(directed_twice(&xb, &xa));
    Rational::new(d, den * 4)
}

// sup over xs of the distance to the nearest point of ys (both sorted)
fn directed_points(xs: &[BigInt], ys: &[BigInt]) -> BigInt {
    let mut best = BigInt::zero();
    for x in xs {
        let idx = ys.partition_point(|y| y < x);
        let mut d: Option<BigInt> = None;
        if idx < ys.len() {
            d = Some(&ys[idx] - x);
        }
        if idx > 0 {
            let e = x - &ys[idx - 1];
            d = Some(match d {
                Some(v) if v <= e => v,
                _ => e,
            });
        }
        let d = d.expect("nonempty point set");
        if d > best {
            best = d;
        }
    }
    best
}

/// Exact Hausdorff distance between the endpoint sets of two covers.
pub fn endpoint_hausdorff(a: &CoverReport, b: &CoverReport) -> Rational {
    let (den, fa, fb) = common_scale(a, b);
    let pa = a.endpoints(&fa);
    let pb = b.endpoints(&fb);
    let d = directed_points(&pa, &pb).max(directed_points(&pb, &pa));
    Rational::new(d, den)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HausdorffBounds {
    pub level: u32,
    /// Exact distance between the two level-`k` cover unions.
    pub cover_distance: Rational,
    pub lower: Rational,
    pub upper: Rational,
}

fn bounds_from(a: &CoverReport, b: &CoverReport) -> HausdorffBounds {
    let delta = union_hausdorff(a, b);
    let err = a.error_bound() + b.error_bound();
    let lower = &delta - &err;
    HausdorffBounds {
        level: a.level(),
        upper: &delta + &err,
        lower: if lower.is_positive() { lower } else { Rational::zero() },
        cover_distance: delta,
    }
}

/// Rigorous bounds `lower ≤ d_H(K_Φ, K_Ψ) ≤ upper` from the level-`k` covers.
pub fn hausdorff_bounds(
    phi: &HomogeneousIFS,
    psi: &HomogeneousIFS,
    level: u32,
) -> Result<HausdorffBounds, CoverError> {
    hausdorff_bounds_with_budget(phi, psi, level, CoverBudget::default())
}

pub fn hausdorff_bounds_with_budget(
    phi: &HomogeneousIFS,
    psi: &HomogeneousIFS,
    level: u32,
    budget: CoverBudget,
) -> Result<HausdorffBounds, CoverError> {
    let a = cover_with_budget(phi, level, budget)?;
    let b = cover_with_budget(psi, level, budget)?;
    Ok(bounds_from(&a, &b))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AttractorComparison {
    /// `d_H(K_Φ, K_Ψ) ≥ lower > 0`, certified at `level`.
    ConfirmedDistinct { level: u32, lower: Rational },
    /// `d_H(K_Φ, K_Ψ) ≤ upper ≤ epsilon`, certified at `level`.
    IndistinguishableAt {
        epsilon: Rational,
        level: u32,
        upper: Rational,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AttractorTestError {
    #[error("epsilon must be positive, got {0}")]
    NonPositiveEpsilon(String),
    #[error("inconclusive after level {last_level} (k_max {k_max}): {reason}")]
    Inconclusive {
        k_max: u32,
        last_level: u32,
        reason: String,
    },
}

/// Semi-decision for `K_Φ = K_Ψ`: refines both covers until the bounds
/// either separate the attractors or pin their distance below `epsilon`.
pub fn same_attractor_test(
    phi: &HomogeneousIFS,
    psi: &HomogeneousIFS,
    epsilon: &Rational,
    k_max: u32,
    budget: CoverBudget,
) -> Result<AttractorComparison, AttractorTestError> {
    if !epsilon.is_positive() {
        return Err(AttractorTestError::NonPositiveEpsilon(format_rational(epsilon)));
    }
    let mut ea = CoverExpansion::new(phi, budget);
    let mut eb = CoverExpansion::new(psi, budget);
    let mut level = 0;
    loop {
        let bounds = bounds_from(&ea.report(), &eb.report());
        if bounds.lower.is_positive() {
            return Ok(AttractorComparison::ConfirmedDistinct {
                level,
                lower: bounds.lower,
            });
        }
        if &bounds.upper <= epsilon {
            return Ok(AttractorComparison::IndistinguishableAt {
                epsilon: epsilon.clone(),
                level,
                upper: bounds.upper,
            });
        }
        if level >= k_max {
            return Err(AttractorTestError::Inconclusive {
                k_max,
                last_level: level,
                reason: "level limit reached".into(),
            });
        }
        if let Err(e) = ea.step().and_then(|_| eb.step()) {
            return Err(AttractorTestError::Inconclusive {
                k_max,
                last_level: level,
                reason: e.to_string(),
            });
        }
        level += 1;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SscOutcome {
    /// The level-`k` sub-covers `φ_i(cover_{k-1})` are pairwise separated by positive gaps.
    Holds { level: u32 },
    /// Two first-level pieces of the attractor provably meet.
    Fails { level: u32, witness: String },
    Unknown,
}

/// Certified strong separation check up to level `k_max`.
///
/// Failure is reported only with a proof that two pieces `φ_i(K)`, `φ_j(K)`
/// intersect: either `Φ(H) = H` (so `K = H` and the pieces are overlapping
/// intervals), or two pieces share a cover endpoint, which lies on `K`.
pub fn check_ssc_certified(phi: &HomogeneousIFS, k_max: u32, budget: CoverBudget) -> SscOutcome {
    let mut expansion = CoverExpansion::new(phi, budget);
    for level in 1..=k_max {
        if expansion.step().is_err() {
            return SscOutcome::Unknown;
        }
        let (den, mut tagged, width) = expansion.grouped_los();
        tagged.sort();
        if level == 1 {
            let h = hull(phi);
            let covers_hull = tagged.windows(2).all(|w| w[1].0 <= &w[0].0 + &width);
            if covers_hull {
                return SscOutcome::Fails {
                    level,
                    witness: format!("images of the hull cover {h}, so the attractor is {h}"),
                };
            }
        }
        // components of the union, each must carry a single group
        let mut separated = true;
        let mut comp_hi: Option<(BigInt, usize)> = None;
        for (lo, group) in &tagged {
            let hi = lo + &width;
            match &mut comp_hi {
                Some((chi, g)) if lo <= chi => {
                    if *g != *group {
                        separated = false;
                    }
                    if hi > *chi {
                        *chi = hi;
                    }
                }
                _ => comp_hi = Some((hi, *group)),
            }
        }
        if separated {
            return SscOutcome::Holds { level };
        }
        let mut points: Vec<(BigInt, usize)> = tagged
            .iter()
            .flat_map(|(lo, g)| [(lo.clone(), *g), (lo + &width, *g)])
            .collect();
        points.sort();
        points.dedup();
        if let Some(w) = points.windows(2).find(|w| w[0].0 == w[1].0) {
            let p = Rational::new(w[0].0.clone(), den.clone());
            return SscOutcome::Fails {
                level,
                witness: format!(
                    "{} lies in the pieces of maps {} and {}",
                    format_rational(&p),
                    w[0].1 + 1,
                    w[1].1 + 1
                ),
            };
        }
    }
    SscOutcome::Unknown
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ifs::compose;
    use crate::rational::{int, rat};

    fn ifs(r: Rational, digits: &[Rational]) -> HomogeneousIFS {
        HomogeneousIFS::from_digits(r, digits.iter().cloned()).unwrap()
    }

    fn cantor() -> HomogeneousIFS {
        ifs(rat(1, 3), &[int(0), int(2)])
    }

    fn iv(lo: Rational, hi: Rational) -> Interval {
        Interval::new(lo, hi)
    }

    // direct rational iteration of the hull, independent of the lattice code
    fn brute_cover(phi: &HomogeneousIFS, level: u32) -> Vec<Interval> {
        let mut ivs = vec![hull(phi)];
        for _ in 0..level {
            ivs = phi
                .digits()
                .iter()
                .flat_map(|b| ivs.iter().map(move |i| i.map(phi.ratio(), b)))
                .collect();
        }
        ivs.sort();
        ivs
    }

    #[test]
    fn cover_examples() {
        let c1 = cover(&cantor(), 1).unwrap();
        assert_eq!(c1.intervals(), vec![iv(int(0), int(1)), iv(int(2), int(3))]);
        assert_eq!(c1.error_bound(), &int(1));
        let c2 = cover(&cantor(), 2).unwrap();
        assert_eq!(
            c2.intervals(),
            vec![
                iv(int(0), rat(1, 3)),
                iv(rat(2, 3), int(1)),
                iv(int(2), rat(7, 3)),
                iv(rat(8, 3), int(3)),
            ]
        );
        assert_eq!(c2.error_bound(), &rat(1, 3));
        let c0 = cover(&cantor(), 0).unwrap();
        assert_eq!(c0.intervals(), vec![hull(&cantor())]);
        assert_eq!(c0.error_bound(), &int(3));
    }

    #[test]
    fn lattice_cover_matches_rational_iteration() {
        let systems = [
            cantor(),
            ifs(rat(-1, 3), &[int(1), int(3)]),
            ifs(rat(-2, 7), &[rat(-3, 2), rat(1, 5), int(4)]),
            ifs(rat(3, 4), &[int(0), int(1)]),
        ];
        for phi in &systems {
            for k in 0..5 {
                assert_eq!(cover(phi, k).unwrap().intervals(), brute_cover(phi, k), "{phi} k={k}");
            }
        }
    }

    #[test]
    fn budget_guard() {
        let budget = CoverBudget(8);
        assert!(cover_with_budget(&cantor(), 3, budget).is_ok());
        assert_eq!(
            cover_with_budget(&cantor(), 4, budget).unwrap_err(),
            CoverError::BudgetExceeded { level: 4, maps: 2, budget: 8 }
        );
    }

    #[test]
    fn refinement_is_nested() {
        let phi = ifs(rat(-2, 5), &[int(0), rat(1, 2), int(3)]);
        for k in 0..4 {
            let coarse = cover(&phi, k).unwrap().intervals();
            let fine = cover(&phi, k + 1).unwrap().intervals();
            assert!(fine.iter().all(|f| coarse.iter().any(|c| c.contains(f))));
        }
    }

    #[test]
    fn composition_cover_identity() {
        let phi = ifs(rat(-2, 5), &[int(0), rat(1, 2), int(3)]);
        let phi2 = compose(&phi, &phi).unwrap();
        for k in 0..4 {
            assert!(cover(&phi2, k).unwrap().same_intervals(&cover(&phi, 2 * k).unwrap()));
        }
        assert!(!cover(&phi2, 1).unwrap().same_intervals(&cover(&phi, 1).unwrap()));
    }

    #[test]
    fn union_hausdorff_small_cases() {
        let a = cover(&cantor(), 0).unwrap(); // [0,3]
        let b = cover(&cantor(), 1).unwrap(); // [0,1] ∪ [2,3]
        // midpoint 3/2 of the gap is at distance 1/2
        assert_eq!(union_hausdorff(&a, &b), rat(1, 2));
        assert_eq!(union_hausdorff(&b, &b), int(0));
        // endpoints {0,3} vs {0,1,2,3}: 1 is at distance 1
        assert_eq!(endpoint_hausdorff(&a, &b), int(1));
    }

    #[test]
    fn union_hausdorff_odd_gap_midpoint() {
        // [0,1] ∪ [2,3] against [0,3] scaled: gap midpoint 3/2 is off the integer lattice
        let wide = cover(&ifs(rat(1, 3), &[int(0), int(2)]), 1).unwrap();
        let full = cover(&ifs(rat(1, 2), &[int(0), rat(3, 2)]), 0).unwrap(); // [0,3]
        assert_eq!(union_hausdorff(&full, &wide), rat(1, 2));
    }

    #[test]
    fn cantor_pair_has_identical_covers() {
        let psi = ifs(rat(-1, 3), &[int(1), int(3)]);
        for k in 0..6 {
            let b = hausdorff_bounds(&cantor(), &psi, k).unwrap();
            assert_eq!(b.cover_distance, int(0));
            assert_eq!(b.lower, int(0));
        }
        let same = hausdorff_bounds(&cantor(), &cantor(), 3).unwrap();
        assert_eq!(same.upper, rat(2, 9));
    }

    #[test]
    fn asymmetric_mirror_pair_separates() {
        let phi = ifs(rat(1, 5), &[int(0), int(1), int(3)]);
        let psi = ifs(rat(-1, 5), &[rat(3, 4), rat(7, 4), rat(15, 4)]);
        // values computed by a rational brute-force oracle
        let b4 = hausdorff_bounds(&phi, &psi, 4).unwrap();
        assert_eq!(b4.cover_distance, rat(3, 25));
        assert_eq!(b4.lower, rat(27, 250));
        let b2 = hausdorff_bounds(&phi, &psi, 2).unwrap();
        assert_eq!(b2.cover_distance, rat(1, 8));
        assert_eq!(b2.lower, int(0));
        let b8 = hausdorff_bounds(&phi, &psi, 8).unwrap();
        assert!(b8.lower.is_positive());
    }

    #[test]
    fn same_attractor_examples() {
        let psi = ifs(rat(-1, 3), &[int(1), int(3)]);
        let eps = rat(1, 1_000_000);
        assert_eq!(
            same_attractor_test(&cantor(), &psi, &eps, 30, CoverBudget::default()).unwrap(),
            AttractorComparison::IndistinguishableAt {
                epsilon: eps.clone(),
                level: 15,
                upper: rat(6, 14_348_907),
            }
        );
        let phi = ifs(rat(1, 5), &[int(0), int(1), int(3)]);
        let mirror = ifs(rat(-1, 5), &[rat(3, 4), rat(7, 4), rat(15, 4)]);
        assert!(matches!(
            same_attractor_test(&phi, &mirror, &eps, 20, CoverBudget::default()),
            Ok(AttractorComparison::ConfirmedDistinct { level: 3, lower }) if lower == rat(3, 50)
        ));
        assert!(matches!(
            same_attractor_test(&cantor(), &cantor(), &rat(1, 100), 20, CoverBudget::default()),
            Ok(AttractorComparison::IndistinguishableAt { level: 6, .. })
        ));
    }

    #[test]
    fn same_attractor_inconclusive_and_invalid() {
        let psi = ifs(rat(-1, 3), &[int(1), int(3)]);
        let eps = rat(1, 1_000_000);
        assert!(matches!(
            same_attractor_test(&cantor(), &psi, &eps, 5, CoverBudget::default()),
            Err(AttractorTestError::Inconclusive { last_level: 5, .. })
        ));
        assert!(matches!(
            same_attractor_test(&cantor(), &psi, &eps, 30, CoverBudget(64)),
            Err(AttractorTestError::Inconclusive { last_level: 6, .. })
        ));
        assert!(matches!(
            same_attractor_test(&cantor(), &psi, &int(0), 5, CoverBudget::default()),
            Err(AttractorTestError::NonPositiveEpsilon(_))
        ));
    }

    #[test]
    fn ssc_examples() {
        let budget = CoverBudget::default();
        assert_eq!(check_ssc_certified(&cantor(), 6, budget), SscOutcome::Holds { level: 1 });
        let touching = ifs(rat(1, 2), &[int(0), int(1)]);
        assert!(matches!(check_ssc_certified(&touching, 6, budget), SscOutcome::Fails { .. }));
        let overlapping = ifs(rat(2, 3), &[int(0), int(1)]);
        assert!(matches!(check_ssc_certified(&overlapping, 6, budget), SscOutcome::Fails { level: 1, .. }));
    }

    #[test]
    fn ssc_gaps_at_level_one() {
        let sparse = ifs(rat(1, 5), &[int(0), int(2), int(4)]);
        assert_eq!(
            check_ssc_certified(&sparse, 4, CoverBudget::default()),
            SscOutcome::Holds { level: 1 }
        );
    }
}
