//! Seeded randomized campaigns over the library's invariants.
//!
//! Every case draws from its own ChaCha stream derived from the master seed,
//! so a campaign is a pure function of `(seed, cases, n_max, r_den_max)`.
//! The checks compare library results against brute-force oracles that use
//! plain rational arithmetic only.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use num_traits::{One, Signed, Zero};

use crate::cover::{cover_with_budget, endpoint_hausdorff, CoverBudget};
use crate::ifs::{check_cosc, compose, HomogeneousIFS};
use crate::laurent::genfun;
use crate::multiset::{all_distinct, scale, sumset, DigitMultiset};
use crate::rational::Rational;
use crate::symmetry::{
    align_digits, attractor_symmetry_check, constant_difference_reflection,
    is_symmetric_multiset, mirror_candidate, theorem_pipeline, PairVerdict, PipelineConfig,
    Precondition,
};
use crate::text::format_ifs;

/// Random instance generators.
pub mod gen {
    use super::*;

    pub fn case_rng(seed: u64, stream: u64, case: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        rng.set_word_pos(u128::from(case) << 20);
        rng
    }

    /// `n/d` with `|n| ≤ num_max`, `1 ≤ d ≤ den_max`.
    pub fn small_rational(rng: &mut impl Rng, num_max: i64, den_max: i64) -> Rational {
        let n = rng.gen_range(-num_max..=num_max);
        let d = rng.gen_range(1..=den_max);
        Rational::new(n.into(), d.into())
    }

    /// `p/q ∈ (0, 1)` with `2 ≤ q ≤ den_max`.
    pub fn ratio(rng: &mut impl Rng, den_max: i64) -> Rational {
        let q = rng.gen_range(2..=den_max.max(2));
        let p = rng.gen_range(1..q);
        Rational::new(p.into(), q.into())
    }

    /// `n` distinct rationals with denominators up to 3.
    pub fn distinct_digits(rng: &mut impl Rng, n: usize) -> Vec<Rational> {
        let mut out: Vec<Rational> = Vec::with_capacity(n);
        while out.len() < n {
            let v = small_rational(rng, 4 * n as i64 + 6, 3);
            if !out.contains(&v) {
                out.push(v);
            }
        }
        out.sort();
        out
    }

    /// `n` distinct digits symmetric about a random center.
    pub fn symmetric_digits(rng: &mut impl Rng, n: usize) -> Vec<Rational> {
        let center = small_rational(rng, 2 * n as i64 + 4, 2);
        let mut offsets: Vec<Rational> = Vec::new();
        while offsets.len() < n / 2 {
            let d = small_rational(rng, 2 * n as i64 + 4, 3).abs();
            if !d.is_zero() && !offsets.contains(&d) {
                offsets.push(d);
            }
        }
        let mut out: Vec<Rational> = offsets
            .iter()
            .flat_map(|d| [&center - d, &center + d])
            .collect();
        if n % 2 == 1 {
            out.push(center);
        }
        out.sort();
        out
    }

    /// `n` distinct digits with no center of symmetry.
    pub fn asymmetric_digits(rng: &mut impl Rng, n: usize) -> Vec<Rational> {
        loop {
            let d = distinct_digits(rng, n);
            if brute_symmetry_center(&d).is_none() {
                return d;
            }
        }
    }

    /// Largest ratio for which equal-width hull images of `digits` do not overlap.
    pub fn cosc_ratio_bound(digits: &[Rational]) -> Rational {
        let span = &digits[digits.len() - 1] - &digits[0];
        let gap = digits
            .windows(2)
            .map(|w| &w[1] - &w[0])
            .min()
            .expect("n >= 2");
        &gap / (&span + &gap)
    }

    /// A ratio `p/q` (`q ≤ den_max`) under which `rx + digits` has the COSC.
    pub fn cosc_ratio(rng: &mut impl Rng, digits: &[Rational], den_max: i64) -> Option<Rational> {
        let bound = cosc_ratio_bound(digits);
        let mut options = Vec::new();
        for q in 2..=den_max.max(2) {
            for p in 1..q {
                let r = Rational::new(p.into(), q.into());
                if r.numer() == &p.into() && r <= bound {
                    options.push(r);
                }
            }
        }
        options.choose(rng).cloned()
    }

    /// A COSC system whose digits are symmetric (or asymmetric) by construction.
    pub fn cosc_system(
        rng: &mut impl Rng,
        n_max: usize,
        den_max: i64,
        symmetric: bool,
    ) -> HomogeneousIFS {
        loop {
            let n = rng.gen_range(2..=n_max.max(2));
            if !symmetric && n == 2 {
                // two-point digit sets are always symmetric
                if n_max < 3 {
                    panic!("asymmetric digit sets need n_max >= 3");
                }
                continue;
            }
            let digits = if symmetric {
                symmetric_digits(rng, n)
            } else {
                asymmetric_digits(rng, n)
            };
            if let Some(r) = cosc_ratio(rng, &digits, den_max) {
                let phi = HomogeneousIFS::from_digits(r, digits).expect("valid system");
                if check_cosc(&phi) {
                    return phi;
                }
            }
        }
    }
}

/// Brute-force center of symmetry by pairwise reflection.
pub fn brute_symmetry_center(sorted: &[Rational]) -> Option<Rational> {
    let twice = sorted.first()? + sorted.last()?;
    let mut reflected: Vec<Rational> = sorted.iter().map(|v| &twice - v).collect();
    reflected.sort();
    (reflected == sorted).then(|| twice / Rational::from_integer(2.into()))
}

fn pairwise_distinct(values: &[Rational]) -> bool {
    (0..values.len()).all(|i| (i + 1..values.len()).all(|j| values[i] != values[j]))
}

fn all_sums(x: &[Rational], y: &[Rational], c: &Rational) -> Vec<Rational> {
    let mut out: Vec<Rational> = x
        .iter()
        .flat_map(|a| y.iter().map(move |b| a + c * b))
        .collect();
    out.sort();
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CampaignConfig {
    pub seed: u64,
    pub cases: u64,
    pub n_max: usize,
    pub r_den_max: i64,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            seed: 0,
            cases: 100,
            n_max: 5,
            r_den_max: 24,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyTally {
    pub name: &'static str,
    pub passed: u64,
    pub failed: u64,
    pub skipped: u64,
    /// Smallest failing instance (by map count), in the IFS text grammar where possible.
    pub counterexample: Option<String>,
    counterexample_size: usize,
}

impl PropertyTally {
    fn new(name: &'static str) -> Self {
        PropertyTally {
            name,
            passed: 0,
            failed: 0,
            skipped: 0,
            counterexample: None,
            counterexample_size: usize::MAX,
        }
    }

    fn record(&mut self, outcome: Outcome) {
        match outcome {
            Outcome::Pass => self.passed += 1,
            Outcome::Skip => self.skipped += 1,
            Outcome::Fail { size, instance } => {
                self.failed += 1;
                if size < self.counterexample_size {
                    self.counterexample_size = size;
                    self.counterexample = Some(instance);
                }
            }
        }
    }
}

pub enum Outcome {
    Pass,
    Skip,
    Fail { size: usize, instance: String },
}

impl Outcome {
    fn check(ok: bool, size: usize, instance: impl FnOnce() -> String) -> Outcome {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail {
                size,
                instance: instance(),
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CampaignReport {
    pub config: CampaignConfig,
    pub properties: Vec<PropertyTally>,
}

impl CampaignReport {
    pub fn all_passed(&self) -> bool {
        self.properties.iter().all(|p| p.failed == 0)
    }
}

type Property = (&'static str, fn(&mut ChaCha8Rng, &CampaignConfig) -> Outcome);

const PROPERTIES: &[Property] = &[
    ("distinctness-oracle", distinctness_oracle),
    ("sumset-algebra", sumset_algebra),
    ("generating-function-homomorphism", genfun_homomorphism),
    ("constant-difference-reflection", reflection_oracle),
    ("digit-alignment", alignment_oracle),
    ("pipeline-symmetric-mirror", pipeline_positive),
    ("pipeline-asymmetric-mirror", pipeline_negative),
    ("cover-error-bound", cover_error_bound),
    ("composition-cover-identity", composition_cover),
];

pub fn run_campaign(config: &CampaignConfig) -> CampaignReport {
    let mut properties: Vec<PropertyTally> =
        PROPERTIES.iter().map(|(name, _)| PropertyTally::new(name)).collect();
    for case in 0..config.cases {
        for (stream, (_, check)) in PROPERTIES.iter().enumerate() {
            let mut rng = gen::case_rng(config.seed, stream as u64, case);
            properties[stream].record(check(&mut rng, config));
        }
    }
    CampaignReport {
        config: config.clone(),
        properties,
    }
}

fn n_max(config: &CampaignConfig) -> usize {
    config.n_max.max(2)
}

fn multiset_text(values: &[Rational]) -> String {
    DigitMultiset::new(values.iter().cloned()).to_string()
}

pub fn distinctness_oracle(rng: &mut ChaCha8Rng, config: &CampaignConfig) -> Outcome {
    let len = rng.gen_range(0..=3 * n_max(config));
    let mut values: Vec<Rational> = (0..len).map(|_| gen::small_rational(rng, 20, 6)).collect();
    if len > 1 && rng.gen_bool(0.5) {
        // engineered collision, possibly with a different representation
        let i = rng.gen_range(0..len);
        let j = rng.gen_range(0..len);
        let v = values[i].clone();
        values[j] = Rational::new(v.numer() * 3, v.denom() * 3);
    }
    let ok = all_distinct(&DigitMultiset::new(values.clone())) == pairwise_distinct(&values);
    Outcome::check(ok, len, || multiset_text(&values))
}

pub fn sumset_algebra(rng: &mut ChaCha8Rng, config: &CampaignConfig) -> Outcome {
    let draw = |rng: &mut ChaCha8Rng| -> Vec<Rational> {
        let len = rng.gen_range(1..=n_max(config));
        (0..len).map(|_| gen::small_rational(rng, 12, 4)).collect()
    };
    let (a, b) = (draw(rng), draw(rng));
    let r = gen::small_rational(rng, 5, 5);
    let (ma, mb) = (DigitMultiset::new(a.clone()), DigitMultiset::new(b.clone()));
    let one = Rational::one();
    let brute: Vec<Rational> = all_sums(&a, &b, &one);
    let ok = sumset(&ma, &mb).to_vec() == brute
        && sumset(&ma, &mb) == sumset(&mb, &ma)
        && scale(&r, &sumset(&ma, &mb)) == sumset(&scale(&r, &ma), &scale(&r, &mb));
    Outcome::check(ok, a.len() + b.len(), || {
        format!("A = {}, B = {}", multiset_text(&a), multiset_text(&b))
    })
}

pub fn genfun_homomorphism(rng: &mut ChaCha8Rng, config: &CampaignConfig) -> Outcome {
    let len = rng.gen_range(1..=n_max(config));
    let a: Vec<Rational> = (0..len).map(|_| gen::small_rational(rng, 12, 4)).collect();
    let b: Vec<Rational> = (0..len).map(|_| gen::small_rational(rng, 12, 4)).collect();
    let r = gen::ratio(rng, config.r_den_max);
    let (ma, mb) = (DigitMultiset::new(a.clone()), DigitMultiset::new(b.clone()));
    let product = genfun(&ma).multiply(&genfun(&mb));
    let ok = product.exponents().to_vec() == all_sums(&a, &b, &Rational::one())
        && genfun(&scale(&r, &ma)) == genfun(&ma).rescale_exponents(&r).expect("r != 0");
    Outcome::check(ok, len, || {
        format!("A = {}, B = {}", multiset_text(&a), multiset_text(&b))
    })
}

/// A random instance of the constant-difference hypotheses: `A` symmetric about
/// `C(1−r)/(2r)` (repeats allowed) and `B = A + C`.
pub fn reflection_instance(rng: &mut impl Rng, n_max: usize, den_max: i64) -> (Vec<Rational>, Rational, Rational) {
    let n = rng.gen_range(1..=n_max.max(1));
    let r = gen::ratio(rng, den_max);
    let c = gen::small_rational(rng, 10, 4);
    let s = &c * (Rational::one() - &r) / &r;
    let mut a = Vec::with_capacity(n);
    for _ in 0..n / 2 {
        let x = gen::small_rational(rng, 10, 3);
        a.push(&s - &x);
        a.push(x);
    }
    if n % 2 == 1 {
        a.push(&s / Rational::from_integer(2.into()));
    }
    a.sort();
    (a, r, c)
}

pub fn reflection_oracle(rng: &mut ChaCha8Rng, config: &CampaignConfig) -> Outcome {
    let (a, r, c) = reflection_instance(rng, n_max(config).min(6), config.r_den_max);
    let b: Vec<Rational> = a.iter().map(|x| x + &c).collect();
    let ma = DigitMultiset::new(a.clone());
    let mb = DigitMultiset::new(b);
    let ok = match constant_difference_reflection(&ma, &mb, &r) {
        Ok(out) => {
            let mut reflected: Vec<Rational> = a.iter().map(|x| &out.reflection - x).collect();
            reflected.sort();
            reflected == a && out.difference == c
        }
        Err(_) => false,
    };
    Outcome::check(ok, a.len(), || {
        format!("A = {}, C = {}, r = {}", multiset_text(&a), c, r)
    })
}

/// Brute-force check of the alignment hypotheses on sorted digit sets.
pub fn alignment_hypotheses_hold(a: &[Rational], b: &[Rational], r: &Rational) -> bool {
    let neg = -r;
    let plus = all_sums(a, a, r);
    pairwise_distinct(a)
        && pairwise_distinct(b)
        && pairwise_distinct(&plus)
        && pairwise_distinct(&cross(a, b, r))
        && pairwise_distinct(&cross(b, a, &neg))
        && plus == all_sums(b, b, &neg)
}

// x + c·y over x ∈ X, y ∈ Y
fn cross(x: &[Rational], y: &[Rational], c: &Rational) -> Vec<Rational> {
    all_sums(x, y, c)
}

pub fn alignment_oracle(rng: &mut ChaCha8Rng, config: &CampaignConfig) -> Outcome {
    let n = rng.gen_range(1..=n_max(config).min(6));
    let a = gen::symmetric_digits(rng, n.max(1));
    let r = gen::ratio(rng, config.r_den_max);
    let a1 = a[0].clone();
    let an = a[a.len() - 1].clone();
    let bn = (&an + &r * &a1) / (Rational::one() - &r);
    let b: Vec<Rational> = a.iter().map(|x| x + &r * &a1 + &r * &bn).collect();
    if !alignment_hypotheses_hold(&a, &b, &r) {
        return Outcome::Skip;
    }
    let ok = alignment_holds(&a, &b, &r);
    Outcome::check(ok, a.len(), || {
        format!("A = {}, B = {}, r = {}", multiset_text(&a), multiset_text(&b), r)
    })
}

/// Runs the alignment and checks its conclusion against direct evaluation;
/// for `n ≤ 4` also confirms every representation is unique by enumeration.
pub fn alignment_holds(a: &[Rational], b: &[Rational], r: &Rational) -> bool {
    let ma = DigitMultiset::new(a.iter().cloned());
    let mb = DigitMultiset::new(b.iter().cloned());
    let Ok(w) = align_digits(&ma, &mb, r) else {
        return false;
    };
    let n = a.len();
    let (a1, bn) = (&a[0], &b[n - 1]);
    let equalities = (0..n).all(|i| &b[i] - r * bn == &a[i] + r * a1);
    let unique = n > 4
        || (0..n).all(|k| {
            let target = &b[k] - r * bn;
            let reps: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .filter(|&(i, j)| &a[i] + r * &a[j] == target)
                .collect();
            reps == vec![(w.s[k] - 1, w.t[k] - 1)]
        });
    equalities && unique && w.is_identity_alignment()
}

fn campaign_pipeline_config() -> PipelineConfig {
    PipelineConfig {
        epsilon: Rational::new(1.into(), 1000.into()),
        k_max: 20,
        symmetry_level: 6,
        budget: CoverBudget::default(),
    }
}

pub fn pipeline_positive(rng: &mut ChaCha8Rng, config: &CampaignConfig) -> Outcome {
    let phi = gen::cosc_system(rng, n_max(config), config.r_den_max, true);
    let psi = mirror_candidate(&phi).expect("positive ratio");
    let verdict = theorem_pipeline(&phi, &psi, &campaign_pipeline_config());
    let expected = (phi.min_digit() + psi.max_digit()) / Rational::from_integer(2.into());
    let ok = match &verdict {
        PairVerdict::Symmetric(cert) => {
            let m = is_symmetric_multiset(phi.digits());
            cert.attractor_center == expected
                && m.is_some_and(|m| m / (Rational::one() - phi.ratio()) == expected)
                && attractor_symmetry_check(&phi, &expected, 6, CoverBudget::default())
                    .unwrap_or(false)
        }
        _ => false,
    };
    Outcome::check(ok, phi.len(), || format_ifs(&phi))
}

pub fn pipeline_negative(rng: &mut ChaCha8Rng, config: &CampaignConfig) -> Outcome {
    if n_max(config) < 3 {
        return Outcome::Skip;
    }
    let phi = gen::cosc_system(rng, n_max(config), config.r_den_max, false);
    let psi = mirror_candidate(&phi).expect("positive ratio");
    let verdict = theorem_pipeline(&phi, &psi, &campaign_pipeline_config());
    Outcome::check(!verdict.is_symmetric(), phi.len(), || format_ifs(&phi))
}

/// Certified negatives: a failed multiset identity or separated attractors.
pub fn is_certified_negative(verdict: &PairVerdict) -> bool {
    matches!(
        verdict,
        PairVerdict::PreconditionFailed {
            name: Precondition::MultisetIdentity,
            ..
        } | PairVerdict::AttractorsDiffer { .. }
    )
}

pub fn cover_error_bound(rng: &mut ChaCha8Rng, config: &CampaignConfig) -> Outcome {
    let symmetric = n_max(config) < 3 || rng.gen_bool(0.5);
    let phi = gen::cosc_system(rng, n_max(config).min(4), config.r_den_max, symmetric);
    let k = rng.gen_range(0..=3);
    let j = rng.gen_range(1..=3);
    let budget = CoverBudget::default();
    let ok = match (
        cover_with_budget(&phi, k, budget),
        cover_with_budget(&phi, k + j, budget),
    ) {
        (Ok(c), Ok(f)) => &endpoint_hausdorff(&c, &f) <= c.error_bound(),
        _ => false,
    };
    Outcome::check(ok, phi.len(), || format!("{} (k = {k}, j = {j})", format_ifs(&phi)))
}

pub fn composition_cover(rng: &mut ChaCha8Rng, config: &CampaignConfig) -> Outcome {
    let symmetric = n_max(config) < 3 || rng.gen_bool(0.5);
    let mut phi = gen::cosc_system(rng, n_max(config).min(4), config.r_den_max, symmetric);
    if rng.gen_bool(0.5) {
        phi = HomogeneousIFS::new(-phi.ratio(), phi.digits().clone()).expect("valid");
    }
    let k = rng.gen_range(0..=2);
    let budget = CoverBudget::default();
    let ok = match compose(&phi, &phi) {
        Ok(phi2) => match (cover_with_budget(&phi2, k, budget), cover_with_budget(&phi, 2 * k, budget)) {
            (Ok(a), Ok(b)) => a.same_intervals(&b),
            _ => false,
        },
        Err(_) => return Outcome::Skip,
    };
    Outcome::check(ok, phi.len(), || format!("{} (k = {k})", format_ifs(&phi)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn campaign_is_deterministic() {
        let config = CampaignConfig {
            seed: 7,
            cases: 5,
            n_max: 4,
            r_den_max: 12,
        };
        let a = run_campaign(&config);
        let b = run_campaign(&config);
        assert_eq!(a, b);
        assert!(a.all_passed(), "{a:?}");
    }

    #[test]
    fn generators_respect_contracts() {
        let mut rng = gen::case_rng(1, 0, 0);
        for _ in 0..20 {
            let sym = gen::symmetric_digits(&mut rng, 5);
            assert!(brute_symmetry_center(&sym).is_some());
            assert!(pairwise_distinct(&sym));
            let asym = gen::asymmetric_digits(&mut rng, 4);
            assert!(brute_symmetry_center(&asym).is_none());
            let phi = gen::cosc_system(&mut rng, 5, 24, false);
            assert!(check_cosc(&phi));
        }
    }

    #[test]
    fn brute_center() {
        let v = |xs: &[i64]| xs.iter().map(|x| Rational::from_integer((*x).into())).collect::<Vec<_>>();
        assert_eq!(brute_symmetry_center(&v(&[0, 2])), Some(Rational::one()));
        assert_eq!(brute_symmetry_center(&v(&[0, 1, 3])), None);
        assert_eq!(brute_symmetry_center(&[]), None);
    }
}
