//! Homogeneous IFS on the line: `x ↦ r·x + b` for each digit `b`.

use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::multiset::{all_distinct, scale, sumset, DigitMultiset};
use crate::rational::{format_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IfsError {
    #[error("contraction ratio {0} must satisfy 0 < |r| < 1")]
    RatioOutOfRange(String),
    #[error("digit {0} appears more than once")]
    DuplicateDigit(String),
    #[error("need at least two maps, got {0}")]
    TooFewMaps(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomogeneousIFS {
    ratio: Rational,
    digits: DigitMultiset,
}

impl HomogeneousIFS {
    pub fn new(ratio: Rational, digits: DigitMultiset) -> Result<Self, IfsError> {
        if ratio.is_zero() || ratio.abs() >= Rational::one() {
            return Err(IfsError::RatioOutOfRange(format_rational(&ratio)));
        }
        if let Some((v, _)) = digits.entries().iter().find(|(_, m)| *m > 1) {
            return Err(IfsError::DuplicateDigit(format_rational(v)));
        }
        if digits.len() < 2 {
            return Err(IfsError::TooFewMaps(digits.len()));
        }
        Ok(HomogeneousIFS { ratio, digits })
    }

    pub fn from_digits<I: IntoIterator<Item = Rational>>(
        ratio: Rational,
        digits: I,
    ) -> Result<Self, IfsError> {
        let values: Vec<Rational> = digits.into_iter().collect();
        let set = DigitMultiset::new(values);
        Self::new(ratio, set)
    }

    pub fn ratio(&self) -> &Rational {
        &self.ratio
    }

    pub fn digits(&self) -> &DigitMultiset {
        &self.digits
    }

    /// Number of maps.
    pub fn len(&self) -> usize {
        self.digits.len()
    }

    /// Always false; an IFS has at least two maps.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Digits in increasing order.
    pub fn digit_vec(&self) -> Vec<Rational> {
        self.digits.to_vec()
    }

    pub fn min_digit(&self) -> &Rational {
        self.digits.min().expect("n >= 2")
    }

    pub fn max_digit(&self) -> &Rational {
        self.digits.max().expect("n >= 2")
    }
}

impl fmt::Display for HomogeneousIFS {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})x + {}", format_rational(&self.ratio), self.digits)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Interval { lo, hi }
    }

    /// Interval spanned by two points in either order.
    pub fn spanning(a: Rational, b: Rational) -> Self {
        if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Image under `x ↦ r·x + b`.
    pub fn map(&self, r: &Rational, b: &Rational) -> Interval {
        Interval::spanning(r * &self.lo + b, r * &self.hi + b)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", format_rational(&self.lo), format_rational(&self.hi))
    }
}

/// `Φ∘Ψ = (r_Φ·r_Ψ)x + (r_Φ·B + A)`. Fails when two composed maps coincide.
pub fn compose(phi: &HomogeneousIFS, psi: &HomogeneousIFS) -> Result<HomogeneousIFS, IfsError> {
    let digits = sumset(&scale(&phi.ratio, &psi.digits), &phi.digits);
    if !all_distinct(&digits) {
        let (v, _) = digits.entries().iter().find(|(_, m)| *m > 1).unwrap();
        return Err(IfsError::DuplicateDigit(format_rational(v)));
    }
    HomogeneousIFS::new(&phi.ratio * &psi.ratio, digits)
}

/// Smallest interval `H` with `Φ(H) ⊆ H`; it is the convex hull of the attractor.
pub fn hull(phi: &HomogeneousIFS) -> Interval {
    let r = phi.ratio();
    let (lo, hi) = (phi.min_digit(), phi.max_digit());
    let one = Rational::one();
    if r.is_positive() {
        let denom = &one - r;
        Interval::new(lo / &denom, hi / &denom)
    } else {
        // u = r·v + lo, v = r·u + hi
        let denom = &one - r * r;
        Interval::new((lo + r * hi) / &denom, (hi + r * lo) / &denom)
    }
}

/// Convex open set condition with `U` the open hull: the images `r·H° + a`
/// must have pairwise disjoint interiors.
pub fn check_cosc(phi: &HomogeneousIFS) -> bool {
    let h = hull(phi);
    // equal widths, so sorting by lo orders the images
    let mut images: Vec<Interval> = phi
        .digits()
        .iter()
        .map(|b| h.map(phi.ratio(), b))
        .collect();
    images.sort();
    images.windows(2).all(|w| w[0].hi <= w[1].lo)
}

/// `log n / log(1/|r|)`, accurate to floating-point rounding (about 1e-12
/// relative for moderate numerators and denominators).
pub fn similarity_dimension(phi: &HomogeneousIFS) -> f64 {
    let r = phi.ratio().abs();
    let ln = |v: &num_bigint::BigInt| -> f64 {
        let bits = v.bits();
        if bits <= 1000 {
            crate::rational::to_f64(&Rational::from_integer(v.clone())).ln()
        } else {
            let shift = bits - 64;
            crate::rational::to_f64(&Rational::from_integer(v >> shift)).ln()
                + shift as f64 * std::f64::consts::LN_2
        }
    };
    let n = phi.len() as f64;
    n.ln() / (ln(r.denom()) - ln(r.numer()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn ifs(r: Rational, digits: &[Rational]) -> HomogeneousIFS {
        HomogeneousIFS::from_digits(r, digits.iter().cloned()).unwrap()
    }

    #[test]
    fn rejects_invalid_systems() {
        assert!(matches!(
            HomogeneousIFS::from_digits(rat(3, 2), [int(0), int(1)]),
            Err(IfsError::RatioOutOfRange(_))
        ));
        assert!(matches!(
            HomogeneousIFS::from_digits(int(0), [int(0), int(1)]),
            Err(IfsError::RatioOutOfRange(_))
        ));
        assert!(matches!(
            HomogeneousIFS::from_digits(int(-1), [int(0), int(1)]),
            Err(IfsError::RatioOutOfRange(_))
        ));
        assert!(matches!(
            HomogeneousIFS::from_digits(rat(1, 3), [int(0), int(0)]),
            Err(IfsError::DuplicateDigit(_))
        ));
        assert_eq!(
            HomogeneousIFS::from_digits(rat(1, 3), [int(0)]),
            Err(IfsError::TooFewMaps(1))
        );
    }

    #[test]
    fn compose_examples() {
        let phi = ifs(rat(1, 3), &[int(0), int(2)]);
        let psi = ifs(rat(-1, 3), &[int(1), int(3)]);
        assert_eq!(
            compose(&phi, &psi).unwrap(),
            ifs(rat(-1, 9), &[rat(1, 3), int(1), rat(7, 3), int(3)])
        );
        assert_eq!(
            compose(&phi, &phi).unwrap(),
            ifs(rat(1, 9), &[int(0), rat(2, 3), int(2), rat(8, 3)])
        );
        let a = ifs(rat(1, 2), &[int(0), int(1)]);
        let b = ifs(rat(1, 2), &[int(0), int(2)]);
        assert_eq!(compose(&a, &b), Err(IfsError::DuplicateDigit("1".into())));
    }

    #[test]
    fn hull_examples() {
        let h = |r, d: &[Rational]| hull(&ifs(r, d));
        assert_eq!(h(rat(1, 3), &[int(0), int(2)]), Interval::new(int(0), int(3)));
        assert_eq!(h(rat(-1, 3), &[int(1), int(3)]), Interval::new(int(0), int(3)));
        assert_eq!(
            h(rat(-1, 5), &[rat(3, 4), rat(7, 4), rat(15, 4)]),
            Interval::new(int(0), rat(15, 4))
        );
    }

    #[test]
    fn hull_is_invariant_and_tight() {
        let systems = [
            ifs(rat(1, 3), &[int(0), int(2)]),
            ifs(rat(-2, 7), &[int(-3), rat(1, 2), int(4)]),
            ifs(rat(-1, 2), &[int(0), int(1)]),
            ifs(rat(5, 6), &[int(1), int(2), int(9)]),
        ];
        for phi in &systems {
            let h = hull(phi);
            let images: Vec<Interval> = phi.digits().iter().map(|b| h.map(phi.ratio(), b)).collect();
            assert!(images.iter().all(|i| h.contains(i)), "{phi}");
            // tight: both endpoints are reached by some image
            assert!(images.iter().any(|i| i.lo == h.lo));
            assert!(images.iter().any(|i| i.hi == h.hi));
        }
    }

    #[test]
    fn cosc_examples() {
        assert!(check_cosc(&ifs(rat(1, 3), &[int(0), int(2)])));
        assert!(check_cosc(&ifs(rat(1, 2), &[int(0), int(1)])));
        assert!(!check_cosc(&ifs(rat(2, 3), &[int(0), int(1)])));
    }

    #[test]
    fn dimension_examples() {
        let d = similarity_dimension(&ifs(rat(1, 3), &[int(0), int(2)]));
        assert!((d - 2f64.ln() / 3f64.ln()).abs() < 1e-9);
        assert!((d - 0.6309297535714574).abs() < 1e-9);
        assert_eq!(similarity_dimension(&ifs(rat(1, 2), &[int(0), int(1)])), 1.0);
        assert_eq!(similarity_dimension(&ifs(rat(-1, 3), &[int(0), int(1), int(2)])), 1.0);
    }
}
