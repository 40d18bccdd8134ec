//! Sparse Laurent polynomials with rational exponents.
//!
//! Exponents live on the lattice `(1/d)·ℤ`: a term `c·x^(e/d)` is stored as
//! `e ↦ c`. The lattice denominator is kept minimal, so two polynomials are
//! equal exactly when their stored forms are.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::multiset::DigitMultiset;
use crate::rational::{common_denominator, format_rational, lattice_numerator, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("exponent scale factor must be nonzero")]
    ZeroRescale,
    #[error("shift {shift} is not on the exponent lattice 1/{lattice}")]
    OffLattice { shift: String, lattice: BigInt },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    lattice: BigInt,
    terms: BTreeMap<BigInt, u64>,
}

impl LaurentPoly {
    /// Builds a polynomial from `(lattice exponent, coefficient)` pairs over `1/lattice`.
    /// Zero coefficients are dropped and the lattice is reduced.
    pub fn from_terms<I>(lattice: BigInt, terms: I) -> Self
    where
        I: IntoIterator<Item = (BigInt, u64)>,
    {
        assert!(lattice.is_positive(), "lattice denominator must be positive");
        let mut map = BTreeMap::new();
        for (e, c) in terms {
            if c != 0 {
                *map.entry(e).or_insert(0) += c;
            }
        }
        let mut p = LaurentPoly { lattice, terms: map };
        p.reduce_lattice();
        p
    }

    pub fn one() -> Self {
        LaurentPoly::from_terms(BigInt::one(), [(BigInt::zero(), 1)])
    }

    pub fn lattice(&self) -> &BigInt {
        &self.lattice
    }

    /// Stored terms: lattice exponent to coefficient.
    pub fn terms(&self) -> &BTreeMap<BigInt, u64> {
        &self.terms
    }

    pub fn coefficient_sum(&self) -> u64 {
        self.terms.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `x^exponent` for a true (rational) exponent.
    pub fn coefficient(&self, exponent: &Rational) -> u64 {
        let scaled = exponent * Rational::from_integer(self.lattice.clone());
        if !scaled.is_integer() {
            return 0;
        }
        self.terms.get(&scaled.to_integer()).copied().unwrap_or(0)
    }

    /// The exponent multiset, each exponent repeated by its coefficient.
    pub fn exponents(&self) -> DigitMultiset {
        self.terms
            .iter()
            .flat_map(|(e, c)| {
                let v = Rational::new(e.clone(), self.lattice.clone());
                std::iter::repeat_n(v, *c as usize)
            })
            .collect()
    }

    fn reduce_lattice(&mut self) {
        let g = self
            .terms
            .keys()
            .fold(self.lattice.clone(), |acc, e| acc.gcd(e));
        if g.is_one() {
            return;
        }
        self.lattice = &self.lattice / &g;
        self.terms = std::mem::take(&mut self.terms)
            .into_iter()
            .map(|(e, c)| (e / &g, c))
            .collect();
    }

    fn on_lattice(&self, lattice: &BigInt) -> impl Iterator<Item = (BigInt, u64)> + '_ {
        let factor = lattice / &self.lattice;
        self.terms.iter().map(move |(e, c)| (e * &factor, *c))
    }

    /// Product of generating functions; realizes the sumset of the exponent multisets.
    pub fn multiply(&self, other: &LaurentPoly) -> LaurentPoly {
        let lattice = self.lattice.lcm(&other.lattice);
        let lhs: Vec<_> = self.on_lattice(&lattice).collect();
        let rhs: Vec<_> = other.on_lattice(&lattice).collect();
        let mut out: BTreeMap<BigInt, u64> = BTreeMap::new();
        for (e1, c1) in &lhs {
            for (e2, c2) in &rhs {
                *out.entry(e1 + e2).or_insert(0) += c1 * c2;
            }
        }
        LaurentPoly::from_terms(lattice, out)
    }

    /// `P(x^q)`: every true exponent `e` becomes `q·e`.
    pub fn rescale_exponents(&self, q: &Rational) -> Result<LaurentPoly, LaurentError> {
        if q.is_zero() {
            return Err(LaurentError::ZeroRescale);
        }
        let lattice = &self.lattice * q.denom();
        let terms = self.terms.iter().map(|(e, c)| (e * q.numer(), *c));
        Ok(LaurentPoly::from_terms(lattice, terms))
    }

    /// Tests `P(t) = t^shift · P(1/t)`, i.e. the exponent multiset is invariant
    /// under `e ↦ shift − e` with matching coefficients.
    ///
    /// A shift that is not a multiple of `1/lattice` cannot be tested on the
    /// lattice and is rejected.
    pub fn reversal_shift_equal(&self, shift: &Rational) -> Result<bool, LaurentError> {
        let scaled = shift * Rational::from_integer(self.lattice.clone());
        if !scaled.is_integer() {
            return Err(LaurentError::OffLattice {
                shift: format_rational(shift),
                lattice: self.lattice.clone(),
            });
        }
        let s = scaled.to_integer();
        Ok(self
            .terms
            .iter()
            .all(|(e, c)| self.terms.get(&(&s - e)) == Some(c)))
    }
}

/// Generating function `Σ_{a∈A} x^a`.
pub fn genfun(a: &DigitMultiset) -> LaurentPoly {
    let lattice = common_denominator(a.entries().iter().map(|(v, _)| v));
    let terms = a
        .entries()
        .iter()
        .map(|(v, m)| (lattice_numerator(v, &lattice), *m as u64))
        .collect::<Vec<_>>();
    LaurentPoly::from_terms(lattice, terms)
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let exp = Rational::new(e.clone(), self.lattice.clone());
            if *c != 1 {
                write!(f, "{c}·")?;
            }
            write!(f, "x^{}", format_rational(&exp))?;
        }
        Ok(())
    }
}
