//! Finite multisets of rationals: scaling, sumsets and distinctness.
//!
//! A [`DigitMultiset`] is kept in canonical form (values strictly increasing,
//! each with a positive multiplicity), so multiset equality is structural
//! equality.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::rational::{format_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct DigitMultiset {
    entries: Vec<(Rational, usize)>,
    size: usize,
}

impl DigitMultiset {
    pub fn new<I: IntoIterator<Item = Rational>>(values: I) -> Self {
        let mut counts: BTreeMap<Rational, usize> = BTreeMap::new();
        for v in values {
            *counts.entry(v).or_insert(0) += 1;
        }
        Self::from_counts(counts)
    }

    fn from_counts(counts: BTreeMap<Rational, usize>) -> Self {
        let size = counts.values().sum();
        DigitMultiset {
            entries: counts.into_iter().collect(),
            size,
        }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// Total number of elements, counted with multiplicity.
    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    /// Distinct values with their multiplicities, in increasing order.
    pub fn entries(&self) -> &[(Rational, usize)] {
        &self.entries
    }

    /// All elements in increasing order, repeated by multiplicity.
    pub fn iter(&self) -> impl Iterator<Item = &Rational> + '_ {
        self.entries
            .iter()
            .flat_map(|(v, m)| std::iter::repeat_n(v, *m))
    }

    pub fn to_vec(&self) -> Vec<Rational> {
        self.iter().cloned().collect()
    }

    pub fn min(&self) -> Option<&Rational> {
        self.entries.first().map(|(v, _)| v)
    }

    pub fn max(&self) -> Option<&Rational> {
        self.entries.last().map(|(v, _)| v)
    }

    pub fn multiplicity(&self, value: &Rational) -> usize {
        self.entries
            .binary_search_by(|(v, _)| v.cmp(value))
            .map(|i| self.entries[i].1)
            .unwrap_or(0)
    }

    /// Adds `offset` to every element.
    pub fn translate(&self, offset: &Rational) -> Self {
        DigitMultiset {
            entries: self
                .entries
                .iter()
                .map(|(v, m)| (v + offset, *m))
                .collect(),
            size: self.size,
        }
    }

    /// The multiset `{center2 - a : a ∈ self}`.
    pub fn reflect(&self, center2: &Rational) -> Self {
        DigitMultiset {
            entries: self
                .entries
                .iter()
                .rev()
                .map(|(v, m)| (center2 - v, *m))
                .collect(),
            size: self.size,
        }
    }
}

impl FromIterator<Rational> for DigitMultiset {
    fn from_iter<I: IntoIterator<Item = Rational>>(iter: I) -> Self {
        DigitMultiset::new(iter)
    }
}

impl fmt::Display for DigitMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(&format_rational(v))?;
        }
        f.write_str("}")
    }
}

/// `rA`, multiplicities preserved. Scaling by zero collapses to `{0}` repeated `|A|` times.
pub fn scale(r: &Rational, a: &DigitMultiset) -> DigitMultiset {
    if r.is_zero() {
        if a.is_empty() {
            return DigitMultiset::empty();
        }
        return DigitMultiset {
            entries: vec![(Rational::zero(), a.len())],
            size: a.len(),
        };
    }
    let mut entries: Vec<(Rational, usize)> =
        a.entries.iter().map(|(v, m)| (r * v, *m)).collect();
    if r < &Rational::zero() {
        entries.reverse();
    }
    DigitMultiset {
        entries,
        size: a.size,
    }
}

/// `A + B`: every pairwise sum, with multiplicity, so `|A + B| = |A|·|B|`.
pub fn sumset(a: &DigitMultiset, b: &DigitMultiset) -> DigitMultiset {
    let mut counts: BTreeMap<Rational, usize> = BTreeMap::new();
    for (x, mx) in &a.entries {
        for (y, my) in &b.entries {
            *counts.entry(x + y).or_insert(0) += mx * my;
        }
    }
    DigitMultiset::from_counts(counts)
}

pub fn multiset_equal(a: &DigitMultiset, b: &DigitMultiset) -> bool {
    a == b
}

/// True iff every multiplicity is one.
pub fn all_distinct(a: &DigitMultiset) -> bool {
    a.entries.iter().all(|(_, m)| *m == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use proptest::prelude::*;

    fn ms(values: &[Rational]) -> DigitMultiset {
        DigitMultiset::new(values.iter().cloned())
    }

    #[test]
    fn scale_examples() {
        assert_eq!(scale(&rat(1, 3), &ms(&[int(1), int(3)])), ms(&[rat(1, 3), int(1)]));
        assert_eq!(scale(&int(1), &ms(&[int(0), int(2)])), ms(&[int(0), int(2)]));
        assert_eq!(
            scale(&rat(-1, 3), &ms(&[int(0), int(2)])),
            ms(&[rat(-2, 3), int(0)])
        );
    }

    #[test]
    fn scale_by_zero_collapses() {
        let z = scale(&int(0), &ms(&[int(1), int(2), int(2)]));
        assert_eq!(z.entries(), &[(int(0), 3)]);
        assert_eq!(z.len(), 3);
    }

    #[test]
    fn sumset_examples() {
        let cantor = ms(&[int(0), rat(2, 3), int(2), rat(8, 3)]);
        assert_eq!(sumset(&ms(&[int(0), int(2)]), &ms(&[int(0), rat(2, 3)])), cantor);
        assert_eq!(sumset(&ms(&[int(1), int(3)]), &ms(&[rat(-1, 3), int(-1)])), cantor);
        assert_eq!(sumset(&ms(&[int(5)]), &ms(&[int(0)])), ms(&[int(5)]));
    }

    #[test]
    fn equality_examples() {
        let a = ms(&[int(0), rat(2, 3), int(2), rat(8, 3)]);
        assert!(multiset_equal(&a, &a.clone()));
        assert!(!multiset_equal(&ms(&[int(0), int(2)]), &ms(&[int(0), int(2), int(2)])));
        assert!(!multiset_equal(&ms(&[int(0)]), &ms(&[int(0), int(1)])));
    }

    #[test]
    fn distinctness_examples() {
        assert!(all_distinct(&ms(&[int(0), rat(2, 3), int(2), rat(8, 3)])));
        let a = ms(&[int(0), int(1), int(2)]);
        let s = sumset(&a, &scale(&rat(1, 2), &a));
        assert_eq!(s.len(), 9);
        assert_eq!(s.multiplicity(&int(1)), 2);
        assert_eq!(s.multiplicity(&int(2)), 2);
        assert!(!all_distinct(&s));
        assert!(all_distinct(&ms(&[int(5)])));
    }

    #[test]
    fn display_lists_with_multiplicity() {
        assert_eq!(ms(&[int(2), rat(1, 2), int(2)]).to_string(), "{1/2, 2, 2}");
    }

    fn small_rat() -> impl Strategy<Value = Rational> {
        (-12i64..=12, 1i64..=6).prop_map(|(n, d)| rat(n, d))
    }

    fn small_ms() -> impl Strategy<Value = DigitMultiset> {
        proptest::collection::vec(small_rat(), 0..6).prop_map(DigitMultiset::new)
    }

    proptest! {
        #[test]
        fn sumset_commutative_associative(a in small_ms(), b in small_ms(), c in small_ms()) {
            prop_assert_eq!(sumset(&a, &b), sumset(&b, &a));
            prop_assert_eq!(sumset(&sumset(&a, &b), &c), sumset(&a, &sumset(&b, &c)));
        }

        #[test]
        fn sumset_size_is_product(a in small_ms(), b in small_ms()) {
            prop_assert_eq!(sumset(&a, &b).len(), a.len() * b.len());
        }

        #[test]
        fn scale_distributes_and_composes(a in small_ms(), b in small_ms(), r in small_rat(), q in small_rat()) {
            prop_assert_eq!(scale(&r, &sumset(&a, &b)), sumset(&scale(&r, &a), &scale(&r, &b)));
            prop_assert_eq!(scale(&r, &scale(&q, &a)), scale(&(&r * &q), &a));
        }

        #[test]
        fn distinctness_matches_pairwise(values in proptest::collection::vec(small_rat(), 0..8)) {
            let brute = (0..values.len())
                .all(|i| (i + 1..values.len()).all(|j| values[i] != values[j]));
            prop_assert_eq!(all_distinct(&DigitMultiset::new(values)), brute);
        }
    }
}
