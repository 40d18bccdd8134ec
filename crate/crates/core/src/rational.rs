//! Exact rational scalars shared by every module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Builds `numer/denom` from machine integers.
///
/// Panics if `denom == 0`.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Least common multiple of the denominators of `values` (1 for an empty input).
pub fn common_denominator<'a, I>(values: I) -> BigInt
where
    I: IntoIterator<Item = &'a Rational>,
{
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Numerator of `value` on the lattice `1/den`. `den` must be a multiple of the denominator.
pub(crate) fn lattice_numerator(value: &Rational, den: &BigInt) -> BigInt {
    debug_assert!((den % value.denom()).is_zero());
    value.numer() * (den / value.denom())
}

/// Parses `[-]int[/int]` (surrounding whitespace allowed).
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (text, None),
    };
    let numer = parse_integer(num, true)?;
    let denom = match den {
        Some(d) => parse_integer(d, false)?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return None;
    }
    Some(Rational::new(numer, denom))
}

fn parse_integer(text: &str, allow_sign: bool) -> Option<BigInt> {
    let digits = match text.strip_prefix('-') {
        Some(rest) if allow_sign => rest,
        Some(_) => return None,
        None => text,
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let value: BigInt = digits.parse().ok()?;
    Some(if text.starts_with('-') { -value } else { value })
}

/// Exact text form: `n` for integers, `n/d` otherwise.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

/// Approximate decimal value, for display and the similarity dimension only.
pub fn to_f64(value: &Rational) -> f64 {
    let (n, d) = (value.numer(), value.denom());
    let scale = n.bits().max(d.bits()).saturating_sub(1000) as u32;
    let n = n >> scale;
    let d = d >> scale;
    let nf = bigint_to_f64(&n);
    let df = bigint_to_f64(&d);
    nf / df
}

fn bigint_to_f64(value: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    value.to_f64().unwrap_or(if value.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

/// `base^exp` for a non-negative exponent.
pub fn pow(base: &Rational, exp: u32) -> Rational {
    num_traits::pow(base.clone(), exp as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_grammar() {
        assert_eq!(parse_rational("-1/3"), Some(rat(-1, 3)));
        assert_eq!(parse_rational(" 4/2 "), Some(int(2)));
        assert_eq!(parse_rational("7"), Some(int(7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("1/-3"), None);
        assert_eq!(parse_rational("--1"), None);
        assert_eq!(parse_rational("1.5"), None);
        assert_eq!(parse_rational(""), None);
    }

    #[test]
    fn formats_exactly() {
        assert_eq!(format_rational(&rat(3, 2)), "3/2");
        assert_eq!(format_rational(&rat(-4, 2)), "-2");
        assert_eq!(format_rational(&int(0)), "0");
    }

    #[test]
    fn common_denominator_is_lcm() {
        let vals = [rat(1, 4), rat(5, 6), int(3)];
        assert_eq!(common_denominator(&vals), BigInt::from(12));
        assert_eq!(common_denominator(&[]), BigInt::from(1));
    }
}
