//! Exact rational arithmetic helpers.
//!
//! Every cost, inflation factor and threshold in the crate is a
//! [`Rational`]. Text forms accepted by [`parse_rational`] are integers
//! (`"3"`), fractions (`"7/5"`) and finite decimals (`"0.25"`); output
//! always uses the reduced `"p/q"` (or `"p"`) form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError {
    pub input: String,
}

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "not an exact rational: {:?}", self.input)
    }
}

impl std::error::Error for ParseRationalError {}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError {
        input: text.to_string(),
    };
    let s = text.trim();
    if s.is_empty() {
        return Err(err());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| err())?;
        let den: BigInt = den.trim().parse().map_err(|_| err())?;
        if den.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(num, den));
    }
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (whole, fraction) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && fraction.is_empty() {
        return Err(err());
    }
    let digits_ok = |t: &str| t.chars().all(|c| c.is_ascii_digit());
    if !digits_ok(whole) || !digits_ok(fraction) {
        return Err(err());
    }
    let joined = format!("{whole}{fraction}");
    let mantissa: BigInt = if joined.is_empty() {
        BigInt::zero()
    } else {
        joined.parse().map_err(|_| err())?
    };
    let scale = num_traits::pow(BigInt::from(10), fraction.len());
    let value = Rational::new(mantissa, scale);
    Ok(if negative { -value } else { value })
}

pub fn format_rational(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Smallest multiple of `10^-digits` that is at least `x`.
pub fn decimal_upper(x: f64, digits: u32) -> Rational {
    let scale = 10f64.powi(digits as i32);
    // Nudge upward by a few ulps so round-off in `x * scale` never lands
    // below the true value.
    let scaled = (x * scale * (1.0 + 1e-12)).ceil();
    Rational::new(
        BigInt::from(scaled as i128),
        num_traits::pow(BigInt::from(10), digits as usize),
    )
}

/// Rational upper approximation of `ln(m)` to six decimal places.
pub fn ln_upper(m: usize) -> Rational {
    if m <= 1 {
        return Rational::zero();
    }
    decimal_upper((m as f64).ln(), 6)
}

/// The n-th harmonic number `1 + 1/2 + ... + 1/n`.
pub fn harmonic(n: usize) -> Rational {
    (1..=n as i64).fold(Rational::zero(), |acc, i| acc + frac(1, i))
}

pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// Integer power of a rational.
pub fn pow(base: &Rational, exp: usize) -> Rational {
    (0..exp).fold(Rational::one(), |acc, _| acc * base)
}

/// Largest integer `t` with `2^t <= x` for `x >= 1`.
pub fn floor_log2(x: &Rational) -> u64 {
    let mut t = 0;
    let mut p = Rational::one() + Rational::one();
    while &p <= x {
        t += 1;
        p = &p + &p;
    }
    t
}

pub fn is_nonnegative(value: &Rational) -> bool {
    !value.is_negative()
}

/// `a / b` with the convention that a zero denominator means "no ratio".
pub fn ratio(a: &Rational, b: &Rational) -> Option<Rational> {
    if b.is_zero() {
        None
    } else {
        Some(a / b)
    }
}

/// Least common multiple of the denominators, used to scale to integers.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Serde adapter: rationals travel as exact strings.
pub mod serde_string {
    use super::{format_rational, parse_rational, Rational};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_text_forms() {
        assert_eq!(parse_rational("7/5").unwrap(), frac(7, 5));
        assert_eq!(parse_rational("0.25").unwrap(), frac(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), frac(-3, 2));
        assert_eq!(parse_rational("12").unwrap(), int(12));
        assert_eq!(parse_rational(".5").unwrap(), frac(1, 2));
        assert_eq!(parse_rational("3.").unwrap(), int(3));
        assert_eq!(parse_rational("14/10").unwrap(), frac(7, 5));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "1/0", "abc", "1.2.3", "1e5", ".", "2/x", "0x10"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn formats_reduced() {
        assert_eq!(format_rational(&frac(2401, 625)), "2401/625");
        assert_eq!(format_rational(&frac(10, 5)), "2");
        assert_eq!(format_rational(&frac(-3, 6)), "-1/2");
    }

    #[test]
    fn ln_upper_is_an_upper_bound_within_a_microunit() {
        for m in 2..200 {
            let approx = to_f64(&ln_upper(m));
            let exact = (m as f64).ln();
            assert!(approx >= exact && approx - exact <= 1.01e-6, "m={m}");
        }
        assert!(ln_upper(1).is_zero());
    }

    #[test]
    fn harmonic_numbers() {
        assert_eq!(harmonic(0), int(0));
        assert_eq!(harmonic(3), frac(11, 6));
    }

    #[test]
    fn floor_log2_values() {
        assert_eq!(floor_log2(&int(1)), 0);
        assert_eq!(floor_log2(&frac(7, 2)), 1);
        assert_eq!(floor_log2(&int(8)), 3);
    }
}
