//! Exact rational values and their text form.
//!
//! Every mass, sum, and matrix entry in this crate is a [`Rational`]:
//! an arbitrary-precision fraction kept in lowest terms with a positive
//! denominator. Values are written as `"p/q"` or as a plain integer
//! string; that is the only number format accepted or produced by the
//! JSON interfaces.

use num::bigint::BigInt;
use num::{One, Signed, Zero};

use crate::error::Error;

pub type Rational = num::BigRational;

/// Builds a rational from small integers. Panics on a zero denominator,
/// so it is only meant for literals in code and tests.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from(BigInt::from(value))
}

/// Parses `"p/q"` or `"p"`. Rejects empty input, a zero or negative
/// denominator, and anything that is not an optionally signed decimal
/// integer on each side of the slash.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::invalid_input("empty rational"));
    }
    let (numer_text, denom_text) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let numer = parse_int(numer_text, s)?;
    let denom = match denom_text {
        Some(d) => parse_int(d, s)?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(Error::invalid_input(format!(
            "zero denominator in rational '{s}'"
        )));
    }
    if denom.is_negative() {
        return Err(Error::invalid_input(format!(
            "denominator must be positive in rational '{s}'"
        )));
    }
    Ok(Rational::new(numer, denom))
}

fn parse_int(part: &str, whole: &str) -> Result<BigInt, Error> {
    let digits = part.strip_prefix('-').unwrap_or(part);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::invalid_input(format!("malformed rational '{whole}'")));
    }
    Ok(part.parse().expect("validated digits"))
}

/// Serde adapter: a `Rational` as its `"p/q"` string.
pub mod rat_str {
    use serde::{de, Deserialize, Deserializer, Serializer};

    use super::{parse_rational, Rational};

    pub fn serialize<S: Serializer>(value: &Rational, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_str(value)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(de)?;
        parse_rational(&text).map_err(de::Error::custom)
    }
}

/// Serde adapter: a `Vec<Rational>` as a list of `"p/q"` strings.
pub mod rat_vec {
    use serde::{de, Deserialize, Deserializer, Serializer};

    use super::{parse_rational, Rational};

    pub fn serialize<S: Serializer>(values: &[Rational], ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_seq(values.iter().map(|v| v.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<Rational>, D::Error> {
        let texts = Vec::<String>::deserialize(de)?;
        texts
            .iter()
            .map(|t| parse_rational(t).map_err(de::Error::custom))
            .collect()
    }
}
