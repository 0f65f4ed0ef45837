//! Exact rational helpers shared by every module.
//!
//! All invariants and bounds are carried as [`Rational`] values. Floating
//! point only appears at the rendering layer ([`render_decimal`]).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::fmt;

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Error returned by [`parse_rational`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError(pub String);

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational literal {:?}", self.0)
    }
}

impl std::error::Error for ParseRationalError {}

/// Parses `"p"` or `"p/q"` (surrounding whitespace allowed).
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(text.to_string());
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err())?;
    let den: BigInt = den.parse().map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

/// Exact `p/q` rendering (integers print without a denominator).
pub fn exact(value: &Rational) -> String {
    value.to_string()
}

/// Rounds half away from zero to `decimals` places and returns the fixed
/// point string, keeping trailing zeros.
pub fn round_fixed(value: &Rational, decimals: u32) -> String {
    let scale = BigInt::from(10u32).pow(decimals);
    let scaled = value.abs() * Rational::from_integer(scale.clone());
    let half = Rational::new(BigInt::from(1), BigInt::from(2));
    let rounded = (scaled + half).floor().to_integer();
    let (whole, frac) = rounded.div_rem(&scale);
    let sign = if value.is_negative() && !rounded.is_zero() {
        "-"
    } else {
        ""
    };
    if decimals == 0 {
        return format!("{sign}{whole}");
    }
    format!("{sign}{whole}.{frac:0>width$}", width = decimals as usize)
}

/// Table-style rendering: round half-up to `decimals` places, then drop
/// trailing zeros (`3.500` prints as `3.5`, `4.000` as `4`).
pub fn render_decimal(value: &Rational, decimals: u32) -> String {
    let fixed = round_fixed(value, decimals);
    if !fixed.contains('.') {
        return fixed;
    }
    fixed
        .trim_end_matches('0')
        .trim_end_matches('.')
        .to_string()
}

/// Serde adapter that writes a [`Rational`] as its exact string and accepts
/// either a string or a JSON integer on input.
pub mod serde_exact {
    use super::{parse_rational, Rational};
    use num_bigint::BigInt;
    use serde::de::Error;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&value.to_string())
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Text(String),
        Int(i64),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Text(t) => parse_rational(&t).map_err(D::Error::custom),
            Repr::Int(i) => Ok(Rational::from_integer(BigInt::from(i))),
        }
    }
}

/// Optional variant of [`serde_exact`].
pub mod serde_exact_opt {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match value {
            Some(v) => s.serialize_str(&v.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        #[derive(Deserialize)]
        struct Wrap(#[serde(with = "super::serde_exact")] Rational);
        Ok(Option::<Wrap>::deserialize(d)?.map(|w| w.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_matches_table_convention() {
        assert_eq!(render_decimal(&ratio(17, 9), 3), "1.889");
        assert_eq!(render_decimal(&ratio(7, 2), 3), "3.5");
        assert_eq!(render_decimal(&int(4), 3), "4");
        assert_eq!(render_decimal(&ratio(8, 5), 3), "1.6");
        assert_eq!(render_decimal(&ratio(30, 7), 3), "4.286");
        // exact half rounds up
        assert_eq!(round_fixed(&ratio(1, 2000), 3), "0.001");
        assert_eq!(round_fixed(&ratio(-7, 2), 0), "-4");
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("8/3").unwrap(), ratio(8, 3));
        assert_eq!(parse_rational(" -28 ").unwrap(), int(-28));
        assert_eq!(parse_rational("6/4").unwrap(), ratio(3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
