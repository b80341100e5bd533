//! Dual-track numbers: exact rationals for certification, `f64` for sweeps.
//!
//! Every algebraic quantity in the crate (moment coordinates, `tanh²r`,
//! squared radii, metric entries, the stability form) is written once,
//! generically over [`Scalar`]. Transcendental quantities (`π`, `sinh`,
//! `arcsinh`) only ever appear as `f64`.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational number used on the certified track.
pub type Rational = BigRational;

/// Which arithmetic produced a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Track {
    Exact,
    Float,
}

impl Display for Track {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Track::Exact => f.write_str("exact"),
            Track::Float => f.write_str("float"),
        }
    }
}

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + Zero
    + One
    + Signed
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    const TRACK: Track;

    fn from_i64(value: i64) -> Self;

    fn to_f64(&self) -> f64;

    /// Wraps the number into the track-tagged [`Value`].
    fn to_value(&self) -> Value;

    /// Whether `self` and `other` are equal under the track's equality:
    /// exact on rationals, relative band `rel` on floats.
    fn approx_eq(&self, other: &Self, rel: f64) -> bool;
}

impl Scalar for f64 {
    const TRACK: Track = Track::Float;

    fn from_i64(value: i64) -> Self {
        value as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn to_value(&self) -> Value {
        Value::Float(*self)
    }

    fn approx_eq(&self, other: &Self, rel: f64) -> bool {
        (self - other).abs() <= rel * self.abs().max(other.abs())
    }
}

impl Scalar for Rational {
    const TRACK: Track = Track::Exact;

    fn from_i64(value: i64) -> Self {
        Rational::from_integer(BigInt::from(value))
    }

    fn to_f64(&self) -> f64 {
        ratio_to_f64(self)
    }

    fn to_value(&self) -> Value {
        Value::Exact(self.clone())
    }

    fn approx_eq(&self, other: &Self, _rel: f64) -> bool {
        self == other
    }
}

/// Converts a big rational to the nearest-ish `f64`, also when numerator and
/// denominator individually overflow `f64`.
pub fn ratio_to_f64(value: &Rational) -> f64 {
    if let Some(v) = num::ToPrimitive::to_f64(value) {
        if v.is_finite() {
            return v;
        }
    }
    let numer_bits = value.numer().bits() as i64;
    let denom_bits = value.denom().bits() as i64;
    let shift_n = (numer_bits - 900).max(0) as usize;
    let shift_d = (denom_bits - 900).max(0) as usize;
    let n = (value.numer() >> shift_n).to_f64().unwrap_or(f64::NAN);
    let d = (value.denom() >> shift_d).to_f64().unwrap_or(f64::NAN);
    n / d * 2f64.powi(shift_n as i32 - shift_d as i32)
}

/// A number tagged with its arithmetic track, used in reports.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Exact(Rational),
    Float(f64),
}

impl Value {
    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(q) => ratio_to_f64(q),
            Value::Float(x) => *x,
        }
    }

    pub fn track(&self) -> Track {
        match self {
            Value::Exact(_) => Track::Exact,
            Value::Float(_) => Track::Float,
        }
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Value::Exact(q) => Some(q),
            Value::Float(_) => None,
        }
    }
}

impl Display for Value {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Value::Exact(q) => write!(f, "{}", format_rational(q)),
            Value::Float(x) => write!(f, "{x}"),
        }
    }
}

/// `p/q`, or `p` when the denominator is one.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p/q`, an integer, or a finite decimal literal (`0.125`, `-3.5e-2`)
/// into an exact rational.
pub fn parse_rational(token: &str) -> Result<Rational> {
    let tok = token.trim();
    let bad = || Error::Parse {
        token: token.to_string(),
        reason: "expected an integer, p/q, or a decimal literal".into(),
    };
    if tok.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = tok.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::Parse {
                token: token.to_string(),
                reason: "zero denominator".into(),
            });
        }
        return Ok(Rational::new(p, q));
    }
    let (mantissa, exponent) = match tok.find(['e', 'E']) {
        Some(pos) => {
            let e: i32 = tok[pos + 1..].parse().map_err(|_| bad())?;
            (&tok[..pos], e)
        }
        None => (tok, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut numer: BigInt = all_digits.parse().map_err(|_| bad())?;
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        Rational::from_integer(numer * num::pow(ten, scale as usize))
    } else {
        Rational::new(numer, num::pow(ten, (-scale) as usize))
    };
    Ok(value)
}

/// True when the token is written as a decimal literal rather than an
/// integer or `p/q`.
pub fn is_decimal_literal(token: &str) -> bool {
    let t = token.trim();
    !t.contains('/') && (t.contains('.') || t.contains(['e', 'E']))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(p), BigInt::from(d))
    }

    #[test]
    fn parses_fractions_integers_and_decimals() {
        assert_eq!(parse_rational("1/3").unwrap(), q(1, 3));
        assert_eq!(parse_rational("-99/200").unwrap(), q(-99, 200));
        assert_eq!(parse_rational("7").unwrap(), q(7, 1));
        assert_eq!(parse_rational("0.6").unwrap(), q(3, 5));
        assert_eq!(parse_rational("-2.5e-1").unwrap(), q(-1, 4));
        assert_eq!(parse_rational("1e2").unwrap(), q(100, 1));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
    }

    #[test]
    fn rejects_garbage() {
        for tok in ["", "abc", "1/0", "1/2/3", "--1", ".", "1.2.3"] {
            assert!(parse_rational(tok).is_err(), "{tok}");
        }
    }

    #[test]
    fn decimal_detection() {
        assert!(is_decimal_literal("0.5"));
        assert!(is_decimal_literal("1e-3"));
        assert!(!is_decimal_literal("1/2"));
        assert!(!is_decimal_literal("3"));
    }

    #[test]
    fn huge_rationals_convert_to_float() {
        let big = num::pow(BigInt::from(10), 400);
        let v = Rational::new(big.clone() * BigInt::from(3), big);
        assert!((ratio_to_f64(&v) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn format_drops_unit_denominator() {
        assert_eq!(format_rational(&q(4, 2)), "2");
        assert_eq!(format_rational(&q(-1800200, 9801)), "-1800200/9801");
    }
}
