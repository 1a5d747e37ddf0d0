//! Exact rational helpers shared by every module.

use std::fmt;

use num::{BigInt, BigRational, One, Signed};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number. Every distance in the crate is one of these.
pub type Rational = BigRational;

/// Builds `num / den` from machine integers.
///
/// # Panics
/// Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p/q` or a bare integer. The denominator must be positive.
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((p, q)) => (p, q),
        None => (text, "1"),
    };
    let num: BigInt = num
        .trim()
        .parse()
        .map_err(|_| format!("invalid rational numerator in {text:?}"))?;
    let den: BigInt = den
        .trim()
        .parse()
        .map_err(|_| format!("invalid rational denominator in {text:?}"))?;
    if !den.is_positive() {
        return Err(format!("denominator must be positive in {text:?}"));
    }
    Ok(Rational::new(num, den))
}

/// `2^exp` for a signed exponent.
pub fn pow2(exp: i64) -> Rational {
    let base = BigInt::from(2u8).pow(exp.unsigned_abs() as u32);
    if exp >= 0 {
        Rational::from_integer(base)
    } else {
        Rational::new(BigInt::one(), base)
    }
}

pub(crate) fn half(x: &Rational) -> Rational {
    x / int(2)
}

/// Lossy conversion for display purposes only.
pub fn to_f64(x: &Rational) -> f64 {
    use num::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

/// How to pick a value out of a nonempty closed interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Choice {
    /// The lower endpoint.
    Minimal,
    /// The midpoint.
    #[default]
    Midpoint,
    /// The upper endpoint.
    Maximal,
}

impl Choice {
    pub fn pick(self, lo: &Rational, hi: &Rational) -> Rational {
        match self {
            Choice::Minimal => lo.clone(),
            Choice::Midpoint => half(&(lo + hi)),
            Choice::Maximal => hi.clone(),
        }
    }
}

impl std::str::FromStr for Choice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "minimal" => Ok(Choice::Minimal),
            "midpoint" => Ok(Choice::Midpoint),
            "maximal" => Ok(Choice::Maximal),
            other => Err(format!("unknown policy {other:?}")),
        }
    }
}

/// A closed interval `[lo, hi]` of rationals. May be empty (`lo > hi`) while it is
/// being intersected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        Interval { lo, hi }
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

pub(crate) fn ensure_positive(x: &Rational, what: &str) -> Result<()> {
    if x.is_positive() {
        Ok(())
    } else {
        Err(Error::pre(format!("{what} must be positive, got {x}")))
    }
}
