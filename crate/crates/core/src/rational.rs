//! Exact rational numbers with overflow detection.
//!
//! Every quantity in the solver path (dispersion thresholds, point offsets,
//! distances, linear-system coefficients) is a [`Rational`]. Values are kept
//! in lowest terms with a positive denominator. The `std::ops` impls panic on
//! 64-bit overflow; code that can meet large intermediates (Fourier-Motzkin)
//! uses the `checked_*` methods and reports [`RationalError::Overflow`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalError {
    #[error("rational arithmetic overflowed 64-bit range")]
    Overflow,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse '{0}' as an exact rational (expected 'a/b' or an integer)")]
    Parse(String),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(Ratio<i64>);

impl Rational {
    pub const ZERO: Rational = Rational(Ratio::new_raw(0, 1));
    pub const ONE: Rational = Rational(Ratio::new_raw(1, 1));

    /// Builds `numer/denom` reduced to lowest terms.
    pub fn new(numer: i64, denom: i64) -> Result<Self, RationalError> {
        if denom == 0 {
            return Err(RationalError::ZeroDenominator);
        }
        if numer == i64::MIN || denom == i64::MIN {
            return Err(RationalError::Overflow);
        }
        Ok(Rational(Ratio::new(numer, denom)))
    }

    /// Panicking shorthand for literals in code and tests.
    pub fn frac(numer: i64, denom: i64) -> Self {
        Self::new(numer, denom).expect("invalid rational literal")
    }

    pub fn integer(value: i64) -> Self {
        Rational(Ratio::from_integer(value))
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Largest integer not above the value.
    pub fn floor(&self) -> i64 {
        Integer::div_floor(&self.numer(), &self.denom())
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, RationalError> {
        self.0.checked_add(&rhs.0).map(Rational).ok_or(RationalError::Overflow)
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self, RationalError> {
        self.0.checked_sub(&rhs.0).map(Rational).ok_or(RationalError::Overflow)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, RationalError> {
        self.0.checked_mul(&rhs.0).map(Rational).ok_or(RationalError::Overflow)
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, RationalError> {
        if rhs.is_zero() {
            return Err(RationalError::ZeroDenominator);
        }
        self.0.checked_div(&rhs.0).map(Rational).ok_or(RationalError::Overflow)
    }

    pub fn checked_mul_int(&self, k: i64) -> Result<Self, RationalError> {
        self.checked_mul(&Rational::integer(k))
    }

    /// Always `numer/denom`, even for integers; used by the witness file format.
    pub fn to_fraction_string(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::ZERO
    }
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Rational::integer(value)
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        self.checked_add(&rhs).expect("rational overflow in addition")
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        self.checked_sub(&rhs).expect("rational overflow in subtraction")
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        self.checked_mul(&rhs).expect("rational overflow in multiplication")
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl PartialEq<i64> for Rational {
    fn eq(&self, other: &i64) -> bool {
        self.0 == Ratio::from_integer(*other)
    }
}

impl PartialOrd<i64> for Rational {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        self.0.partial_cmp(&Ratio::from_integer(*other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_int(s: &str) -> Option<i64> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Accepts `a/b` or a bare integer. Decimal notation is rejected.
impl FromStr for Rational {
    type Err = RationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let err = || RationalError::Parse(s.to_string());
        match s.split_once('/') {
            Some((n, d)) => {
                let n = parse_int(n.trim()).ok_or_else(err)?;
                let d = parse_int(d.trim()).ok_or_else(err)?;
                Rational::new(n, d)
            }
            None => parse_int(s).map(Rational::integer).ok_or_else(err),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms() {
        let r = Rational::frac(6, -4);
        assert_eq!((r.numer(), r.denom()), (-3, 2));
        assert_eq!(Rational::frac(4, 2), 2);
    }

    #[test]
    fn parse_strict() {
        assert_eq!("2/6".parse::<Rational>().unwrap(), Rational::frac(1, 3));
        assert_eq!("3".parse::<Rational>().unwrap(), 3);
        assert!("0.5".parse::<Rational>().is_err());
        assert!("1e3".parse::<Rational>().is_err());
        assert!("1/0".parse::<Rational>().is_err());
        assert!("/2".parse::<Rational>().is_err());
        assert!("+1/2".parse::<Rational>().is_err());
    }

    #[test]
    fn floor_handles_negatives() {
        assert_eq!(Rational::frac(7, 2).floor(), 3);
        assert_eq!(Rational::frac(-7, 2).floor(), -4);
        assert_eq!(Rational::integer(5).floor(), 5);
    }

    #[test]
    fn overflow_is_reported() {
        let big = Rational::integer(i64::MAX / 2 + 1);
        assert_eq!(big.checked_add(&big), Err(RationalError::Overflow));
        assert!(Rational::frac(1, 3).checked_mul(&Rational::frac(3, 1)).unwrap() == 1);
    }

    #[test]
    fn display_forms() {
        assert_eq!(Rational::frac(3, 4).to_string(), "3/4");
        assert_eq!(Rational::integer(2).to_string(), "2");
        assert_eq!(Rational::integer(2).to_fraction_string(), "2/1");
    }
}
