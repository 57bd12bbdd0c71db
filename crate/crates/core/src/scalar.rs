//! The exact field every sequence computation runs over.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Zero};

use crate::error::{Error, Result};

/// An element of an exact field.
///
/// Equality must be structural and exact: two values compare equal iff they
/// denote the same field element. Division by zero is never attempted by this
/// crate; callers go through [`Scalar::checked_inv`] wherever a divisor may
/// vanish.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + FromPrimitive
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn from_bigint(value: &BigInt) -> Self;

    /// Multiplicative inverse, `None` for zero.
    fn checked_inv(&self) -> Option<Self>;

    fn from_int(value: i64) -> Self {
        Self::from_i64(value).expect("every exact field embeds the integers")
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Self::from_int(numer) / Self::from_int(denom)
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }
}

impl Scalar for BigRational {
    fn from_bigint(value: &BigInt) -> Self {
        BigRational::from_integer(value.clone())
    }

    fn checked_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// Parses `-3/7`, `+42`, `5` into a canonical rational. Whitespace around the
/// literal is ignored; a zero denominator is rejected.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let literal = text.trim();
    let err = || Error::ParseRational(text.to_string());
    let (num, den) = match literal.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (literal, None),
    };
    let valid_digits = |s: &str, signed: bool| {
        let digits = if signed {
            s.strip_prefix(['+', '-']).unwrap_or(s)
        } else {
            s
        };
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid_digits(num, true) {
        return Err(err());
    }
    let numer: BigInt = num.parse().map_err(|_| err())?;
    let denom: BigInt = match den {
        Some(d) if valid_digits(d, false) => d.parse().map_err(|_| err())?,
        Some(_) => return Err(err()),
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(err());
    }
    Ok(BigRational::new(numer, denom))
}
