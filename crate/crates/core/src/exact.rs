//! Integer powers and binomial coefficients over an exact field.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `x^e` for any integer exponent.
pub fn pow_int<T: Scalar>(x: &T, e: i64) -> Result<T> {
    let base = if e < 0 {
        x.checked_inv().ok_or(Error::ZeroToNegativePower(e))?
    } else {
        x.clone()
    };
    Ok(pow_unsigned(base, e.unsigned_abs()))
}

pub(crate) fn pow_unsigned<T: Scalar>(mut base: T, mut exp: u64) -> T {
    let mut acc = T::one();
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base.clone();
        }
        exp >>= 1;
        if exp > 0 {
            base = base.square();
        }
    }
    acc
}

/// `(-1)^e` as a field element.
pub fn sign<T: Scalar>(e: i64) -> T {
    if e.rem_euclid(2) == 0 {
        T::one()
    } else {
        -T::one()
    }
}

/// `C(k, j)`, zero outside `0 <= j <= k`.
pub fn binomial(k: i64, j: i64) -> Result<BigInt> {
    if k < 0 {
        return Err(Error::NegativeK(k));
    }
    if j < 0 || j > k {
        return Ok(BigInt::zero());
    }
    let j = j.min(k - j);
    let mut acc = BigInt::one();
    for i in 0..j {
        // exact at every step: acc = C(k, i) before the update
        acc = acc * BigInt::from(k - i) / BigInt::from(i + 1);
    }
    Ok(acc)
}

pub fn binomial_scalar<T: Scalar>(k: i64, j: i64) -> Result<T> {
    binomial(k, j).map(|c| T::from_bigint(&c))
}
