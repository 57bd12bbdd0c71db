//! Integers modulo a prime, used where big rationals would make timings
//! meaningless.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::marker::PhantomData;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{FromPrimitive, One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub trait Modulus: 'static {
    fn modulus() -> u64;
}

/// A modulus fixed at compile time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StaticModulus<const P: u64> {}

impl<const P: u64> Modulus for StaticModulus<P> {
    fn modulus() -> u64 {
        P
    }
}

static DYNAMIC_MODULUS: AtomicU64 = AtomicU64::new(1_000_000_007);

/// A process-wide modulus chosen at run time.
///
/// All `ModInt<DynamicModulus>` values share one modulus; changing it while
/// such values are alive makes them meaningless.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DynamicModulus {}

impl DynamicModulus {
    pub fn set(modulus: u64) -> Result<()> {
        if !is_prime(modulus) {
            return Err(Error::CompositeModulus(modulus));
        }
        DYNAMIC_MODULUS.store(modulus, Ordering::SeqCst);
        Ok(())
    }
}

impl Modulus for DynamicModulus {
    fn modulus() -> u64 {
        DYNAMIC_MODULUS.load(Ordering::Relaxed)
    }
}

pub struct ModInt<M: Modulus> {
    value: u64,
    _modulus: PhantomData<M>,
}

impl<M: Modulus> ModInt<M> {
    pub fn new(value: u64) -> Self {
        Self::raw(value % M::modulus())
    }

    fn raw(value: u64) -> Self {
        ModInt {
            value,
            _modulus: PhantomData,
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = *self;
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }
}

impl<M: Modulus> Clone for ModInt<M> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<M: Modulus> Copy for ModInt<M> {}

impl<M: Modulus> PartialEq for ModInt<M> {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl<M: Modulus> Eq for ModInt<M> {}

impl<M: Modulus> Hash for ModInt<M> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.value.hash(state);
    }
}

impl<M: Modulus> fmt::Debug for ModInt<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, M::modulus())
    }
}

impl<M: Modulus> fmt::Display for ModInt<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl<M: Modulus> Add for ModInt<M> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let m = M::modulus();
        let (sum, carry) = self.value.overflowing_add(rhs.value);
        if carry || sum >= m {
            Self::raw(sum.wrapping_sub(m))
        } else {
            Self::raw(sum)
        }
    }
}

impl<M: Modulus> Sub for ModInt<M> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        if self.value >= rhs.value {
            Self::raw(self.value - rhs.value)
        } else {
            Self::raw(M::modulus() - (rhs.value - self.value))
        }
    }
}

impl<M: Modulus> Neg for ModInt<M> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::zero() - self
    }
}

impl<M: Modulus> Mul for ModInt<M> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let product = u128::from(self.value) * u128::from(rhs.value);
        Self::raw((product % u128::from(M::modulus())) as u64)
    }
}

impl<M: Modulus> Div for ModInt<M> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.checked_inv().expect("division by zero modulo a prime")
    }
}

impl<M: Modulus> Zero for ModInt<M> {
    fn zero() -> Self {
        Self::raw(0)
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
}

impl<M: Modulus> One for ModInt<M> {
    fn one() -> Self {
        Self::new(1)
    }
}

impl<M: Modulus> FromPrimitive for ModInt<M> {
    fn from_i64(n: i64) -> Option<Self> {
        let m = i128::from(M::modulus());
        Some(Self::raw(i128::from(n).rem_euclid(m) as u64))
    }

    fn from_u64(n: u64) -> Option<Self> {
        Some(Self::new(n))
    }
}

impl<M: Modulus> Scalar for ModInt<M> {
    fn from_bigint(value: &BigInt) -> Self {
        let m = BigInt::from(M::modulus());
        let reduced = value.mod_floor(&m);
        Self::raw(reduced.to_u64().expect("reduced below a u64 modulus"))
    }

    fn checked_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.pow(M::modulus() - 2))
        }
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(m)) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    type F7 = ModInt<StaticModulus<7>>;
    type Big = ModInt<StaticModulus<1_000_000_007>>;

    #[test]
    fn small_field_arithmetic() {
        let three = F7::new(3);
        let five = F7::new(5);
        assert_eq!((three + five).value(), 1);
        assert_eq!((three - five).value(), 5);
        assert_eq!((three * five).value(), 1);
        assert_eq!((three / five).value(), 2);
        assert_eq!((-three).value(), 4);
        assert_eq!(F7::from_int(-1).value(), 6);
        assert_eq!(F7::from_bigint(&BigInt::from(-15)).value(), 6);
    }

    #[test]
    fn inverses_round_trip() {
        for v in 1..7 {
            let x = F7::new(v);
            assert_eq!(x * x.checked_inv().unwrap(), F7::one());
        }
        assert!(F7::zero().checked_inv().is_none());
        let x = Big::from_int(-123_456);
        assert_eq!(x * x.checked_inv().unwrap(), Big::one());
    }

    #[test]
    fn primality() {
        let primes = [2u64, 3, 5, 7, 97, 1_000_000_007, 998_244_353, 18_446_744_073_709_551_557];
        let composites = [0u64, 1, 4, 9, 10, 561, 1_000_000_008, 3_215_031_751, 18_446_744_073_709_551_615];
        assert!(primes.iter().all(|&p| is_prime(p)));
        assert!(composites.iter().all(|&c| !is_prime(c)));
        let sieve: Vec<u64> = (0..200).filter(|&n| is_prime(n)).collect();
        let trial: Vec<u64> = (0..200u64)
            .filter(|&n| n >= 2 && (2..n).all(|d| n % d != 0))
            .collect();
        assert_eq!(sieve, trial);
    }

    #[test]
    fn dynamic_modulus_rejects_composites() {
        assert_eq!(DynamicModulus::set(10), Err(Error::CompositeModulus(10)));
    }
}
