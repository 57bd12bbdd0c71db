//! Elements `c0 + c1·√D` of a quadratic extension of an exact field.
//!
//! `D` is carried by every element; mixing elements of different extensions
//! is an error rather than a silent coercion.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Debug)]
pub struct QuadExt<T> {
    c0: T,
    c1: T,
    disc: T,
}

impl<T: Scalar> QuadExt<T> {
    pub fn new(c0: T, c1: T, disc: T) -> Self {
        QuadExt { c0, c1, disc }
    }

    pub fn from_base(c0: T, disc: T) -> Self {
        Self::new(c0, T::zero(), disc)
    }

    pub fn one(disc: T) -> Self {
        Self::from_base(T::one(), disc)
    }

    /// `√D` itself.
    pub fn sqrt_disc(disc: T) -> Self {
        Self::new(T::zero(), T::one(), disc)
    }

    pub fn c0(&self) -> &T {
        &self.c0
    }

    pub fn c1(&self) -> &T {
        &self.c1
    }

    pub fn disc(&self) -> &T {
        &self.disc
    }

    /// The base-field value, if the `√D` component vanishes.
    pub fn to_base(&self) -> Option<T> {
        self.c1.is_zero().then(|| self.c0.clone())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.disc == other.disc {
            Ok(())
        } else {
            Err(Error::DiscriminantMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::new(
            self.c0.clone() + other.c0.clone(),
            self.c1.clone() + other.c1.clone(),
            self.disc.clone(),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::new(
            self.c0.clone() - other.c0.clone(),
            self.c1.clone() - other.c1.clone(),
            self.disc.clone(),
        ))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let (x0, x1) = (self.c0.clone(), self.c1.clone());
        let (y0, y1) = (other.c0.clone(), other.c1.clone());
        Ok(Self::new(
            x0.clone() * y0.clone() + x1.clone() * y1.clone() * self.disc.clone(),
            x0 * y1 + x1 * y0,
            self.disc.clone(),
        ))
    }

    pub fn scale(&self, k: &T) -> Self {
        Self::new(
            self.c0.clone() * k.clone(),
            self.c1.clone() * k.clone(),
            self.disc.clone(),
        )
    }

    pub fn conj(&self) -> Self {
        Self::new(self.c0.clone(), -self.c1.clone(), self.disc.clone())
    }

    /// `c0² − c1²·D`.
    pub fn norm(&self) -> T {
        self.c0.square() - self.c1.square() * self.disc.clone()
    }

    pub fn inv(&self) -> Result<Self> {
        let norm_inv = self.norm().checked_inv().ok_or(Error::NonInvertible)?;
        Ok(self.conj().scale(&norm_inv))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut exp = e.unsigned_abs();
        let mut acc = Self::one(self.disc.clone());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }
}

impl<T: Scalar> fmt::Display for QuadExt<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}·√({})", self.c0, self.c1, self.disc)
    }
}
