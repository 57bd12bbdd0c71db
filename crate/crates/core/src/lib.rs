//! Exact arithmetic for Horadam sequences `w_n(a, b; p, q)` and the Lucas
//! sequences `u_n(p, q)`, `v_n(p, q)`, with machine-checked identity and
//! summation catalogs.
//!
//! Everything is generic over a [`Scalar`] field. Two realizations ship:
//! [`Rational`] (arbitrary precision, the default for verification) and
//! [`ModInt`] (a prime field, for timing the evaluation strategies).

pub mod catalog;
pub mod error;
pub mod exact;
pub mod lemma;
pub mod modint;
pub mod quad;
pub mod report;
pub mod scalar;
pub mod sequences;
pub mod theorems;

pub use error::{Error, Result};
pub use modint::{DynamicModulus, ModInt, Modulus, StaticModulus};
pub use quad::QuadExt;
pub use scalar::{parse_rational, Scalar};
pub use sequences::{HoradamParams, Sequence, SequenceAccessor, SequenceKind};

pub type Rational = num_rational::BigRational;

/// Integers modulo 10⁹ + 7.
pub type Mod1e9p7 = ModInt<StaticModulus<1_000_000_007>>;

/// Integers modulo the prime set with [`DynamicModulus::set`].
pub type ModP = ModInt<DynamicModulus>;

pub type RationalParams = HoradamParams<Rational>;
