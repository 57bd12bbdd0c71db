//! Telescoping summation identities for any pair of sequences tied together by
//! a three-term recurrence `h·X_n = f1·X_{n−c} + f2·Y_{n−d}`.
//!
//! Every entry point evaluates both the sum and its closed form from raw
//! accessor queries, after probing the recurrence over the index window the
//! sum touches.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{binomial_scalar, pow_unsigned, sign};
use crate::scalar::Scalar;
use crate::sequences::SequenceAccessor;

/// Coefficients of `h·X_n = f1·X_{n−c} + f2·Y_{n−d}`; all three nonzero.
#[derive(Clone, PartialEq, Debug)]
pub struct RecurrenceConfig<T> {
    h: T,
    f1: T,
    f2: T,
    c: i64,
    d: i64,
}

impl<T: Scalar> RecurrenceConfig<T> {
    pub fn new(h: T, f1: T, f2: T, c: i64, d: i64) -> Result<Self> {
        for (name, value) in [("h", &h), ("f1", &f1), ("f2", &f2)] {
            if value.is_zero() {
                return Err(Error::VanishingCoefficient(name));
            }
        }
        Ok(RecurrenceConfig { h, f1, f2, c, d })
    }

    pub fn h(&self) -> &T {
        &self.h
    }

    pub fn f1(&self) -> &T {
        &self.f1
    }

    pub fn f2(&self) -> &T {
        &self.f2
    }

    pub fn c(&self) -> i64 {
        self.c
    }

    pub fn d(&self) -> i64 {
        self.d
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum LemmaId {
    /// Two sequences, linear weights.
    L1,
    /// One sequence; variant 1, 2 or 3.
    L2(u8),
    /// One sequence, binomial weights; variant 1, 2 or 3.
    L3(u8),
    /// Two sequences, reciprocal weights.
    L4,
    L5a,
    L5b,
    L5c,
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LemmaId::L1 => write!(f, "lemma1"),
            LemmaId::L2(v) => write!(f, "lemma2.{v}"),
            LemmaId::L3(v) => write!(f, "lemma3.{v}"),
            LemmaId::L4 => write!(f, "lemma4"),
            LemmaId::L5a => write!(f, "lemma5.a"),
            LemmaId::L5b => write!(f, "lemma5.b"),
            LemmaId::L5c => write!(f, "lemma5.c"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Reciprocal {
    L4,
    L5a,
    L5b,
    L5c,
}

#[derive(Clone, PartialEq, Debug)]
pub struct LemmaReport<T> {
    pub lemma: LemmaId,
    pub n: i64,
    pub k: i64,
    pub c: i64,
    pub d: i64,
    pub lhs: T,
    pub rhs: T,
    pub equal: bool,
}

impl<T: Scalar> LemmaReport<T> {
    fn new(lemma: LemmaId, cfg: &RecurrenceConfig<T>, n: i64, k: i64, lhs: T, rhs: T) -> Self {
        let equal = (lhs.clone() - rhs.clone()).is_zero();
        LemmaReport {
            lemma,
            n,
            k,
            c: cfg.c,
            d: cfg.d,
            lhs,
            rhs,
            equal,
        }
    }
}

/// True iff `h·X_i = f1·X_{i−c} + f2·Y_{i−d}` for every `i` in `lo..=hi`.
pub fn check_config<T: Scalar>(
    cfg: &RecurrenceConfig<T>,
    x: &impl SequenceAccessor<T>,
    y: &impl SequenceAccessor<T>,
    window: (i64, i64),
) -> bool {
    first_violation(cfg, x, y, window).is_none()
}

fn first_violation<T: Scalar>(
    cfg: &RecurrenceConfig<T>,
    x: &impl SequenceAccessor<T>,
    y: &impl SequenceAccessor<T>,
    (lo, hi): (i64, i64),
) -> Option<i64> {
    (lo..=hi).find(|&i| {
        let lhs = cfg.h.clone() * x.at(i);
        let rhs = cfg.f1.clone() * x.at(i - cfg.c) + cfg.f2.clone() * y.at(i - cfg.d);
        lhs != rhs
    })
}

fn probe<T: Scalar>(
    cfg: &RecurrenceConfig<T>,
    x: &impl SequenceAccessor<T>,
    y: &impl SequenceAccessor<T>,
    touched: impl IntoIterator<Item = i64>,
) -> Result<()> {
    let mut touched = touched.into_iter();
    let Some(first) = touched.next() else {
        return Ok(());
    };
    let (lo, hi) = touched.fold((first, first), |(lo, hi), i| (lo.min(i), hi.max(i)));
    match first_violation(cfg, x, y, (lo, hi)) {
        Some(index) => Err(Error::ConfigViolation { index }),
        None => Ok(()),
    }
}

fn check_k(k: i64) -> Result<()> {
    if k < 0 {
        Err(Error::NegativeSumBound(k))
    } else {
        Ok(())
    }
}

fn pw<T: Scalar>(x: &T, e: i64) -> T {
    debug_assert!(e >= 0);
    pow_unsigned(x.clone(), e as u64)
}

fn sum_over<T: Scalar>(k: i64, term: impl Fn(i64) -> Result<T>) -> Result<T> {
    (0..=k).try_fold(T::zero(), |acc, j| Ok(acc + term(j)?))
}

/// `f2·Σ_{j=0}^{k} f1^{k−j} h^j Y_{n−kc−d+cj} = h^{k+1} X_n − f1^{k+1} X_{n−(k+1)c}`.
pub fn lemma1_sum<T: Scalar>(
    cfg: &RecurrenceConfig<T>,
    x: &impl SequenceAccessor<T>,
    y: &impl SequenceAccessor<T>,
    n: i64,
    k: i64,
) -> Result<LemmaReport<T>> {
    check_k(k)?;
    let RecurrenceConfig { h, f1, f2, c, d } = cfg;
    let (c, d) = (*c, *d);
    probe(cfg, x, y, (0..=k).map(|j| n - k * c + c * j))?;
    let sum = sum_over(k, |j| Ok(pw(f1, k - j) * pw(h, j) * y.at(n - k * c - d + c * j)))?;
    let lhs = f2.clone() * sum;
    let rhs = pw(h, k + 1) * x.at(n) - pw(f1, k + 1) * x.at(n - (k + 1) * c);
    Ok(LemmaReport::new(LemmaId::L1, cfg, n, k, lhs, rhs))
}

/// The three linear sums for a single sequence `X = Y`.
///
/// 1. `f2·Σ f1^{k−j} h^j X_{n−kc−d+cj} = h^{k+1}X_n − f1^{k+1}X_{n−(k+1)c}`
/// 2. `f1·Σ f2^{k−j} h^j X_{n−kd−c+dj} = h^{k+1}X_n − f2^{k+1}X_{n−(k+1)d}`
/// 3. `h·Σ (−1)^j f2^{k−j} f1^j X_{n−(d−c)k+c+(d−c)j}
///    = (−1)^k f1^{k+1}X_n + f2^{k+1}X_{n−(d−c)(k+1)}`, requiring `d ≠ c`.
pub fn lemma2_sums<T: Scalar>(
    cfg: &RecurrenceConfig<T>,
    x: &impl SequenceAccessor<T>,
    n: i64,
    k: i64,
    variant: u8,
) -> Result<LemmaReport<T>> {
    check_k(k)?;
    let RecurrenceConfig { h, f1, f2, c, d } = cfg;
    let (c, d) = (*c, *d);
    let (lhs, rhs) = match variant {
        1 => {
            probe(cfg, x, x, (0..=k).map(|j| n - c * (k - j)))?;
            let sum = sum_over(k, |j| Ok(pw(f1, k - j) * pw(h, j) * x.at(n - k * c - d + c * j)))?;
            (
                f2.clone() * sum,
                pw(h, k + 1) * x.at(n) - pw(f1, k + 1) * x.at(n - (k + 1) * c),
            )
        }
        2 => {
            probe(cfg, x, x, (0..=k).map(|j| n - d * (k - j)))?;
            let sum = sum_over(k, |j| Ok(pw(f2, k - j) * pw(h, j) * x.at(n - k * d - c + d * j)))?;
            (
                f1.clone() * sum,
                pw(h, k + 1) * x.at(n) - pw(f2, k + 1) * x.at(n - (k + 1) * d),
            )
        }
        3 => {
            let s = d - c;
            if s == 0 {
                return Err(Error::ZeroStride);
            }
            probe(cfg, x, x, (0..=k).map(|j| n + c - s * (k - j)))?;
            let sum = sum_over(k, |j| {
                Ok(sign::<T>(j) * pw(f2, k - j) * pw(f1, j) * x.at(n - s * k + c + s * j))
            })?;
            (
                h.clone() * sum,
                sign::<T>(k) * pw(f1, k + 1) * x.at(n) + pw(f2, k + 1) * x.at(n - s * (k + 1)),
            )
        }
        _ => return Err(Error::InvalidSelector { theorem: 0, variant }),
    };
    Ok(LemmaReport::new(LemmaId::L2(variant), cfg, n, k, lhs, rhs))
}

/// The three binomial sums.
///
/// 1. `Σ C(k,j) f2^{k−j} f1^j X_{n−dk+(d−c)j} = h^k X_n`
/// 2. `Σ (−1)^j C(k,j) f2^{k−j} h^j X_{n+(c−d)k+dj} = (−1)^k f1^k X_n`
/// 3. `Σ (−1)^j C(k,j) f1^{k−j} h^j X_{n+(d−c)k+cj} = (−1)^k f2^k X_n`
pub fn lemma3_binomial_sums<T: Scalar>(
    cfg: &RecurrenceConfig<T>,
    x: &impl SequenceAccessor<T>,
    n: i64,
    k: i64,
    variant: u8,
) -> Result<LemmaReport<T>> {
    check_k(k)?;
    let RecurrenceConfig { h, f1, f2, c, d } = cfg;
    let (c, d) = (*c, *d);
    // The expansion uses the recurrence at every lattice point reached by
    // a steps of c and b steps of d, a + b < k, from the anchor index.
    let anchor = match variant {
        1 => n,
        2 => n + c * k,
        3 => n + d * k,
        _ => return Err(Error::InvalidSelector { theorem: 0, variant }),
    };
    let lattice = (0..k).flat_map(move |a| (0..k - a).map(move |b| anchor - a * c - b * d));
    probe(cfg, x, x, lattice)?;
    let (lhs, rhs) = match variant {
        1 => (
            sum_over(k, |j| {
                Ok(binomial_scalar::<T>(k, j)? * pw(f2, k - j) * pw(f1, j) * x.at(n - d * k + (d - c) * j))
            })?,
            pw(h, k) * x.at(n),
        ),
        2 => (
            sum_over(k, |j| {
                Ok(sign::<T>(j)
                    * binomial_scalar::<T>(k, j)?
                    * pw(f2, k - j)
                    * pw(h, j)
                    * x.at(n + (c - d) * k + d * j))
            })?,
            sign::<T>(k) * pw(f1, k) * x.at(n),
        ),
        _ => (
            sum_over(k, |j| {
                Ok(sign::<T>(j)
                    * binomial_scalar::<T>(k, j)?
                    * pw(f1, k - j)
                    * pw(h, j)
                    * x.at(n + (d - c) * k + c * j))
            })?,
            sign::<T>(k) * pw(f2, k) * x.at(n),
        ),
    };
    Ok(LemmaReport::new(LemmaId::L3(variant), cfg, n, k, lhs, rhs))
}

/// Denominator indices of a reciprocal sum: for each `j`, the pair of
/// indices of the `X` factors below the summand's fraction bar.
pub fn reciprocal_denominators(
    c: i64,
    d: i64,
    n: i64,
    k: i64,
    variant: Reciprocal,
) -> Result<Vec<(i64, [i64; 2])>> {
    check_k(k)?;
    let stride = match variant {
        Reciprocal::L4 | Reciprocal::L5a => c,
        Reciprocal::L5b => d,
        Reciprocal::L5c => {
            if d == c {
                return Err(Error::ZeroStride);
            }
            d - c
        }
    };
    Ok((0..=k)
        .map(|j| {
            let base = n - stride * k + stride * j;
            (j, [base, base - stride])
        })
        .collect())
}

/// Reciprocal sums (`L4` uses `Y`; the `L5` variants read only `X`).
///
/// * `L4`:  `X_n X_{n−c(k+1)} f2 Σ h^{k−j} f1^j Y_{n−d−ck+cj} / (X_{n−ck+cj} X_{n−c−ck+cj})
///   = h^{k+1}X_n − f1^{k+1}X_{n−c(k+1)}`
/// * `L5a`: as `L4` with `Y = X`.
/// * `L5b`: `X_n X_{n−d(k+1)} f1 Σ h^{k−j} f2^j X_{n−c−dk+dj} / (X_{n−dk+dj} X_{n−d−dk+dj})
///   = h^{k+1}X_n − f2^{k+1}X_{n−d(k+1)}`
/// * `L5c`: with `s = d − c ≠ 0`,
///   `X_n X_{n−s(k+1)} h Σ (−1)^j f1^{k−j} f2^j X_{n+c−sk+sj} / (X_{n−sk+sj} X_{n−d+c−sk+sj})
///   = f1^{k+1}X_n + (−1)^k f2^{k+1}X_{n−s(k+1)}`
///
/// Every denominator factor is evaluated before any division; the first zero
/// is reported as [`Error::SingularSummand`].
pub fn lemma45_reciprocal<T: Scalar>(
    cfg: &RecurrenceConfig<T>,
    x: &impl SequenceAccessor<T>,
    y: &impl SequenceAccessor<T>,
    n: i64,
    k: i64,
    variant: Reciprocal,
) -> Result<LemmaReport<T>> {
    let dens = reciprocal_denominators(cfg.c, cfg.d, n, k, variant)?;
    let mut inverses = Vec::with_capacity(dens.len());
    for (j, [i1, i2]) in &dens {
        let mut inv_pair = T::one();
        for index in [*i1, *i2] {
            let inv = x.at(index).checked_inv().ok_or(Error::SingularSummand { j: *j, index })?;
            inv_pair = inv_pair * inv;
        }
        inverses.push(inv_pair);
    }

    let RecurrenceConfig { h, f1, f2, c, d } = cfg;
    let (c, d) = (*c, *d);
    let (id, lhs, rhs) = match variant {
        Reciprocal::L4 | Reciprocal::L5a => {
            let id = if variant == Reciprocal::L4 { LemmaId::L4 } else { LemmaId::L5a };
            let top = |i: i64| if variant == Reciprocal::L4 { y.at(i) } else { x.at(i) };
            if variant == Reciprocal::L4 {
                probe(cfg, x, y, (0..=k).map(|j| n - c * (k - j)))?;
            } else {
                probe(cfg, x, x, (0..=k).map(|j| n - c * (k - j)))?;
            }
            let sum = sum_over(k, |j| {
                Ok(pw(h, k - j) * pw(f1, j) * top(n - d - c * k + c * j) * inverses[j as usize].clone())
            })?;
            let outer = x.at(n) * x.at(n - c * (k + 1)) * f2.clone();
            (
                id,
                outer * sum,
                pw(h, k + 1) * x.at(n) - pw(f1, k + 1) * x.at(n - c * (k + 1)),
            )
        }
        Reciprocal::L5b => {
            probe(cfg, x, x, (0..=k).map(|j| n - d * (k - j)))?;
            let sum = sum_over(k, |j| {
                Ok(pw(h, k - j) * pw(f2, j) * x.at(n - c - d * k + d * j) * inverses[j as usize].clone())
            })?;
            let outer = x.at(n) * x.at(n - d * (k + 1)) * f1.clone();
            (
                LemmaId::L5b,
                outer * sum,
                pw(h, k + 1) * x.at(n) - pw(f2, k + 1) * x.at(n - d * (k + 1)),
            )
        }
        Reciprocal::L5c => {
            let s = d - c;
            probe(cfg, x, x, (0..=k).map(|j| n + c - s * (k - j)))?;
            let sum = sum_over(k, |j| {
                Ok(sign::<T>(j)
                    * pw(f1, k - j)
                    * pw(f2, j)
                    * x.at(n + c - s * k + s * j)
                    * inverses[j as usize].clone())
            })?;
            let outer = x.at(n) * x.at(n - s * (k + 1)) * h.clone();
            (
                LemmaId::L5c,
                outer * sum,
                pw(f1, k + 1) * x.at(n) + sign::<T>(k) * pw(f2, k + 1) * x.at(n - s * (k + 1)),
            )
        }
    };
    Ok(LemmaReport::new(id, cfg, n, k, lhs, rhs))
}
