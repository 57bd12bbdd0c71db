//! Horadam sequences `w_n(a, b; p, q)` and the two Lucas sequences `u`, `v`,
//! evaluated exactly at any integer index.

use std::cell::RefCell;
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::pow_int;
use crate::quad::QuadExt;
use crate::scalar::{parse_rational, Scalar};
use crate::Rational;

/// Parameters `(a, b, p, q)` of `w_0 = a, w_1 = b, w_n = p·w_{n−1} − q·w_{n−2}`.
#[derive(Clone, PartialEq, Debug)]
pub struct HoradamParams<T> {
    a: T,
    b: T,
    p: T,
    q: T,
}

impl<T: Scalar> HoradamParams<T> {
    pub fn new(a: T, b: T, p: T, q: T) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::InvalidParams("p must be nonzero"));
        }
        if q.is_zero() {
            return Err(Error::InvalidParams("q must be nonzero"));
        }
        Ok(HoradamParams { a, b, p, q })
    }

    /// Parameters with `(a, b) = (0, 1)`, i.e. `w = u`.
    pub fn lucas(p: T, q: T) -> Result<Self> {
        Self::new(T::zero(), T::one(), p, q)
    }

    pub fn from_ints(a: i64, b: i64, p: i64, q: i64) -> Result<Self> {
        Self::new(T::from_int(a), T::from_int(b), T::from_int(p), T::from_int(q))
    }

    pub fn a(&self) -> &T {
        &self.a
    }

    pub fn b(&self) -> &T {
        &self.b
    }

    pub fn p(&self) -> &T {
        &self.p
    }

    pub fn q(&self) -> &T {
        &self.q
    }

    /// `p² − 4q`.
    pub fn discriminant(&self) -> T {
        self.p.square() - T::from_int(4) * self.q.clone()
    }

    /// Same `(p, q)`, with the initial values of `kind`.
    pub fn specialize(&self, kind: SequenceKind) -> Self {
        let (a, b) = self.initial(kind);
        HoradamParams {
            a,
            b,
            p: self.p.clone(),
            q: self.q.clone(),
        }
    }

    pub fn with_initial(&self, a: T, b: T) -> Self {
        HoradamParams {
            a,
            b,
            p: self.p.clone(),
            q: self.q.clone(),
        }
    }

    /// `(w_0, w_1)` for the given kind.
    pub fn initial(&self, kind: SequenceKind) -> (T, T) {
        match kind {
            SequenceKind::U => (T::zero(), T::one()),
            SequenceKind::V => (T::from_int(2), self.p.clone()),
            SequenceKind::W => (self.a.clone(), self.b.clone()),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SequenceKind {
    /// Lucas sequence of the first kind, `w(0, 1; p, q)`.
    U,
    /// Lucas sequence of the second kind, `w(2, p; p, q)`.
    V,
    /// The general Horadam sequence `w(a, b; p, q)`.
    W,
}

impl SequenceKind {
    pub const ALL: [SequenceKind; 3] = [SequenceKind::U, SequenceKind::V, SequenceKind::W];

    pub fn parse(text: &str) -> Option<Self> {
        match text {
            "u" | "U" => Some(SequenceKind::U),
            "v" | "V" => Some(SequenceKind::V),
            "w" | "W" => Some(SequenceKind::W),
            _ => None,
        }
    }
}

impl fmt::Display for SequenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SequenceKind::U => "u",
            SequenceKind::V => "v",
            SequenceKind::W => "w",
        })
    }
}

/// `n`-th term by stepping the recurrence from `(w_0, w_1)`; negative indices
/// run it backwards, `w_{n−2} = (p·w_{n−1} − w_n)/q`.
pub fn term<T: Scalar>(params: &HoradamParams<T>, kind: SequenceKind, n: i64) -> T {
    let (w0, w1) = params.initial(kind);
    walk(params, w0, w1, n)
}

fn walk<T: Scalar>(params: &HoradamParams<T>, w0: T, w1: T, n: i64) -> T {
    let p = params.p.clone();
    let q = params.q.clone();
    if n >= 0 {
        let (mut prev, mut cur) = (w0, w1);
        if n == 0 {
            return prev;
        }
        for _ in 1..n {
            let next = p.clone() * cur.clone() - q.clone() * prev;
            prev = cur;
            cur = next;
        }
        cur
    } else {
        let q_inv = q.checked_inv().expect("q is nonzero by construction");
        // (hi, lo) = (w_{i+1}, w_i), stepping i downwards from 0
        let (mut hi, mut lo) = (w1, w0);
        for _ in 0..n.unsigned_abs() {
            let below = (p.clone() * lo.clone() - hi) * q_inv.clone();
            hi = lo;
            lo = below;
        }
        lo
    }
}

/// Terms `lo..=hi` in one pass.
pub fn term_range<T: Scalar>(
    params: &HoradamParams<T>,
    kind: SequenceKind,
    lo: i64,
    hi: i64,
) -> Result<Vec<T>> {
    if lo > hi {
        return Err(Error::EmptyRange { lo, hi });
    }
    let mut cache = TermCache::new(params.clone(), kind);
    cache.ensure(lo, hi);
    Ok((lo..=hi).map(|i| cache.get(i)).collect())
}

/// A contiguous window `[lo, hi]` of exact terms, grown on demand in either
/// direction. Every interior value satisfies the recurrence.
#[derive(Clone, Debug)]
pub struct TermCache<T> {
    params: HoradamParams<T>,
    kind: SequenceKind,
    q_inv: T,
    lo: i64,
    values: Vec<T>,
}

impl<T: Scalar> TermCache<T> {
    pub fn new(params: HoradamParams<T>, kind: SequenceKind) -> Self {
        let (w0, w1) = params.initial(kind);
        let q_inv = params.q.checked_inv().expect("q is nonzero by construction");
        TermCache {
            params,
            kind,
            q_inv,
            lo: 0,
            values: vec![w0, w1],
        }
    }

    pub fn kind(&self) -> SequenceKind {
        self.kind
    }

    /// Current window `[lo, hi]`.
    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.lo + self.values.len() as i64 - 1)
    }

    pub fn ensure(&mut self, lo: i64, hi: i64) {
        let (cur_lo, cur_hi) = self.window();
        if hi > cur_hi {
            let p = self.params.p.clone();
            let q = self.params.q.clone();
            self.values.reserve((hi - cur_hi) as usize);
            for _ in cur_hi..hi {
                let len = self.values.len();
                let next = p.clone() * self.values[len - 1].clone() - q.clone() * self.values[len - 2].clone();
                self.values.push(next);
            }
        }
        if lo < cur_lo {
            let p = self.params.p.clone();
            let count = (cur_lo - lo) as usize;
            let mut prefix = Vec::with_capacity(count);
            let (mut above, mut at) = (self.values[1].clone(), self.values[0].clone());
            for _ in 0..count {
                let below = (p.clone() * at.clone() - above) * self.q_inv.clone();
                above = at;
                at = below.clone();
                prefix.push(below);
            }
            prefix.reverse();
            prefix.append(&mut self.values);
            self.values = prefix;
            self.lo = lo;
        }
    }

    pub fn get(&mut self, n: i64) -> T {
        self.ensure(n, n);
        self.values[(n - self.lo) as usize].clone()
    }
}

/// Anything that can be indexed by an integer to give a field element.
pub trait SequenceAccessor<T> {
    fn at(&self, n: i64) -> T;
}

impl<T, F: Fn(i64) -> T> SequenceAccessor<T> for F {
    fn at(&self, n: i64) -> T {
        self(n)
    }
}

/// One of `u`, `v`, `w` over a fixed parameter set, optionally memoized.
///
/// The memo is a `RefCell`, so a cached `Sequence` is confined to one thread;
/// uncached sequences recompute every term from the initial values.
pub struct Sequence<T> {
    params: HoradamParams<T>,
    kind: SequenceKind,
    cache: Option<RefCell<TermCache<T>>>,
}

impl<T: Scalar> Sequence<T> {
    pub fn cached(params: &HoradamParams<T>, kind: SequenceKind) -> Self {
        Sequence {
            params: params.clone(),
            kind,
            cache: Some(RefCell::new(TermCache::new(params.clone(), kind))),
        }
    }

    pub fn direct(params: &HoradamParams<T>, kind: SequenceKind) -> Self {
        Sequence {
            params: params.clone(),
            kind,
            cache: None,
        }
    }

    pub fn new(params: &HoradamParams<T>, kind: SequenceKind, use_cache: bool) -> Self {
        if use_cache {
            Self::cached(params, kind)
        } else {
            Self::direct(params, kind)
        }
    }

    pub fn params(&self) -> &HoradamParams<T> {
        &self.params
    }

    pub fn kind(&self) -> SequenceKind {
        self.kind
    }

    pub fn get(&self, n: i64) -> T {
        match &self.cache {
            Some(cache) => cache.borrow_mut().get(n),
            None => term(&self.params, self.kind, n),
        }
    }
}

impl<T: Scalar> SequenceAccessor<T> for Sequence<T> {
    fn at(&self, n: i64) -> T {
        self.get(n)
    }
}

/// `(u_n, v_n)` in `O(log n)` field operations.
pub fn fast_uv<T: Scalar>(params: &HoradamParams<T>, n: u64) -> (T, T) {
    fast_uv_counted(params, n).0
}

/// As [`fast_uv`], also returning the number of doubling steps taken.
///
/// Carries `(u_k, u_{k+1})` down the bits of `n`:
/// `u_{2k} = u_k·(2u_{k+1} − p·u_k)` (that bracket is `v_k`) and
/// `u_{2k+1} = u_{k+1}² − q·u_k²`; no division is needed.
pub fn fast_uv_counted<T: Scalar>(params: &HoradamParams<T>, n: u64) -> ((T, T), u32) {
    let p = params.p.clone();
    let q = params.q.clone();
    let two = T::from_int(2);
    let (mut uk, mut uk1) = (T::zero(), T::one());
    let bits = u64::BITS - n.leading_zeros();
    for bit in (0..bits).rev() {
        let vk = two.clone() * uk1.clone() - p.clone() * uk.clone();
        let u2k = uk.clone() * vk;
        let u2k1 = uk1.square() - q.clone() * uk.square();
        if (n >> bit) & 1 == 1 {
            uk1 = p.clone() * u2k1.clone() - q.clone() * u2k;
            uk = u2k1;
        } else {
            uk = u2k;
            uk1 = u2k1;
        }
    }
    let vn = two * uk1 - p * uk.clone();
    ((uk, vn), bits)
}

/// Any term of any kind through the doubling path: negative indices by
/// reflection, `w` via `w_n = b·u_n − a·q·u_{n−1}`.
pub fn fast_term<T: Scalar>(params: &HoradamParams<T>, kind: SequenceKind, n: i64) -> T {
    let q = params.q.clone();
    let u_at = |i: i64| -> T {
        let (u, _) = fast_uv(params, i.unsigned_abs());
        if i >= 0 {
            u
        } else {
            -(u * pow_int(&q, i).expect("q is nonzero"))
        }
    };
    match kind {
        SequenceKind::U => u_at(n),
        SequenceKind::V => {
            let (_, v) = fast_uv(params, n.unsigned_abs());
            if n >= 0 {
                v
            } else {
                v * pow_int(&q, n).expect("q is nonzero")
            }
        }
        SequenceKind::W => params.b.clone() * u_at(n) - params.a.clone() * q.clone() * u_at(n - 1),
    }
}

/// The characteristic roots `α, β = (p ± √D)/2` in `F(√D)`.
pub fn roots<T: Scalar>(params: &HoradamParams<T>) -> Result<(QuadExt<T>, QuadExt<T>)> {
    let disc = params.discriminant();
    if disc.is_zero() {
        return Err(Error::DegenerateRoot);
    }
    let half = T::from_int(2).checked_inv().ok_or(Error::NonInvertible)?;
    let re = params.p.clone() * half.clone();
    let alpha = QuadExt::new(re.clone(), half.clone(), disc.clone());
    let beta = QuadExt::new(re, -half, disc);
    Ok((alpha, beta))
}

/// Binet-form evaluation in `F(√D)`; the `√D` component of the result must
/// vanish, and the base component is returned.
pub fn binet_term_ext<T: Scalar>(
    params: &HoradamParams<T>,
    kind: SequenceKind,
    n: i64,
) -> Result<QuadExt<T>> {
    let (alpha, beta) = roots(params)?;
    let diff = alpha.sub(&beta)?;
    // (α^i − β^i)/(α − β)
    let lucas_u = |i: i64| -> Result<QuadExt<T>> { alpha.pow(i)?.sub(&beta.pow(i)?)?.div(&diff) };
    match kind {
        SequenceKind::U => lucas_u(n),
        SequenceKind::V => alpha.pow(n)?.add(&beta.pow(n)?),
        SequenceKind::W => {
            let (a, b) = params.initial(kind);
            let alpha_beta = alpha.mul(&beta)?;
            let first = lucas_u(n)?.scale(&b);
            let second = alpha_beta.mul(&lucas_u(n - 1)?)?.scale(&a);
            first.sub(&second)
        }
    }
}

pub fn binet_term<T: Scalar>(params: &HoradamParams<T>, kind: SequenceKind, n: i64) -> Result<T> {
    let value = binet_term_ext(params, kind, n)?;
    Ok(value
        .to_base()
        .expect("Binet expressions are symmetric in the roots and lie in the base field"))
}

/// `w_{−n}` from `q^n·w_{−n} = a·v_n − w_n`.
pub fn reflect_w<T: Scalar>(params: &HoradamParams<T>, n: i64) -> T {
    let v = term(params, SequenceKind::V, n);
    let w = term(params, SequenceKind::W, n);
    let scale = pow_int(&params.q, -n).expect("q is nonzero");
    (params.a.clone() * v - w) * scale
}

pub const PRESET_NAMES: [&str; 3] = ["fibonacci", "lucas", "pell"];

/// Built-in parameter sets.
pub fn preset<T: Scalar>(name: &str) -> Option<HoradamParams<T>> {
    let (a, b, p, q) = match name {
        "fibonacci" => (0, 1, 1, -1),
        "lucas" => (2, 1, 1, -1),
        "pell" => (0, 1, 2, -1),
        _ => return None,
    };
    HoradamParams::from_ints(a, b, p, q).ok()
}

/// Parses a flat `key = value` preset document with keys `p`, `q`, `a`, `b`.
///
/// `p` and `q` are required; `a` and `b` default to `0` and `1`. Blank lines
/// and `#` comments are skipped.
pub fn parse_preset(text: &str) -> Result<HoradamParams<Rational>> {
    let mut fields: [Option<Rational>; 4] = Default::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad_line = || Error::ParseRational(format!("line {}: {}", lineno + 1, raw.trim()));
        let (key, value) = line.split_once('=').ok_or_else(bad_line)?;
        let slot = match key.trim() {
            "a" => 0,
            "b" => 1,
            "p" => 2,
            "q" => 3,
            _ => return Err(bad_line()),
        };
        if fields[slot].is_some() {
            return Err(bad_line());
        }
        fields[slot] = Some(parse_rational(value)?);
    }
    let [a, b, p, q] = fields;
    let p = p.ok_or(Error::InvalidParams("preset is missing p"))?;
    let q = q.ok_or(Error::InvalidParams("preset is missing q"))?;
    HoradamParams::new(
        a.unwrap_or_else(Rational::zero),
        b.unwrap_or_else(Rational::one),
        p,
        q,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modint::{ModInt, StaticModulus};

    type Q = Rational;

    fn fib() -> HoradamParams<Q> {
        preset("fibonacci").unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| Q::from_int(x)).collect()
    }

    /// Forward iteration from two seeds, kept separate from `term`.
    fn iterate(w0: i64, w1: i64, p: i64, q: i64, n: usize) -> Vec<i64> {
        let mut out = vec![w0, w1];
        while out.len() <= n {
            let len = out.len();
            out.push(p * out[len - 1] - q * out[len - 2]);
        }
        out.truncate(n + 1);
        out
    }

    #[test]
    fn rejects_zero_p_or_q() {
        assert!(HoradamParams::<Q>::from_ints(0, 1, 0, 1).is_err());
        assert!(HoradamParams::<Q>::from_ints(0, 1, 1, 0).is_err());
    }

    #[test]
    fn term_examples() {
        let oracle = iterate(0, 1, 1, -1, 10);
        assert_eq!(oracle[10], 55);
        assert_eq!(term(&fib(), SequenceKind::U, 10), Q::from_int(55));
        assert_eq!(term(&fib(), SequenceKind::V, 0), Q::from_int(2));
        // backward: u_{-1} = 1, u_{-2} = -1, u_{-3} = 2; and -u_3/q^3 = -2/(-1) = 2
        assert_eq!(term(&fib(), SequenceKind::U, -3), Q::from_int(2));
        let w = fib().with_initial(Q::from_int(3), Q::from_int(2));
        assert_eq!(iterate(3, 2, 1, -1, 4)[4], 12);
        assert_eq!(term(&w, SequenceKind::W, 4), Q::from_int(12));
    }

    #[test]
    fn range_examples() {
        assert_eq!(term_range(&fib(), SequenceKind::U, 0, 5).unwrap(), ints(&[0, 1, 1, 2, 3, 5]));
        assert_eq!(term_range(&fib(), SequenceKind::V, -2, 2).unwrap(), ints(&[3, -1, 2, 1, 3]));
        assert_eq!(term_range(&fib(), SequenceKind::U, 7, 7).unwrap(), vec![term(&fib(), SequenceKind::U, 7)]);
        assert_eq!(
            term_range(&fib(), SequenceKind::U, 3, 2),
            Err(Error::EmptyRange { lo: 3, hi: 2 })
        );
    }

    #[test]
    fn range_entirely_negative_or_positive() {
        let params = HoradamParams::<Q>::new(Q::from_ratio(1, 2), Q::from_int(3), Q::from_ratio(-3, 4), Q::from_ratio(5, 7)).unwrap();
        for kind in SequenceKind::ALL {
            for (lo, hi) in [(-9, -4), (3, 8), (-5, 5)] {
                let expected: Vec<Q> = (lo..=hi).map(|i| term(&params, kind, i)).collect();
                assert_eq!(term_range(&params, kind, lo, hi).unwrap(), expected);
            }
        }
    }

    #[test]
    fn fast_uv_examples() {
        let (u, v) = fast_uv(&fib(), 10);
        assert_eq!((u, v), (Q::from_int(55), Q::from_int(123)));
        let pell: HoradamParams<Q> = preset("pell").unwrap();
        let oracle_u = iterate(0, 1, 2, -1, 5)[5];
        let oracle_v = iterate(2, 2, 2, -1, 5)[5];
        assert_eq!((oracle_u, oracle_v), (29, 82));
        assert_eq!(fast_uv(&pell, 5), (Q::from_int(29), Q::from_int(82)));
        let odd = HoradamParams::<Q>::from_ints(0, 1, 3, 7).unwrap();
        assert_eq!(fast_uv(&odd, 0), (Q::zero(), Q::from_int(2)));
    }

    #[test]
    fn fast_uv_modular_matches_iteration() {
        type F = ModInt<StaticModulus<1_000_000_007>>;
        let params = HoradamParams::<F>::from_ints(0, 1, 1, -1).unwrap();
        for n in [0u64, 1, 2, 3, 17, 64, 1000, 4097] {
            let (u, v) = fast_uv(&params, n);
            assert_eq!(u, term(&params, SequenceKind::U, n as i64));
            assert_eq!(v, term(&params, SequenceKind::V, n as i64));
        }
    }

    #[test]
    fn fast_term_all_kinds() {
        let params = HoradamParams::<Q>::new(Q::from_int(3), Q::from_int(-2), Q::from_ratio(5, 3), Q::from_ratio(-2, 9)).unwrap();
        for kind in SequenceKind::ALL {
            for n in -12..=12 {
                assert_eq!(fast_term(&params, kind, n), term(&params, kind, n), "{kind} {n}");
            }
        }
    }

    #[test]
    fn binet_examples() {
        let u3 = binet_term_ext(&fib(), SequenceKind::U, 3).unwrap();
        assert_eq!(u3.c0(), &Q::from_int(2));
        assert!(u3.c1().is_zero());
        assert_eq!(binet_term(&fib(), SequenceKind::U, 0).unwrap(), Q::zero());
        let degenerate = HoradamParams::<Q>::from_ints(0, 1, 2, 1).unwrap();
        for kind in SequenceKind::ALL {
            assert_eq!(binet_term(&degenerate, kind, 5), Err(Error::DegenerateRoot));
        }
    }

    #[test]
    fn binet_with_negative_discriminant() {
        // p = 1, q = 1: D = -3, sequence has period 6
        let params = HoradamParams::<Q>::from_ints(4, -1, 1, 1).unwrap();
        for kind in SequenceKind::ALL {
            for n in -10..=10 {
                assert_eq!(binet_term(&params, kind, n).unwrap(), term(&params, kind, n));
            }
        }
    }

    #[test]
    fn reflection_examples() {
        let w = fib().with_initial(Q::from_int(3), Q::from_int(2));
        // w_{-1} = (p w_0 - w_1)/q = (3 - 2)/(-1) = -1, w_{-2} = (p w_{-1} - w_0)/q = (-1 - 3)/(-1) = 4
        assert_eq!(reflect_w(&w, 2), Q::from_int(4));
        assert_eq!(reflect_w(&w, 0), Q::from_int(3));
        let v = fib().specialize(SequenceKind::V);
        for n in 0..10 {
            let expected = term(&v, SequenceKind::V, n) / pow_int(v.q(), n).unwrap();
            assert_eq!(reflect_w(&v, n), expected);
        }
    }

    #[test]
    fn cached_and_direct_agree() {
        let params = HoradamParams::<Q>::new(Q::from_ratio(-1, 3), Q::from_int(2), Q::from_ratio(7, 2), Q::from_ratio(3, 5)).unwrap();
        for kind in SequenceKind::ALL {
            let cached = Sequence::cached(&params, kind);
            let direct = Sequence::direct(&params, kind);
            for n in [5, -7, 0, 12, -12, 3, 1, -1] {
                assert_eq!(cached.get(n), direct.get(n));
            }
        }
    }

    #[test]
    fn cache_window_satisfies_recurrence() {
        let mut cache = TermCache::new(fib().with_initial(Q::from_int(3), Q::from_int(2)), SequenceKind::W);
        cache.ensure(-6, 9);
        assert_eq!(cache.window(), (-6, 9));
        for n in -4..=9 {
            let (p, q) = (fib().p().clone(), fib().q().clone());
            assert_eq!(cache.get(n), p * cache.get(n - 1) - q * cache.get(n - 2));
        }
    }

    #[test]
    fn presets_and_files() {
        let lucas: HoradamParams<Q> = preset("lucas").unwrap();
        assert_eq!(term(&lucas, SequenceKind::W, 5), Q::from_int(11));
        assert!(preset::<Q>("tribonacci").is_none());
        let parsed = parse_preset("# golden\np = 1\nq=-1\n\na = 3 # seed\nb = 2/1\n").unwrap();
        assert_eq!(parsed, fib().with_initial(Q::from_int(3), Q::from_int(2)));
        assert!(parse_preset("p = 1").is_err());
        assert!(parse_preset("p = 1\nq = 0").is_err());
        assert!(parse_preset("p = 1\nq = 1/0").is_err());
        assert!(parse_preset("p = 1\nq = 2\nz = 3").is_err());
        assert!(parse_preset("p = 1\np = 2\nq = 1").is_err());
    }
}
