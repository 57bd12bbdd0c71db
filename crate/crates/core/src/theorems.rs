//! Finite sums of Horadam terms with closed forms, evaluated three ways: by
//! direct summation, from the closed form, and through the lemma engine with
//! the recurrence configuration each sum is built on.
//!
//! Two configurations cover everything. Writing `d = r − s`:
//!
//! * shape A, `h = u_d`, `f1 = u_A`, `f2 = −q^d·u_B`, `X = Y = w`,
//!   `c = B`, `d' = A`, where `(A, B) = (m − s, m − r)` for variants 1–3
//!   and `(m + r, m + s)` for variants 4–6 (theorems 2, 4, 6);
//! * shape B, `h = w_P`, `f1 = q^d·w_Q`, `f2 = u_d`, `X = u`,
//!   `Y_i = w_{i+Q}`, `c = d`, `d' = 0`, where `(P, Q) = (m + r, m + s)`
//!   for variant 1 and `(m − s, m − r)` for variant 2 (theorems 3, 5).

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{binomial_scalar, pow_int, sign};
use crate::lemma::{
    lemma1_sum, lemma2_sums, lemma3_binomial_sums, lemma45_reciprocal, LemmaId, LemmaReport,
    Reciprocal, RecurrenceConfig,
};
use crate::scalar::Scalar;
use crate::sequences::{HoradamParams, Sequence, SequenceKind};

/// Which sum: theorem 2–6, its variant, and which sequence plays `w`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct TheoremSelector {
    theorem: u8,
    variant: u8,
    kind: SequenceKind,
}

impl TheoremSelector {
    pub const THEOREMS: [u8; 5] = [2, 3, 4, 5, 6];

    pub fn new(theorem: u8, variant: u8, kind: SequenceKind) -> Result<Self> {
        match Self::variant_count(theorem) {
            Some(count) if (1..=count).contains(&variant) => Ok(TheoremSelector {
                theorem,
                variant,
                kind,
            }),
            _ => Err(Error::InvalidSelector { theorem, variant }),
        }
    }

    pub fn variant_count(theorem: u8) -> Option<u8> {
        match theorem {
            2 | 4 | 6 => Some(6),
            3 | 5 => Some(2),
            _ => None,
        }
    }

    /// Every selector, theorem-major.
    pub fn all() -> Vec<TheoremSelector> {
        let mut out = Vec::new();
        for theorem in Self::THEOREMS {
            for variant in 1..=Self::variant_count(theorem).unwrap() {
                for kind in SequenceKind::ALL {
                    out.push(TheoremSelector { theorem, variant, kind });
                }
            }
        }
        out
    }

    pub fn theorem(&self) -> u8 {
        self.theorem
    }

    pub fn variant(&self) -> u8 {
        self.variant
    }

    pub fn kind(&self) -> SequenceKind {
        self.kind
    }

    pub fn with_kind(self, kind: SequenceKind) -> Self {
        TheoremSelector { kind, ..self }
    }

    pub fn is_reciprocal(&self) -> bool {
        matches!(self.theorem, 5 | 6)
    }

    /// Position within the family of three for theorems 2, 4 and 6.
    fn family_variant(&self) -> u8 {
        (self.variant - 1) % 3 + 1
    }
}

impl fmt::Display for TheoremSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "theorem {}.{} ({})", self.theorem, self.variant, self.kind)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize)]
pub struct SumAssignment {
    pub n: i64,
    pub m: i64,
    pub r: i64,
    pub s: i64,
    pub k: i64,
}

impl SumAssignment {
    pub fn new(n: i64, m: i64, r: i64, s: i64, k: i64) -> Self {
        SumAssignment { n, m, r, s, k }
    }

    /// The substitution `r → −s, s → −r`.
    pub fn swapped(&self) -> Self {
        SumAssignment {
            r: -self.s,
            s: -self.r,
            ..*self
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct SumReport<T> {
    pub selector: TheoremSelector,
    pub assignment: SumAssignment,
    pub params: HoradamParams<T>,
    /// The displayed sum, term by term.
    pub direct: T,
    pub closed_form: T,
    /// The lemma-engine sum, rescaled to the displayed sum.
    pub lemma: T,
    pub lemma_id: LemmaId,
    pub equal: bool,
    /// `k = 0` for theorem 2, which is stated for positive `k`.
    pub outside_hypothesis: bool,
}

/// One denominator factor of a reciprocal sum.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct ScanEntry {
    /// First summand the factor appears in.
    pub j: i64,
    pub index: i64,
    pub zero: bool,
}

struct Terms<T> {
    u: Sequence<T>,
    w: Sequence<T>,
    q: T,
}

impl<T: Scalar> Terms<T> {
    fn new(params: &HoradamParams<T>, kind: SequenceKind) -> Self {
        Terms {
            u: Sequence::cached(params, SequenceKind::U),
            w: Sequence::cached(params, kind),
            q: params.q().clone(),
        }
    }

    fn u(&self, i: i64) -> T {
        self.u.get(i)
    }

    fn w(&self, i: i64) -> T {
        self.w.get(i)
    }

    fn qp(&self, e: i64) -> T {
        pow_int(&self.q, e).expect("q is nonzero")
    }
}

fn pw<T: Scalar>(x: &T, e: i64) -> T {
    pow_int(x, e).expect("nonnegative exponent")
}

fn sum<T: Scalar>(k: i64, term: impl Fn(i64) -> Result<T>) -> Result<T> {
    (0..=k).try_fold(T::zero(), |acc, j| Ok(acc + term(j)?))
}

/// `(A, B)` for shape A, `(P, Q)` for shape B.
fn pair(sel: &TheoremSelector, a: &SumAssignment) -> (i64, i64) {
    let SumAssignment { m, r, s, .. } = *a;
    match sel.theorem {
        2 | 4 | 6 if sel.variant <= 3 => (m - s, m - r),
        2 | 4 | 6 => (m + r, m + s),
        _ if sel.variant == 1 => (m + r, m + s),
        _ => (m - s, m - r),
    }
}

fn pair_names(sel: &TheoremSelector) -> (&'static str, &'static str) {
    match sel.theorem {
        2 | 4 | 6 if sel.variant <= 3 => ("m−s", "m−r"),
        2 | 4 | 6 => ("m+r", "m+s"),
        _ if sel.variant == 1 => ("m+r", "m+s"),
        _ => ("m−s", "m−r"),
    }
}

/// The lemma configuration with every coefficient required nonzero.
fn config<T: Scalar>(
    sel: &TheoremSelector,
    a: &SumAssignment,
    t: &Terms<T>,
) -> Result<RecurrenceConfig<T>> {
    let d = a.r - a.s;
    let (x, y) = pair(sel, a);
    let (xn, yn) = pair_names(sel);
    let w = sel.kind;
    let (h, f1, f2, c, dd, names) = if matches!(sel.theorem, 3 | 5) {
        (
            t.w(x),
            t.qp(d) * t.w(y),
            t.u(d),
            d,
            0,
            [format!("{w}_{{{xn}}}"), format!("{w}_{{{yn}}}"), "u_{r−s}".to_string()],
        )
    } else {
        (
            t.u(d),
            t.u(x),
            -(t.qp(d) * t.u(y)),
            y,
            x,
            ["u_{r−s}".to_string(), format!("u_{{{xn}}}"), format!("u_{{{yn}}}")],
        )
    };
    for (value, name) in [&h, &f1, &f2].into_iter().zip(names) {
        if value.is_zero() {
            return Err(Error::GuardViolation { quantity: name });
        }
    }
    RecurrenceConfig::new(h, f1, f2, c, dd)
}

/// Denominator sequence and stride of a reciprocal sum.
fn reciprocal_layout(sel: &TheoremSelector, a: &SumAssignment) -> Option<(bool, i64)> {
    let d = a.r - a.s;
    let (x, y) = pair(sel, a);
    match (sel.theorem, sel.family_variant()) {
        (5, _) => Some((true, d)),
        (6, 1) => Some((false, y)),
        (6, 2) => Some((false, x)),
        (6, _) => Some((false, d)),
        _ => None,
    }
}

/// Every distinct denominator index the selected sum touches, in summation
/// order, with whether the term there vanishes. Sums without denominators
/// give an empty list.
pub fn singularity_scan<T: Scalar>(
    sel: &TheoremSelector,
    params: &HoradamParams<T>,
    a: &SumAssignment,
) -> Vec<ScanEntry> {
    let Some((over_u, stride)) = reciprocal_layout(sel, a) else {
        return Vec::new();
    };
    let seq = Sequence::cached(params, if over_u { SequenceKind::U } else { sel.kind });
    let mut out: Vec<ScanEntry> = Vec::new();
    for j in 0..=a.k {
        let base = a.n - stride * a.k + stride * j;
        for index in [base, base - stride] {
            if out.iter().all(|e| e.index != index) {
                out.push(ScanEntry {
                    j,
                    index,
                    zero: seq.get(index).is_zero(),
                });
            }
        }
    }
    out
}

fn check_scan<T: Scalar>(sel: &TheoremSelector, params: &HoradamParams<T>, a: &SumAssignment) -> Result<()> {
    match singularity_scan(sel, params, a).into_iter().find(|e| e.zero) {
        Some(e) => Err(Error::SingularSummand { j: e.j, index: e.index }),
        None => Ok(()),
    }
}

fn inv<T: Scalar>(x: T, j: i64, index: i64) -> Result<T> {
    x.checked_inv().ok_or(Error::SingularSummand { j, index })
}

/// Direct sum and closed form.
fn direct<T: Scalar>(sel: &TheoremSelector, a: &SumAssignment, t: &Terms<T>) -> Result<(T, T)> {
    let SumAssignment { n, k, .. } = *a;
    let d = a.r - a.s;
    let (x, y) = pair(sel, a);
    let u = |i| t.u(i);
    let w = |i| t.w(i);
    let q = |e| t.qp(e);
    let c = |j| binomial_scalar::<T>(k, j);
    Ok(match (sel.theorem, sel.family_variant()) {
        (2, 1) => (
            sum(k, |j| Ok(sign::<T>(j) * q(d * (k - j)) * c(j)? * pw(&u(x), j) * pw(&u(y), k - j) * w(n - x * k + d * j)))?,
            sign::<T>(k) * pw(&u(d), k) * w(n),
        ),
        (2, 2) => (
            sum(k, |j| Ok(q(-d * j) * c(j)? * pw(&u(d), j) * pw(&u(y), k - j) * w(n - d * k + x * j)))?,
            q(-d * k) * pw(&u(x), k) * w(n),
        ),
        (2, _) => (
            sum(k, |j| Ok(sign::<T>(j) * c(j)? * pw(&u(d), j) * pw(&u(x), k - j) * w(n + d * k + y * j)))?,
            q(d * k) * pw(&u(y), k) * w(n),
        ),
        (3, _) => (
            u(d) * sum(k, |j| Ok(q(-d * j) * pw(&w(y), k - j) * pw(&w(x), j) * w(n - d * k + y + d * j)))?,
            q(-d * k) * u(n) * pw(&w(x), k + 1) - q(d) * u(n - d * (k + 1)) * pw(&w(y), k + 1),
        ),
        (4, 1) => (
            -(q(d) * u(y)) * sum(k, |j| Ok(pw(&u(x), k - j) * pw(&u(d), j) * w(n - y * k - x + y * j)))?,
            pw(&u(d), k + 1) * w(n) - pw(&u(x), k + 1) * w(n - y * (k + 1)),
        ),
        (4, 2) => (
            sign::<T>(k)
                * u(x)
                * sum(k, |j| Ok(sign::<T>(j) * q(d * (k - j)) * pw(&u(y), k - j) * pw(&u(d), j) * w(n - x * k - y + x * j)))?,
            pw(&u(d), k + 1) * w(n) + sign::<T>(k) * q(d * (k + 1)) * pw(&u(y), k + 1) * w(n - x * (k + 1)),
        ),
        (4, _) => (
            u(d) * sum(k, |j| Ok(q(-d * j) * pw(&u(y), k - j) * pw(&u(x), j) * w(n - d * k + y + d * j)))?,
            q(-d * k) * pw(&u(x), k + 1) * w(n) - q(d) * pw(&u(y), k + 1) * w(n - d * (k + 1)),
        ),
        (5, _) => (
            u(n) * u(n - d * (k + 1)) * u(d)
                * sum(k, |j| {
                    let (i1, i2) = (n - d * k + d * j, n - d - d * k + d * j);
                    Ok(q(d * j) * pw(&w(x), k - j) * pw(&w(y), j) * w(n + y - d * k + d * j)
                        * inv(u(i1), j, i1)? * inv(u(i2), j, i2)?)
                })?,
            u(n) * pw(&w(x), k + 1) - q(d * (k + 1)) * u(n - d * (k + 1)) * pw(&w(y), k + 1),
        ),
        (6, v) => {
            let stride = match v {
                1 => y,
                2 => x,
                _ => d,
            };
            let over = |j: i64| -> Result<T> {
                let (i1, i2) = (n - stride * k + stride * j, n - stride - stride * k + stride * j);
                Ok(inv(w(i1), j, i1)? * inv(w(i2), j, i2)?)
            };
            let outer = w(n) * w(n - stride * (k + 1));
            match v {
                1 => (
                    -(q(d) * u(y)) * outer
                        * sum(k, |j| Ok(pw(&u(d), k - j) * pw(&u(x), j) * w(n - x - y * k + y * j) * over(j)?))?,
                    pw(&u(d), k + 1) * w(n) - pw(&u(x), k + 1) * w(n - y * (k + 1)),
                ),
                2 => (
                    u(x) * outer
                        * sum(k, |j| {
                            Ok(sign::<T>(j) * q(d * j) * pw(&u(d), k - j) * pw(&u(y), j) * w(n - y - x * k + x * j) * over(j)?)
                        })?,
                    pw(&u(d), k + 1) * w(n) + sign::<T>(k) * q(d * (k + 1)) * pw(&u(y), k + 1) * w(n - x * (k + 1)),
                ),
                _ => (
                    u(d) * outer
                        * sum(k, |j| Ok(q(d * j) * pw(&u(x), k - j) * pw(&u(y), j) * w(n + y - d * k + d * j) * over(j)?))?,
                    pw(&u(x), k + 1) * w(n) - q(d * (k + 1)) * pw(&u(y), k + 1) * w(n - d * (k + 1)),
                ),
            }
        }
        _ => unreachable!("selector validated on construction"),
    })
}

/// The lemma-engine value, rescaled to the displayed sum.
fn via_lemma<T: Scalar>(
    sel: &TheoremSelector,
    a: &SumAssignment,
    cfg: &RecurrenceConfig<T>,
    t: &Terms<T>,
) -> Result<(T, LemmaId)> {
    let SumAssignment { n, k, .. } = *a;
    let d = a.r - a.s;
    let (_, y_shift) = pair(sel, a);
    let x = |i| t.w(i);
    let lucas_u = |i| t.u(i);
    let shifted_w = |i: i64| t.w(i + y_shift);
    let twisted = sign::<T>(k) * t.qp(-d * k);
    let (report, scale): (LemmaReport<T>, T) = match (sel.theorem, sel.family_variant()) {
        (2, v) => (
            lemma3_binomial_sums(cfg, &x, n, k, v)?,
            match v {
                1 => sign::<T>(k),
                2 => twisted,
                _ => T::one(),
            },
        ),
        (3, _) => (lemma1_sum(cfg, &lucas_u, &shifted_w, n, k)?, t.qp(-d * k)),
        (4, v) => (lemma2_sums(cfg, &x, n, k, v)?, if v == 3 { twisted } else { T::one() }),
        (5, _) => (lemma45_reciprocal(cfg, &lucas_u, &shifted_w, n, k, Reciprocal::L4)?, T::one()),
        (6, v) => {
            let variant = match v {
                1 => Reciprocal::L5a,
                2 => Reciprocal::L5b,
                _ => Reciprocal::L5c,
            };
            (lemma45_reciprocal(cfg, &x, &x, n, k, variant)?, T::one())
        }
        _ => unreachable!("selector validated on construction"),
    };
    Ok((scale * report.lhs, report.lemma))
}

/// Evaluates any selected sum three ways. Guards are checked first
/// ([`Error::GuardViolation`]), then, for reciprocal sums, the denominators
/// ([`Error::SingularSummand`]).
pub fn theorem_sum<T: Scalar>(
    sel: &TheoremSelector,
    params: &HoradamParams<T>,
    a: &SumAssignment,
) -> Result<SumReport<T>> {
    if a.k < 0 {
        return Err(Error::NegativeSumBound(a.k));
    }
    let cfg = config(sel, a, &Terms::new(params, sel.kind))?;
    check_scan(sel, params, a)?;
    let (direct, closed_form) = direct(sel, a, &Terms::new(params, sel.kind))?;
    let (lemma, lemma_id) = via_lemma(sel, a, &cfg, &Terms::new(params, sel.kind))?;
    let equal = direct == closed_form && direct == lemma;
    Ok(SumReport {
        selector: *sel,
        assignment: *a,
        params: params.clone(),
        direct,
        closed_form,
        lemma,
        lemma_id,
        equal,
        outside_hypothesis: sel.theorem == 2 && a.k == 0,
    })
}

/// [`theorem_sum`] restricted to the reciprocal sums (theorems 5 and 6).
pub fn reciprocal_sum<T: Scalar>(
    sel: &TheoremSelector,
    params: &HoradamParams<T>,
    a: &SumAssignment,
) -> Result<SumReport<T>> {
    if !sel.is_reciprocal() {
        return Err(Error::InvalidSelector {
            theorem: sel.theorem,
            variant: sel.variant,
        });
    }
    theorem_sum(sel, params, a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::preset;
    use crate::Rational;
    use SequenceKind::{U, W};

    type Q = Rational;

    fn sel(t: u8, v: u8, kind: SequenceKind) -> TheoremSelector {
        TheoremSelector::new(t, v, kind).unwrap()
    }

    fn fib() -> HoradamParams<Q> {
        preset("fibonacci").unwrap()
    }

    #[test]
    fn selector_ranges() {
        assert!(TheoremSelector::new(2, 6, W).is_ok());
        assert!(TheoremSelector::new(3, 3, W).is_err());
        assert!(TheoremSelector::new(5, 0, W).is_err());
        assert_eq!(
            TheoremSelector::new(7, 1, U),
            Err(Error::InvalidSelector { theorem: 7, variant: 1 })
        );
        assert_eq!(TheoremSelector::all().len(), 22 * 3);
    }

    #[test]
    fn theorem2_k0_collapses_to_w_n() {
        let params = fib().with_initial(Q::from_int(3), Q::from_int(2));
        let report = theorem_sum(&sel(2, 1, W), &params, &SumAssignment::new(4, 2, 1, 0, 0)).unwrap();
        assert_eq!(report.direct, Q::from_int(12));
        assert!(report.equal);
        assert!(report.outside_hypothesis);
    }

    #[test]
    fn spec_examples() {
        let params = fib().with_initial(Q::from_int(3), Q::from_int(2));
        let r = theorem_sum(&sel(2, 1, W), &params, &SumAssignment::new(4, 2, 1, 0, 2)).unwrap();
        assert!(r.equal && !r.outside_hypothesis);
        let pell = preset::<Q>("pell").unwrap();
        assert!(theorem_sum(&sel(4, 3, U), &pell, &SumAssignment::new(5, 3, 2, 1, 2)).unwrap().equal);
        assert!(theorem_sum(&sel(3, 1, W), &params, &SumAssignment::new(6, 1, 2, 0, 3)).unwrap().equal);
        let r = reciprocal_sum(&sel(5, 1, U), &fib(), &SumAssignment::new(9, 2, 1, 0, 1)).unwrap();
        assert!(r.equal);
        assert_eq!(r.lemma_id, LemmaId::L4);
    }

    #[test]
    fn guards() {
        let params = fib();
        let err = theorem_sum(&sel(2, 1, W), &params, &SumAssignment::new(3, 2, 1, 1, 2)).unwrap_err();
        assert_eq!(err, Error::GuardViolation { quantity: "u_{r−s}".into() });
        let err = theorem_sum(&sel(4, 1, W), &params, &SumAssignment::new(3, 1, 1, 0, 2)).unwrap_err();
        assert_eq!(err, Error::GuardViolation { quantity: "u_{m−r}".into() });
        let err = theorem_sum(&sel(4, 1, W), &params, &SumAssignment::new(3, 2, 1, 2, 2)).unwrap_err();
        assert!(matches!(err, Error::GuardViolation { .. }));
        // w_{m+r} = u_0 under the u specialization
        let err = theorem_sum(&sel(3, 1, U), &params, &SumAssignment::new(3, 1, -1, -3, 2)).unwrap_err();
        assert_eq!(err, Error::GuardViolation { quantity: "u_{m+r}".into() });
        assert_eq!(
            theorem_sum(&sel(3, 1, W), &params, &SumAssignment::new(3, 1, 2, 0, -1)).unwrap_err(),
            Error::NegativeSumBound(-1)
        );
    }

    #[test]
    fn singular_reciprocal_sums() {
        // n − d·k = 0 puts u_0 in the first denominator
        let a = SumAssignment::new(2, 2, 1, 0, 2);
        let scan = singularity_scan(&sel(5, 1, U), &fib(), &a);
        assert_eq!(scan.iter().filter(|e| e.zero).count(), 1);
        assert!(scan.contains(&ScanEntry { j: 0, index: 0, zero: true }));
        assert_eq!(
            reciprocal_sum(&sel(5, 1, U), &fib(), &a).unwrap_err(),
            Error::SingularSummand { j: 0, index: 0 }
        );
        assert!(reciprocal_sum(&sel(2, 1, U), &fib(), &a).is_err());
    }

    #[test]
    fn scan_lists_distinct_indices() {
        let params = fib().with_initial(Q::from_int(3), Q::from_int(2));
        // theorem 6.3 strides by d = 1 over w_{n−k+j}, w_{n−k+j−1}: n=6,k=4 covers 1..6
        let scan = singularity_scan(&sel(6, 3, W), &params, &SumAssignment::new(6, 3, 1, 0, 4));
        let mut idx: Vec<i64> = scan.iter().map(|e| e.index).collect();
        idx.sort();
        assert_eq!(idx, vec![1, 2, 3, 4, 5, 6]);
        assert!(scan.iter().all(|e| !e.zero));
        assert!(singularity_scan(&sel(2, 1, W), &params, &SumAssignment::new(6, 3, 1, 0, 4)).is_empty());
    }

    #[test]
    fn every_variant_agrees_on_a_fixed_assignment() {
        let params = HoradamParams::<Q>::new(Q::from_ratio(2, 3), Q::from_int(-5), Q::from_ratio(7, 4), Q::from_ratio(-1, 6)).unwrap();
        let a = SumAssignment::new(3, 5, 2, -1, 3);
        for s in TheoremSelector::all() {
            match theorem_sum(&s, &params, &a) {
                Ok(report) => assert!(report.equal, "{s}: {report:?}"),
                Err(Error::SingularSummand { .. }) if s.is_reciprocal() => {}
                Err(e) => panic!("{s}: {e}"),
            }
        }
    }
}
