//! Registry of the closed-form identities relating `u`, `v` and `w`, with
//! exact two-sided evaluation and a seeded fuzzer.
//!
//! Each side of an identity is an independent expression over term lookups;
//! nothing is simplified symbolically, so a passing check means two unrelated
//! computations produced the same field element.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::pow_int;
use crate::scalar::Scalar;
use crate::sequences::{HoradamParams, Sequence, SequenceKind};

/// A free integer variable of an identity.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    N,
    M,
    R,
    S,
    T,
    J,
}

impl Var {
    pub const ALL: [Var; 6] = [Var::N, Var::M, Var::R, Var::S, Var::T, Var::J];

    pub fn name(self) -> &'static str {
        match self {
            Var::N => "n",
            Var::M => "m",
            Var::R => "r",
            Var::S => "s",
            Var::T => "t",
            Var::J => "j",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Var {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Var::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::Assignment(format!("unknown variable `{s}`")))
    }
}

/// Values for some of the variables `n, m, r, s, t, j`.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize)]
#[serde(transparent)]
pub struct Assignment(BTreeMap<Var, i64>);

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, var: Var, value: i64) -> Self {
        self.0.insert(var, value);
        self
    }

    pub fn get(&self, var: Var) -> Option<i64> {
        self.0.get(&var).copied()
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.0.keys().copied()
    }

    /// Keeps only `vars`, reading values from `full`.
    pub fn project(full: &Indices, vars: &[Var]) -> Self {
        Assignment(vars.iter().map(|&v| (v, full.get(v))).collect())
    }

    /// `n=1,m=3,r=2,s=0`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut out = Assignment::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Assignment(format!("expected var=value, got `{part}`")))?;
            let var: Var = key.trim().parse()?;
            let value: i64 = value
                .trim()
                .parse()
                .map_err(|_| Error::Assignment(format!("`{}` is not an integer", value.trim())))?;
            if out.0.insert(var, value).is_some() {
                return Err(Error::Assignment(format!("`{var}` assigned twice")));
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (var, value) in &self.0 {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            write!(f, "{var}={value}")?;
        }
        Ok(())
    }
}

/// Fully resolved indices; variables an identity does not use are zero.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Indices {
    pub n: i64,
    pub m: i64,
    pub r: i64,
    pub s: i64,
    pub t: i64,
    pub j: i64,
}

impl Indices {
    pub fn get(&self, var: Var) -> i64 {
        match var {
            Var::N => self.n,
            Var::M => self.m,
            Var::R => self.r,
            Var::S => self.s,
            Var::T => self.t,
            Var::J => self.j,
        }
    }

    fn from_assignment(asg: &Assignment) -> Self {
        let v = |var| asg.get(var).unwrap_or(0);
        Indices {
            n: v(Var::N),
            m: v(Var::M),
            r: v(Var::R),
            s: v(Var::S),
            t: v(Var::T),
            j: v(Var::J),
        }
    }
}

/// Term lookups for one side of one evaluation.
pub struct Ctx<T> {
    params: HoradamParams<T>,
    u: Sequence<T>,
    v: Sequence<T>,
    w: Sequence<T>,
}

impl<T: Scalar> Ctx<T> {
    pub fn new(params: &HoradamParams<T>, use_cache: bool) -> Self {
        Ctx {
            params: params.clone(),
            u: Sequence::new(params, SequenceKind::U, use_cache),
            v: Sequence::new(params, SequenceKind::V, use_cache),
            w: Sequence::new(params, SequenceKind::W, use_cache),
        }
    }

    pub fn u(&self, i: i64) -> T {
        self.u.get(i)
    }

    pub fn v(&self, i: i64) -> T {
        self.v.get(i)
    }

    pub fn w(&self, i: i64) -> T {
        self.w.get(i)
    }

    pub fn p(&self) -> T {
        self.params.p().clone()
    }

    pub fn q(&self) -> T {
        self.params.q().clone()
    }

    pub fn a(&self) -> T {
        self.params.a().clone()
    }

    pub fn b(&self) -> T {
        self.params.b().clone()
    }

    /// `q^e`, any sign of `e`.
    pub fn qp(&self, e: i64) -> T {
        pow_int(self.params.q(), e).expect("q is nonzero")
    }

    pub fn int(&self, value: i64) -> T {
        T::from_int(value)
    }
}

pub type Side<T> = fn(&Ctx<T>, &Indices) -> T;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Group {
    /// Consequences of the Binet forms: linear form, doubling, reflections.
    Basic,
    /// Products of two Lucas terms.
    Multiplication,
    /// The four-index master identity and its three rearrangements.
    Master,
    /// The master identities with `w` specialized to `u` or `v`.
    Specialization,
    /// Consequences for general `w`.
    HoradamCorollary,
    /// Consequences for the Lucas sequences.
    LucasCorollary,
}

/// How an identity follows from another registered one.
#[derive(Clone, Copy, Debug)]
pub struct Derivation {
    /// Identity the substitution is applied to.
    pub source: &'static str,
    /// Index substitution taking this identity's indices to the source's.
    pub map: fn(&Indices) -> Indices,
    /// `Some(kind)` evaluates the source with `w` replaced by `u` or `v`.
    pub kind: Option<SequenceKind>,
    /// Both sides coincide value-for-value with the source's sides; otherwise
    /// only the source's validity at the substituted indices is implied.
    pub exact: bool,
}

pub struct Identity<T> {
    pub id: &'static str,
    pub group: Group,
    pub vars: &'static [Var],
    /// The identity written out, `lhs = rhs`.
    pub formula: &'static str,
    /// Derivation remark as originally stated, if any.
    pub note: Option<&'static str>,
    pub derivation: Option<Derivation>,
    pub lhs: Side<T>,
    pub rhs: Side<T>,
}

impl<T> Identity<T> {
    pub fn signature(&self) -> String {
        let names: Vec<&str> = self.vars.iter().map(|v| v.name()).collect();
        format!("({})", names.join(", "))
    }
}

impl<T> Clone for Identity<T> {
    fn clone(&self) -> Self {
        Identity {
            id: self.id,
            group: self.group,
            vars: self.vars,
            formula: self.formula,
            note: self.note,
            derivation: self.derivation,
            lhs: self.lhs,
            rhs: self.rhs,
        }
    }
}

fn ident<T>(
    id: &'static str,
    group: Group,
    vars: &'static [Var],
    formula: &'static str,
    lhs: Side<T>,
    rhs: Side<T>,
) -> Identity<T> {
    Identity {
        id,
        group,
        vars,
        formula,
        note: None,
        derivation: None,
        lhs,
        rhs,
    }
}

impl<T> Identity<T> {
    fn note(mut self, note: &'static str) -> Self {
        self.note = Some(note);
        self
    }

    fn derived_from(
        mut self,
        source: &'static str,
        map: fn(&Indices) -> Indices,
        kind: Option<SequenceKind>,
        exact: bool,
    ) -> Self {
        self.derivation = Some(Derivation {
            source,
            map,
            kind,
            exact,
        });
        self
    }
}

fn same(x: &Indices) -> Indices {
    *x
}

use Var::{J, M, N, R, S, T as Tv};

const V_N: &[Var] = &[N];
const V_M: &[Var] = &[M];
const V_NM: &[Var] = &[N, M];
const V_NR: &[Var] = &[N, R];
const V_NT: &[Var] = &[N, Tv];
const V_NMJ: &[Var] = &[N, M, J];
const V_NMR: &[Var] = &[N, M, R];
const V_NMRS: &[Var] = &[N, M, R, S];
const V_NST: &[Var] = &[N, S, Tv];

/// Every registered identity, in manifest order.
pub fn registry<T: Scalar>() -> Vec<Identity<T>> {
    use Group::*;
    use SequenceKind::{U, V};
    let ident = ident::<T>;

    vec![
        // Basic consequences of the Binet forms.
        ident("lin.9", Basic, V_N, "w_n = b·u_n − a·q·u_{n−1}",
            |c, x| c.w(x.n),
            |c, x| c.b() * c.u(x.n) - c.a() * c.q() * c.u(x.n - 1)),
        ident("dbl.10", Basic, V_N, "u_{2n} = u_n·v_n",
            |c, x| c.u(2 * x.n),
            |c, x| c.u(x.n) * c.v(x.n)),
        ident("mul.15", Multiplication, V_NM, "u_m·v_n = u_{n+m} − q^m·u_{n−m}",
            |c, x| c.u(x.m) * c.v(x.n),
            |c, x| c.u(x.n + x.m) - c.qp(x.m) * c.u(x.n - x.m)),
        ident("mul.16", Multiplication, V_NM, "(p² − 4q)·u_m·u_n = v_{n+m} − q^m·v_{n−m}",
            |c, x| (c.p() * c.p() - c.int(4) * c.q()) * c.u(x.m) * c.u(x.n),
            |c, x| c.v(x.n + x.m) - c.qp(x.m) * c.v(x.n - x.m)),
        ident("mul.17", Multiplication, V_NM, "v_m·u_n = u_{n+m} + q^m·u_{n−m}",
            |c, x| c.v(x.m) * c.u(x.n),
            |c, x| c.u(x.n + x.m) + c.qp(x.m) * c.u(x.n - x.m)),
        ident("mul.18", Multiplication, V_NM, "v_m·v_n = v_{n+m} + q^m·v_{n−m}",
            |c, x| c.v(x.m) * c.v(x.n),
            |c, x| c.v(x.n + x.m) + c.qp(x.m) * c.v(x.n - x.m)),
        ident("neg.19u", Basic, V_N, "u_{−n} = −u_n/q^n",
            |c, x| c.u(-x.n),
            |c, x| -(c.u(x.n) * c.qp(-x.n))),
        ident("neg.19v", Basic, V_N, "v_{−n} = v_n/q^n",
            |c, x| c.v(-x.n),
            |c, x| c.v(x.n) * c.qp(-x.n)),
        ident("neg.20", Basic, V_N, "q^n·w_{−n} = (a·p − b)·u_n − a·q·u_{n−1}",
            |c, x| c.qp(x.n) * c.w(-x.n),
            |c, x| (c.a() * c.p() - c.b()) * c.u(x.n) - c.a() * c.q() * c.u(x.n - 1))
            .note("quotient form w_{−n} = ((a·p − b)·u_n − a·q·u_{n−1})/(b·u_n − a·q·u_{n−1})·q^{−n}·w_n, multiplied through"),

        // The master identity and its rearrangements.
        ident("H", Master, V_NMRS, "u_{r−s}·w_{n+m} = u_{m−s}·w_{n+r} − q^{r−s}·u_{m−r}·w_{n+s}",
            |c, x| c.u(x.r - x.s) * c.w(x.n + x.m),
            |c, x| c.u(x.m - x.s) * c.w(x.n + x.r) - c.qp(x.r - x.s) * c.u(x.m - x.r) * c.w(x.n + x.s)),
        ident("F", Master, V_NMRS, "u_{r−s}·w_{n+m} = u_{n−s}·w_{m+r} − q^{r−s}·u_{n−r}·w_{m+s}",
            |c, x| c.u(x.r - x.s) * c.w(x.n + x.m),
            |c, x| c.u(x.n - x.s) * c.w(x.m + x.r) - c.qp(x.r - x.s) * c.u(x.n - x.r) * c.w(x.m + x.s))
            .note("n ↔ m in H")
            .derived_from("H", |x| Indices { n: x.m, m: x.n, ..*x }, None, true),
        ident("G", Master, V_NMRS, "u_{r−s}·w_{n+m} = u_{n+r}·w_{m−s} − q^{r−s}·u_{n+s}·w_{m−r}",
            |c, x| c.u(x.r - x.s) * c.w(x.n + x.m),
            |c, x| c.u(x.n + x.r) * c.w(x.m - x.s) - c.qp(x.r - x.s) * c.u(x.n + x.s) * c.w(x.m - x.r))
            .note("n ↔ m, r → −s, s → −r in H")
            .derived_from("H", |x| Indices { n: x.m, m: x.n, r: -x.s, s: -x.r, ..*x }, None, true),
        ident("J", Master, V_NMRS, "u_{r−s}·w_{n+m} = u_{m+r}·w_{n−s} − q^{r−s}·u_{m+s}·w_{n−r}",
            |c, x| c.u(x.r - x.s) * c.w(x.n + x.m),
            |c, x| c.u(x.m + x.r) * c.w(x.n - x.s) - c.qp(x.r - x.s) * c.u(x.m + x.s) * c.w(x.n - x.r))
            .note("r → −s, s → −r in H")
            .derived_from("H", |x| Indices { r: -x.s, s: -x.r, ..*x }, None, true),

        // Master identities for the Lucas sequences.
        ident("spec.21", Specialization, V_NMRS, "u_{r−s}·u_{n+m} = u_{m−s}·u_{n+r} − q^{r−s}·u_{m−r}·u_{n+s}",
            |c, x| c.u(x.r - x.s) * c.u(x.n + x.m),
            |c, x| c.u(x.m - x.s) * c.u(x.n + x.r) - c.qp(x.r - x.s) * c.u(x.m - x.r) * c.u(x.n + x.s))
            .derived_from("H", same, Some(U), true),
        ident("spec.22", Specialization, V_NMRS, "u_{r−s}·u_{n+m} = u_{n−s}·u_{m+r} − q^{r−s}·u_{n−r}·u_{m+s}",
            |c, x| c.u(x.r - x.s) * c.u(x.n + x.m),
            |c, x| c.u(x.n - x.s) * c.u(x.m + x.r) - c.qp(x.r - x.s) * c.u(x.n - x.r) * c.u(x.m + x.s))
            .derived_from("F", same, Some(U), true),
        ident("spec.23", Specialization, V_NMRS, "u_{r−s}·u_{n+m} = u_{n+r}·u_{m−s} − q^{r−s}·u_{n+s}·u_{m−r}",
            |c, x| c.u(x.r - x.s) * c.u(x.n + x.m),
            |c, x| c.u(x.n + x.r) * c.u(x.m - x.s) - c.qp(x.r - x.s) * c.u(x.n + x.s) * c.u(x.m - x.r))
            .derived_from("G", same, Some(U), true),
        ident("spec.24", Specialization, V_NMRS, "u_{r−s}·u_{n+m} = u_{m+r}·u_{n−s} − q^{r−s}·u_{m+s}·u_{n−r}",
            |c, x| c.u(x.r - x.s) * c.u(x.n + x.m),
            |c, x| c.u(x.m + x.r) * c.u(x.n - x.s) - c.qp(x.r - x.s) * c.u(x.m + x.s) * c.u(x.n - x.r))
            .derived_from("J", same, Some(U), true),
        ident("spec.25", Specialization, V_NMRS, "u_{r−s}·v_{n+m} = u_{m−s}·v_{n+r} − q^{r−s}·u_{m−r}·v_{n+s}",
            |c, x| c.u(x.r - x.s) * c.v(x.n + x.m),
            |c, x| c.u(x.m - x.s) * c.v(x.n + x.r) - c.qp(x.r - x.s) * c.u(x.m - x.r) * c.v(x.n + x.s))
            .derived_from("H", same, Some(V), true),
        ident("spec.26", Specialization, V_NMRS, "u_{r−s}·v_{n+m} = u_{n−s}·v_{m+r} − q^{r−s}·u_{n−r}·v_{m+s}",
            |c, x| c.u(x.r - x.s) * c.v(x.n + x.m),
            |c, x| c.u(x.n - x.s) * c.v(x.m + x.r) - c.qp(x.r - x.s) * c.u(x.n - x.r) * c.v(x.m + x.s))
            .derived_from("F", same, Some(V), true),
        ident("spec.27", Specialization, V_NMRS, "u_{r−s}·v_{n+m} = u_{n+r}·v_{m−s} − q^{r−s}·u_{n+s}·v_{m−r}",
            |c, x| c.u(x.r - x.s) * c.v(x.n + x.m),
            |c, x| c.u(x.n + x.r) * c.v(x.m - x.s) - c.qp(x.r - x.s) * c.u(x.n + x.s) * c.v(x.m - x.r))
            .derived_from("G", same, Some(V), true),
        ident("spec.28", Specialization, V_NMRS, "u_{r−s}·v_{n+m} = u_{m+r}·v_{n−s} − q^{r−s}·u_{m+s}·v_{n−r}",
            |c, x| c.u(x.r - x.s) * c.v(x.n + x.m),
            |c, x| c.u(x.m + x.r) * c.v(x.n - x.s) - c.qp(x.r - x.s) * c.u(x.m + x.s) * c.v(x.n - x.r))
            .derived_from("J", same, Some(V), true),

        // Consequences for general w.
        ident("cor1.32", HoradamCorollary, V_NM, "v_m·w_n = w_{n+m} + q^m·w_{n−m}",
            |c, x| c.v(x.m) * c.w(x.n),
            |c, x| c.w(x.n + x.m) + c.qp(x.m) * c.w(x.n - x.m))
            .note("r = 0, s = −m in H")
            .derived_from("H", |x| Indices { r: 0, s: -x.m, ..*x }, None, false),
        ident("cor1.33", HoradamCorollary, V_N, "v_n·w_n = w_{2n} + q^n·a",
            |c, x| c.v(x.n) * c.w(x.n),
            |c, x| c.w(2 * x.n) + c.qp(x.n) * c.a()),
        ident("cor1.34", HoradamCorollary, V_NM, "u_m·w_n = u_n·w_m − q^m·a·u_{n−m}",
            |c, x| c.u(x.m) * c.w(x.n),
            |c, x| c.u(x.n) * c.w(x.m) - c.qp(x.m) * c.a() * c.u(x.n - x.m))
            .note("r = 0, s = −m in F")
            .derived_from("F", |x| Indices { r: 0, s: -x.m, ..*x }, None, false),
        ident("cor1.35", HoradamCorollary, V_NM, "w_{n+m} = u_m·w_{n+1} − q·u_{m−1}·w_n",
            |c, x| c.w(x.n + x.m),
            |c, x| c.u(x.m) * c.w(x.n + 1) - c.q() * c.u(x.m - 1) * c.w(x.n))
            .note("r = 1, s = 0 in H")
            .derived_from("H", |x| Indices { r: 1, s: 0, ..*x }, None, true),
        ident("cor1.36", HoradamCorollary, V_NM, "q^m·w_{n−m} = u_{m+1}·w_n − u_m·w_{n+1}",
            |c, x| c.qp(x.m) * c.w(x.n - x.m),
            |c, x| c.u(x.m + 1) * c.w(x.n) - c.u(x.m) * c.w(x.n + 1))
            .note("m → −m in cor1.35")
            .derived_from("cor1.35", |x| Indices { m: -x.m, ..*x }, None, false),
        ident("cor1.37", HoradamCorollary, V_NM, "w_{n+m} − q^m·w_{n−m} = u_m·(w_{n+1} − q·w_{n−1})",
            |c, x| c.w(x.n + x.m) - c.qp(x.m) * c.w(x.n - x.m),
            |c, x| c.u(x.m) * (c.w(x.n + 1) - c.q() * c.w(x.n - 1)))
            .note("cor1.35 − cor1.36"),
        ident("cor1.38", HoradamCorollary, V_NM, "w_{n+m} = u_n·w_{m+1} − q·u_{n−1}·w_m",
            |c, x| c.w(x.n + x.m),
            |c, x| c.u(x.n) * c.w(x.m + 1) - c.q() * c.u(x.n - 1) * c.w(x.m)),
        ident("cor1.39", HoradamCorollary, V_NMJ, "w_{n+m} = u_{m−j}·w_{n+j+1} − q·u_{m−j−1}·w_{n+j}",
            |c, x| c.w(x.n + x.m),
            |c, x| c.u(x.m - x.j) * c.w(x.n + x.j + 1) - c.q() * c.u(x.m - x.j - 1) * c.w(x.n + x.j)),
        ident("cor1.40", HoradamCorollary, V_NMJ, "w_{n+m} = u_{n−j}·w_{m+j+1} − q·u_{n−j−1}·w_{m+j}",
            |c, x| c.w(x.n + x.m),
            |c, x| c.u(x.n - x.j) * c.w(x.m + x.j + 1) - c.q() * c.u(x.n - x.j - 1) * c.w(x.m + x.j)),
        ident("cor1.41", HoradamCorollary, V_N, "w_{2n} = u_n·w_{n+1} − q·u_{n−1}·w_n",
            |c, x| c.w(2 * x.n),
            |c, x| c.u(x.n) * c.w(x.n + 1) - c.q() * c.u(x.n - 1) * c.w(x.n)),
        ident("cor1.42", HoradamCorollary, V_N, "w_{2n} = u_{n+1}·w_n − q·u_n·w_{n−1}",
            |c, x| c.w(2 * x.n),
            |c, x| c.u(x.n + 1) * c.w(x.n) - c.q() * c.u(x.n) * c.w(x.n - 1)),
        ident("cor1.43", HoradamCorollary, V_N, "w_{2n−1} = u_{n+1}·w_{n−1} − q·u_n·w_{n−2}",
            |c, x| c.w(2 * x.n - 1),
            |c, x| c.u(x.n + 1) * c.w(x.n - 1) - c.q() * c.u(x.n) * c.w(x.n - 2)),
        ident("cor1.44", HoradamCorollary, V_N, "w_{2n−1} = u_n·w_n − q·u_{n−1}·w_{n−1}",
            |c, x| c.w(2 * x.n - 1),
            |c, x| c.u(x.n) * c.w(x.n) - c.q() * c.u(x.n - 1) * c.w(x.n - 1)),
        ident("cor1.45", HoradamCorollary, V_NM, "u_{n−m}·w_{n+m} = u_n·w_n − q^{n−m}·u_m·w_m",
            |c, x| c.u(x.n - x.m) * c.w(x.n + x.m),
            |c, x| c.u(x.n) * c.w(x.n) - c.qp(x.n - x.m) * c.u(x.m) * c.w(x.m))
            .note("r = 0, s = m − n in H")
            .derived_from("H", |x| Indices { r: 0, s: x.m - x.n, ..*x }, None, true),
        ident("cor1.46", HoradamCorollary, V_NM, "u_{n−m}·w_{n+m} = u_{2n−m}·w_m − q^{n−m}·u_n·w_{2m−n}",
            |c, x| c.u(x.n - x.m) * c.w(x.n + x.m),
            |c, x| c.u(2 * x.n - x.m) * c.w(x.m) - c.qp(x.n - x.m) * c.u(x.n) * c.w(2 * x.m - x.n))
            .note("r = 0, s = −m in F")
            .derived_from("F", |x| Indices { r: 0, s: x.m - x.n, ..*x }, None, true),
        ident("cor1.47", HoradamCorollary, V_N, "q^n·w_{−n} = a·v_n − w_n",
            |c, x| c.qp(x.n) * c.w(-x.n),
            |c, x| c.a() * c.v(x.n) - c.w(x.n))
            .note("m = 0 in cor1.46")
            .derived_from("cor1.46", |x| Indices { m: 0, ..*x }, None, false),
        ident("cor1.48", HoradamCorollary, V_NM, "v_n·w_m − a·q^m·v_{n−m} = w_{n+m} − q^m·w_{n−m}",
            |c, x| c.v(x.n) * c.w(x.m) - c.a() * c.qp(x.m) * c.v(x.n - x.m),
            |c, x| c.w(x.n + x.m) - c.qp(x.m) * c.w(x.n - x.m))
            .note("cor1.47 used in cor1.32"),
        ident("cor1.49", HoradamCorollary, V_NM, "w_{n+m}² − q^{2m}·w_{n−m}² = v_m·w_n·(v_n·w_m − a·q^m·v_{n−m})",
            |c, x| c.w(x.n + x.m).square() - c.qp(2 * x.m) * c.w(x.n - x.m).square(),
            |c, x| c.v(x.m) * c.w(x.n) * (c.v(x.n) * c.w(x.m) - c.a() * c.qp(x.m) * c.v(x.n - x.m)))
            .note("cor1.32 × cor1.48"),
        ident("cor1.50", HoradamCorollary, V_NMR, "u_{2r}·w_{n+m} = u_{m+r}·w_{n+r} − q^{2r}·u_{m−r}·w_{n−r}",
            |c, x| c.u(2 * x.r) * c.w(x.n + x.m),
            |c, x| c.u(x.m + x.r) * c.w(x.n + x.r) - c.qp(2 * x.r) * c.u(x.m - x.r) * c.w(x.n - x.r))
            .note("s = −r in H")
            .derived_from("H", |x| Indices { s: -x.r, ..*x }, None, true),
        ident("cor1.51", HoradamCorollary, V_NMR, "q^{m−r}·u_{2r}·w_{n−m} = u_{m+r}·w_{n−r} − u_{m−r}·w_{n+r}",
            |c, x| c.qp(x.m - x.r) * c.u(2 * x.r) * c.w(x.n - x.m),
            |c, x| c.u(x.m + x.r) * c.w(x.n - x.r) - c.u(x.m - x.r) * c.w(x.n + x.r))
            .note("m → −m in cor1.50")
            .derived_from("cor1.50", |x| Indices { m: -x.m, ..*x }, None, false),
        ident("cor1.52", HoradamCorollary, V_NMR, "u_{2r}·w_{n+m} = u_{n+r}·w_{m+r} − q^{2r}·u_{n−r}·w_{m−r}",
            |c, x| c.u(2 * x.r) * c.w(x.n + x.m),
            |c, x| c.u(x.n + x.r) * c.w(x.m + x.r) - c.qp(2 * x.r) * c.u(x.n - x.r) * c.w(x.m - x.r)),
        ident("cor1.53", HoradamCorollary, V_NR, "u_{2r}·w_{2n} = u_{n+r}·w_{n+r} − q^{2r}·u_{n−r}·w_{n−r}",
            |c, x| c.u(2 * x.r) * c.w(2 * x.n),
            |c, x| c.u(x.n + x.r) * c.w(x.n + x.r) - c.qp(2 * x.r) * c.u(x.n - x.r) * c.w(x.n - x.r)),
        ident("cor1.54", HoradamCorollary, V_NR, "u_{2r}·w_{2n−1} = u_{n+r}·w_{n+r−1} − q^{2r}·u_{n−r}·w_{n−r−1}",
            |c, x| c.u(2 * x.r) * c.w(2 * x.n - 1),
            |c, x| c.u(x.n + x.r) * c.w(x.n + x.r - 1) - c.qp(2 * x.r) * c.u(x.n - x.r) * c.w(x.n - x.r - 1)),
        ident("cor1.55", HoradamCorollary, V_NM, "p·w_{n+m} = u_{m+1}·w_{n+1} − q²·u_{m−1}·w_{n−1}",
            |c, x| c.p() * c.w(x.n + x.m),
            |c, x| c.u(x.m + 1) * c.w(x.n + 1) - c.qp(2) * c.u(x.m - 1) * c.w(x.n - 1))
            .note("r = 1 in cor1.50")
            .derived_from("cor1.50", |x| Indices { r: 1, ..*x }, None, true),
        ident("cor1.56", HoradamCorollary, V_NM, "p·w_{n+m} = u_{n+1}·w_{m+1} − q²·u_{n−1}·w_{m−1}",
            |c, x| c.p() * c.w(x.n + x.m),
            |c, x| c.u(x.n + 1) * c.w(x.m + 1) - c.qp(2) * c.u(x.n - 1) * c.w(x.m - 1)),
        ident("cor1.57", HoradamCorollary, V_N, "p·w_{2n} = u_{n+1}·w_{n+1} − q²·u_{n−1}·w_{n−1}",
            |c, x| c.p() * c.w(2 * x.n),
            |c, x| c.u(x.n + 1) * c.w(x.n + 1) - c.qp(2) * c.u(x.n - 1) * c.w(x.n - 1)),
        ident("cor1.58", HoradamCorollary, V_N, "p·w_{2n−1} = u_{n+1}·w_n − q²·u_{n−1}·w_{n−2}",
            |c, x| c.p() * c.w(2 * x.n - 1),
            |c, x| c.u(x.n + 1) * c.w(x.n) - c.qp(2) * c.u(x.n - 1) * c.w(x.n - 2)),
        ident("cor1.59", HoradamCorollary, V_NST, "u_t·w_n = u_s·w_{n+t−s} − q^t·u_{s−t}·w_{n−s}",
            |c, x| c.u(x.t) * c.w(x.n),
            |c, x| c.u(x.s) * c.w(x.n + x.t - x.s) - c.qp(x.t) * c.u(x.s - x.t) * c.w(x.n - x.s))
            .note("m = 0, r = t + s in H")
            .derived_from("H", |x| Indices { m: 0, r: x.t - x.s, s: -x.s, ..*x }, None, true),
        ident("cor1.60", HoradamCorollary, V_NST, "u_t·w_n = u_{n−s}·w_{t+s} − q^t·u_{n−t−s}·w_s",
            |c, x| c.u(x.t) * c.w(x.n),
            |c, x| c.u(x.n - x.s) * c.w(x.t + x.s) - c.qp(x.t) * c.u(x.n - x.t - x.s) * c.w(x.s))
            .note("m = 0, r = t + s in F")
            .derived_from("F", |x| Indices { m: 0, r: x.t + x.s, ..*x }, None, true),
        ident("cor1.61", HoradamCorollary, V_NST, "u_t·w_n = u_{n+t−s}·w_s − q^t·u_{n−s}·w_{s−t}",
            |c, x| c.u(x.t) * c.w(x.n),
            |c, x| c.u(x.n + x.t - x.s) * c.w(x.s) - c.qp(x.t) * c.u(x.n - x.s) * c.w(x.s - x.t))
            .note("m = 0, r = t + s in G")
            .derived_from("G", |x| Indices { m: 0, r: x.t - x.s, s: -x.s, ..*x }, None, true),
        ident("cor1.62", HoradamCorollary, V_NST, "u_t·w_n = u_{t+s}·w_{n−s} − q^t·u_s·w_{n−s−t}",
            |c, x| c.u(x.t) * c.w(x.n),
            |c, x| c.u(x.t + x.s) * c.w(x.n - x.s) - c.qp(x.t) * c.u(x.s) * c.w(x.n - x.s - x.t))
            .note("m = 0, r = t + s in J")
            .derived_from("J", |x| Indices { m: 0, r: x.t + x.s, ..*x }, None, true),

        // Consequences for the Lucas sequences.
        ident("cor2.63", LucasCorollary, V_N, "v_n² = v_{2n} + 2·q^n",
            |c, x| c.v(x.n).square(),
            |c, x| c.v(2 * x.n) + c.int(2) * c.qp(x.n))
            .note("w = v in cor1.33")
            .derived_from("cor1.33", same, Some(V), true),
        ident("cor2.64", LucasCorollary, V_NM, "u_n·v_m − u_m·v_n = 2·q^m·u_{n−m}",
            |c, x| c.u(x.n) * c.v(x.m) - c.u(x.m) * c.v(x.n),
            |c, x| c.int(2) * c.qp(x.m) * c.u(x.n - x.m))
            .note("w = v in cor1.34")
            .derived_from("cor1.34", same, Some(V), false),
        ident("cor2.65", LucasCorollary, V_N, "v_n = p·u_n − 2·q·u_{n−1}",
            |c, x| c.v(x.n),
            |c, x| c.p() * c.u(x.n) - c.int(2) * c.q() * c.u(x.n - 1))
            .note("w = v, m = 0 in cor1.38")
            .derived_from("cor1.38", |x| Indices { m: 0, ..*x }, Some(V), true),
        ident("cor2.66", LucasCorollary, V_NM, "u_{n+m} = u_m·u_{n+1} − q·u_{m−1}·u_n",
            |c, x| c.u(x.n + x.m),
            |c, x| c.u(x.m) * c.u(x.n + 1) - c.q() * c.u(x.m - 1) * c.u(x.n)),
        ident("cor2.67", LucasCorollary, V_NM, "v_{n+m} = u_m·v_{n+1} − q·u_{m−1}·v_n",
            |c, x| c.v(x.n + x.m),
            |c, x| c.u(x.m) * c.v(x.n + 1) - c.q() * c.u(x.m - 1) * c.v(x.n)),
        ident("cor2.68", LucasCorollary, V_M, "u_{2m−1} = u_m² − q·u_{m−1}²",
            |c, x| c.u(2 * x.m - 1),
            |c, x| c.u(x.m).square() - c.q() * c.u(x.m - 1).square()),
        ident("cor2.69", LucasCorollary, V_M, "v_{2m−1} = u_{2m} − q·u_{2m−2}",
            |c, x| c.v(2 * x.m - 1),
            |c, x| c.u(2 * x.m) - c.q() * c.u(2 * x.m - 2)),
        ident("cor2.70", LucasCorollary, V_NM, "u_{n−m}·u_{n+m} = u_n² − q^{n−m}·u_m²",
            |c, x| c.u(x.n - x.m) * c.u(x.n + x.m),
            |c, x| c.u(x.n).square() - c.qp(x.n - x.m) * c.u(x.m).square())
            .note("w = u in cor1.45")
            .derived_from("cor1.45", same, Some(U), true),
        ident("cor2.71", LucasCorollary, V_NM, "u_{n−m}·v_{n+m} = u_{2n} − q^{n−m}·u_{2m}",
            |c, x| c.u(x.n - x.m) * c.v(x.n + x.m),
            |c, x| c.u(2 * x.n) - c.qp(x.n - x.m) * c.u(2 * x.m))
            .note("w = v in cor1.45")
            .derived_from("cor1.45", same, Some(V), true),
        ident("cor2.72", LucasCorollary, V_NM, "v_n·v_m − (p² − 4q)·u_m·u_n = 2·q^m·v_{n−m}",
            |c, x| c.v(x.n) * c.v(x.m) - (c.p() * c.p() - c.int(4) * c.q()) * c.u(x.m) * c.u(x.n),
            |c, x| c.int(2) * c.qp(x.m) * c.v(x.n - x.m))
            .note("mul.16 and w = v in cor1.48"),
        ident("cor2.73", LucasCorollary, V_NMR, "u_{2r}·u_{n+m} = u_{n+r}·u_{m+r} − q^{2r}·u_{m−r}·u_{n−r}",
            |c, x| c.u(2 * x.r) * c.u(x.n + x.m),
            |c, x| c.u(x.n + x.r) * c.u(x.m + x.r) - c.qp(2 * x.r) * c.u(x.m - x.r) * c.u(x.n - x.r))
            .note("w = u in cor1.52")
            .derived_from("cor1.52", same, Some(U), true),
        ident("cor2.74", LucasCorollary, V_NMR, "u_{2r}·v_{n+m} = u_{n+r}·v_{m+r} − q^{2r}·u_{n−r}·v_{m−r}",
            |c, x| c.u(2 * x.r) * c.v(x.n + x.m),
            |c, x| c.u(x.n + x.r) * c.v(x.m + x.r) - c.qp(2 * x.r) * c.u(x.n - x.r) * c.v(x.m - x.r))
            .note("w = v in cor1.52")
            .derived_from("cor1.52", same, Some(V), true),
        ident("cor2.75", LucasCorollary, V_NR, "u_{2r}·u_{2n} = u_{n+r}² − q^{2r}·u_{n−r}²",
            |c, x| c.u(2 * x.r) * c.u(2 * x.n),
            |c, x| c.u(x.n + x.r).square() - c.qp(2 * x.r) * c.u(x.n - x.r).square()),
        ident("cor2.76", LucasCorollary, V_NR, "u_{2r}·v_{2n} = u_{2(n+r)} − q^{2r}·u_{2(n−r)}",
            |c, x| c.u(2 * x.r) * c.v(2 * x.n),
            |c, x| c.u(2 * (x.n + x.r)) - c.qp(2 * x.r) * c.u(2 * (x.n - x.r))),
        ident("cor2.77", LucasCorollary, V_N, "p·u_{2n} = u_{n+1}² − q²·u_{n−1}²",
            |c, x| c.p() * c.u(2 * x.n),
            |c, x| c.u(x.n + 1).square() - c.qp(2) * c.u(x.n - 1).square()),
        ident("cor2.78", LucasCorollary, V_N, "p·v_{2n} = u_{2(n+1)} − q²·u_{2(n−1)}",
            |c, x| c.p() * c.v(2 * x.n),
            |c, x| c.u(2 * (x.n + 1)) - c.qp(2) * c.u(2 * (x.n - 1))),
        ident("cor2.79", LucasCorollary, V_NST, "u_t·u_n = u_s·u_{n+t−s} − q^t·u_{s−t}·u_{n−s}",
            |c, x| c.u(x.t) * c.u(x.n),
            |c, x| c.u(x.s) * c.u(x.n + x.t - x.s) - c.qp(x.t) * c.u(x.s - x.t) * c.u(x.n - x.s))
            .note("w = u in cor1.59")
            .derived_from("cor1.59", same, Some(U), true),
        ident("cor2.80", LucasCorollary, V_NST, "u_t·v_n = u_s·v_{n+t−s} − q^t·u_{s−t}·v_{n−s}",
            |c, x| c.u(x.t) * c.v(x.n),
            |c, x| c.u(x.s) * c.v(x.n + x.t - x.s) - c.qp(x.t) * c.u(x.s - x.t) * c.v(x.n - x.s))
            .note("w = v in cor1.59")
            .derived_from("cor1.59", same, Some(V), true),
        ident("cor2.81", LucasCorollary, V_NT, "u_n·v_t + u_t·v_n = 2·u_{n+t}",
            |c, x| c.u(x.n) * c.v(x.t) + c.u(x.t) * c.v(x.n),
            |c, x| c.int(2) * c.u(x.n + x.t))
            .note("s = 0, w = v in cor1.61")
            .derived_from("cor1.61", |x| Indices { s: 0, ..*x }, Some(V), false),
        ident("cor2.82", LucasCorollary, V_NT, "u_n²·v_t² − u_t²·v_n² = 4·q^t·u_{n+t}·u_{n−t}",
            |c, x| c.u(x.n).square() * c.v(x.t).square() - c.u(x.t).square() * c.v(x.n).square(),
            |c, x| c.int(4) * c.qp(x.t) * c.u(x.n + x.t) * c.u(x.n - x.t))
            .note("m = t in cor2.64, times cor2.81"),
        ident("cor2.83", LucasCorollary, V_N, "p²·u_n² − v_n² = 4·q·u_{n+1}·u_{n−1}",
            |c, x| c.p() * c.p() * c.u(x.n).square() - c.v(x.n).square(),
            |c, x| c.int(4) * c.q() * c.u(x.n + 1) * c.u(x.n - 1)),
    ]
}

/// `(id, signature, formula)` for every registered identity.
pub fn list_identities() -> Vec<(&'static str, &'static [Var], &'static str)> {
    registry::<crate::Rational>()
        .into_iter()
        .map(|i| (i.id, i.vars, i.formula))
        .collect()
}

pub fn find<'a, T>(registry: &'a [Identity<T>], id: &str) -> Result<&'a Identity<T>> {
    registry
        .iter()
        .find(|i| i.id == id)
        .ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

/// Markdown table of the registry: key, free variables, formula, remark.
pub fn manifest_markdown() -> String {
    let mut out = String::from("| key | variables | identity | derivation |\n|---|---|---|---|\n");
    for ident in registry::<crate::Rational>() {
        out.push_str(&format!(
            "| `{}` | {} | {} | {} |\n",
            ident.id,
            ident.signature(),
            ident.formula,
            ident.note.unwrap_or("")
        ));
    }
    out
}

#[derive(Clone, PartialEq, Debug)]
pub struct VerificationReport<T> {
    pub id: String,
    pub assignment: Assignment,
    pub params: HoradamParams<T>,
    pub lhs: T,
    pub rhs: T,
    pub equal: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct EvalOptions {
    pub use_cache: bool,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { use_cache: true }
    }
}

fn check_assignment<T>(ident: &Identity<T>, asg: &Assignment) -> Result<()> {
    if let Some(extra) = asg.vars().find(|v| !ident.vars.contains(v)) {
        return Err(Error::Assignment(format!(
            "`{}` does not use `{extra}`; its variables are {}",
            ident.id,
            ident.signature()
        )));
    }
    if let Some(missing) = ident.vars.iter().find(|v| asg.get(**v).is_none()) {
        return Err(Error::Assignment(format!(
            "`{}` needs a value for `{missing}`; its variables are {}",
            ident.id,
            ident.signature()
        )));
    }
    Ok(())
}

/// Evaluates both sides of one identity, each from its own term lookups.
pub fn evaluate_identity<T: Scalar>(
    ident: &Identity<T>,
    asg: &Assignment,
    params: &HoradamParams<T>,
    opts: EvalOptions,
) -> Result<VerificationReport<T>> {
    check_assignment(ident, asg)?;
    let idx = Indices::from_assignment(asg);
    let lhs = (ident.lhs)(&Ctx::new(params, opts.use_cache), &idx);
    let rhs = (ident.rhs)(&Ctx::new(params, opts.use_cache), &idx);
    Ok(report(ident, asg, params, lhs, rhs))
}

fn report<T: Scalar>(
    ident: &Identity<T>,
    asg: &Assignment,
    params: &HoradamParams<T>,
    lhs: T,
    rhs: T,
) -> VerificationReport<T> {
    let equal = lhs == rhs;
    VerificationReport {
        id: ident.id.to_string(),
        assignment: asg.clone(),
        params: params.clone(),
        lhs,
        rhs,
        equal,
    }
}

/// Looks up `id` in the full registry and evaluates it.
pub fn evaluate<T: Scalar>(
    id: &str,
    asg: &Assignment,
    params: &HoradamParams<T>,
) -> Result<VerificationReport<T>> {
    let reg = registry::<T>();
    evaluate_identity(find(&reg, id)?, asg, params, EvalOptions::default())
}

/// Random parameter and index draws for [`fuzz`].
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct SamplerConfig {
    /// Numerators and denominators of `a, b, p, q` are drawn from
    /// `1..=max_component`, with a random sign.
    pub max_component: i64,
    pub index_lo: i64,
    pub index_hi: i64,
}

impl SamplerConfig {
    pub fn symmetric(max_index: i64) -> Self {
        SamplerConfig {
            max_component: 9,
            index_lo: -max_index,
            index_hi: max_index,
        }
    }
}

impl Default for SamplerConfig {
    fn default() -> Self {
        Self::symmetric(10)
    }
}

/// Draws a nonzero rational `±n/d` with `n, d ∈ [1, max]`.
pub fn draw_component<T: Scalar>(rng: &mut impl Rng, max: i64) -> T {
    let numer = rng.gen_range(1..=max);
    let denom = rng.gen_range(1..=max);
    let numer = if rng.gen_bool(0.5) { -numer } else { numer };
    T::from_ratio(numer, denom)
}

pub fn draw_params<T: Scalar>(rng: &mut impl Rng, max: i64) -> HoradamParams<T> {
    loop {
        let p = draw_component::<T>(rng, max);
        let q = draw_component::<T>(rng, max);
        let a = draw_component::<T>(rng, max);
        let b = draw_component::<T>(rng, max);
        // nonzero by construction over the rationals; a small prime field
        // could still reduce a component to zero
        if let Ok(params) = HoradamParams::new(a, b, p, q) {
            return params;
        }
    }
}

fn draw_indices(rng: &mut impl Rng, cfg: &SamplerConfig) -> Indices {
    let mut draw = || rng.gen_range(cfg.index_lo..=cfg.index_hi);
    Indices {
        n: draw(),
        m: draw(),
        r: draw(),
        s: draw(),
        t: draw(),
        j: draw(),
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct Counterexample<T> {
    pub trial: usize,
    pub report: VerificationReport<T>,
}

#[derive(Clone, PartialEq, Debug)]
pub struct IdentityTally<T> {
    pub id: String,
    pub trials: usize,
    pub passed: usize,
    pub counterexample: Option<Counterexample<T>>,
}

#[derive(Clone, PartialEq, Debug)]
pub struct FuzzReport<T> {
    pub seed: u64,
    pub trials: usize,
    pub sampler: SamplerConfig,
    pub tallies: Vec<IdentityTally<T>>,
}

impl<T> FuzzReport<T> {
    pub fn all_passed(&self) -> bool {
        self.tallies.iter().all(|t| t.passed == t.trials)
    }
}

/// Seeded fuzzing of the named identities (`["all"]` for every one).
pub fn fuzz<T: Scalar>(
    ids: &[&str],
    trials: usize,
    sampler: SamplerConfig,
    seed: u64,
) -> Result<FuzzReport<T>> {
    let reg = registry::<T>();
    let selected: Vec<Identity<T>> = if ids == ["all"] {
        reg
    } else {
        ids.iter()
            .map(|id| find(&reg, id).cloned())
            .collect::<Result<_>>()?
    };
    Ok(fuzz_identities(&selected, trials, sampler, seed))
}

/// Fuzzes an explicit identity list. Each trial draws one parameter set and
/// one full index vector; every identity sees the projection onto its own
/// variables. The draw sequence depends only on `seed`, `trials` and
/// `sampler`.
pub fn fuzz_identities<T: Scalar>(
    identities: &[Identity<T>],
    trials: usize,
    sampler: SamplerConfig,
    seed: u64,
) -> FuzzReport<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tallies: Vec<IdentityTally<T>> = identities
        .iter()
        .map(|i| IdentityTally {
            id: i.id.to_string(),
            trials: 0,
            passed: 0,
            counterexample: None,
        })
        .collect();
    for trial in 0..trials {
        let params = draw_params::<T>(&mut rng, sampler.max_component);
        let idx = draw_indices(&mut rng, &sampler);
        let lhs_ctx = Ctx::new(&params, true);
        let rhs_ctx = Ctx::new(&params, true);
        for (ident, tally) in identities.iter().zip(tallies.iter_mut()) {
            let asg = Assignment::project(&idx, ident.vars);
            let idx = Indices::from_assignment(&asg);
            let lhs = (ident.lhs)(&lhs_ctx, &idx);
            let rhs = (ident.rhs)(&rhs_ctx, &idx);
            tally.trials += 1;
            if lhs == rhs {
                tally.passed += 1;
            } else if tally.counterexample.is_none() {
                tally.counterexample = Some(Counterexample {
                    trial,
                    report: report(ident, &asg, &params, lhs, rhs),
                });
            }
        }
    }
    FuzzReport {
        seed,
        trials,
        sampler,
        tallies,
    }
}

/// Outcome of re-deriving an identity from its recorded source.
#[derive(Clone, PartialEq, Debug)]
pub struct DerivationCheck<T> {
    pub source: VerificationReport<T>,
    /// Whether this identity's sides equal the source's, when the derivation
    /// is recorded as exact; `None` otherwise.
    pub sides_match: Option<bool>,
}

/// Evaluates the recorded source identity at the substituted indices (and
/// specialized parameters) for comparison with `ident` itself.
pub fn check_derivation<T: Scalar>(
    registry: &[Identity<T>],
    ident: &Identity<T>,
    asg: &Assignment,
    params: &HoradamParams<T>,
) -> Result<Option<DerivationCheck<T>>> {
    let Some(derivation) = ident.derivation else {
        return Ok(None);
    };
    let source = find(registry, derivation.source)?;
    let mapped = (derivation.map)(&Indices::from_assignment(asg));
    let source_asg = Assignment::project(&mapped, source.vars);
    let source_params = match derivation.kind {
        Some(kind) => params.specialize(kind),
        None => params.clone(),
    };
    let source_report = evaluate_identity(source, &source_asg, &source_params, EvalOptions::default())?;
    let sides_match = if derivation.exact {
        let own = evaluate_identity(ident, asg, params, EvalOptions::default())?;
        Some(own.lhs == source_report.lhs && own.rhs == source_report.rhs)
    } else {
        None
    };
    Ok(Some(DerivationCheck {
        source: source_report,
        sides_match,
    }))
}
