//! The `horadam` command line: term evaluation, identity verification and
//! fuzzing, summation theorems, and an evaluation benchmark.
//!
//! [`run`] does all the work and returns the exit code with the text meant
//! for stdout and stderr, so tests can drive the tool without a process.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use horadam::catalog::{self, Assignment, Identity, SamplerConfig};
use horadam::sequences::{self, HoradamParams};
use horadam::theorems::{self, SumAssignment, TheoremSelector};
use horadam::{parse_rational, DynamicModulus, Error, ModP, Rational, Scalar, SequenceKind};
use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

/// Exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const USAGE: i32 = 2;
    pub const DEGENERATE_ROOT: i32 = 3;
    pub const INEQUALITY: i32 = 4;
    pub const SINGULAR_SUMMAND: i32 = 5;
    pub const GUARD_VIOLATION: i32 = 6;
}

/// Environment variable naming a directory of `<name>.preset` files.
pub const PRESETS_ENV: &str = "HORADAM_PRESETS";

#[derive(Parser, Debug)]
#[command(name = "horadam", version, about = "Exact Horadam and Lucas sequence toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the identity registry.
    List(ListArgs),
    /// Evaluate one term.
    Eval(EvalArgs),
    /// Check one identity at one assignment.
    Verify(VerifyArgs),
    /// Check identities on seeded random parameters and indices.
    Fuzz(FuzzArgs),
    /// Evaluate a summation theorem three ways.
    Sum(SumArgs),
    /// Time iterative against doubling evaluation of u_n, v_n.
    Bench(BenchArgs),
}

#[derive(Args, Debug, Clone)]
struct ParamArgs {
    /// Built-in preset (fibonacci, lucas, pell) or a preset in $HORADAM_PRESETS.
    #[arg(long, conflicts_with = "preset_file")]
    preset: Option<String>,
    /// Preset file of `key = value` lines.
    #[arg(long)]
    preset_file: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true)]
    p: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
}

#[derive(Args, Debug, Clone, Copy)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum KindArg {
    U,
    V,
    W,
}

impl From<KindArg> for SequenceKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::U => SequenceKind::U,
            KindArg::V => SequenceKind::V,
            KindArg::W => SequenceKind::W,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Method {
    Iterative,
    Doubling,
    Binet,
}

#[derive(Args, Debug)]
struct ListArgs {
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long, allow_hyphen_values = true)]
    n: i64,
    #[arg(long, value_enum, default_value_t = Method::Iterative)]
    method: Method,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long)]
    id: String,
    /// `n=1,m=3,r=2,s=0`
    #[arg(long, allow_hyphen_values = true)]
    assign: String,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct FuzzArgs {
    /// Comma-separated identity keys, or `all`.
    #[arg(long, default_value = "all")]
    ids: String,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Indices are drawn from [-max-index, max-index].
    #[arg(long, default_value_t = 10)]
    max_index: i64,
    /// Bound on numerators and denominators of a, b, p, q.
    #[arg(long, default_value_t = 9, value_parser = clap::value_parser!(i64).range(1..))]
    max_component: i64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct SumArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long)]
    theorem: u8,
    #[arg(long)]
    variant: u8,
    /// Sequence playing the role of w.
    #[arg(long, value_enum, default_value_t = KindArg::W)]
    kind: KindArg,
    /// `n=4,m=2,r=1,s=0,k=2`
    #[arg(long, allow_hyphen_values = true)]
    assign: String,
    /// Only list the denominator factors.
    #[arg(long)]
    scan: bool,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    p: String,
    #[arg(long, allow_hyphen_values = true, default_value = "-1")]
    q: String,
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    n: u64,
    /// Prime modulus; without it the benchmark runs over exact rationals.
    #[arg(long = "mod")]
    modulus: Option<u64>,
    #[command(flatten)]
    out: OutputArgs,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Inputs the commands read besides argv.
pub struct Env {
    pub registry: Vec<Identity<Rational>>,
    pub presets_dir: Option<PathBuf>,
}

impl Env {
    pub fn from_process() -> Self {
        Env {
            registry: catalog::registry(),
            presets_dir: std::env::var_os(PRESETS_ENV).map(PathBuf::from),
        }
    }
}

/// Runs one invocation; `args` excludes the program name.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    run_with(args, &Env::from_process())
}

pub fn run_with<I, S>(args: I, env: &Env) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(std::iter::once("horadam".to_string()).chain(argv.iter().cloned())) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: exit::USAGE, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: exit::OK, stdout: text, stderr: String::new() }
            };
        }
    };
    let ctx = Invocation { argv: &argv, env };
    match cli.command {
        Command::List(a) => ctx.list(a),
        Command::Eval(a) => ctx.eval(a),
        Command::Verify(a) => ctx.verify(a),
        Command::Fuzz(a) => ctx.fuzz(a),
        Command::Sum(a) => ctx.sum(a),
        Command::Bench(a) => ctx.bench(a),
    }
}

/// Failure before a report exists.
#[derive(Debug)]
enum Failure {
    Core(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Core(Error::DegenerateRoot) => exit::DEGENERATE_ROOT,
            Failure::Core(Error::SingularSummand { .. }) => exit::SINGULAR_SUMMAND,
            Failure::Core(Error::GuardViolation { .. }) => exit::GUARD_VIOLATION,
            _ => exit::USAGE,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Failure::Core(e) => match e {
                Error::DegenerateRoot => "degenerate_root",
                Error::SingularSummand { .. } => "singular_summand",
                Error::GuardViolation { .. } => "guard_violation",
                Error::UnknownIdentity(_) => "unknown_identity",
                Error::CompositeModulus(_) => "composite_modulus",
                Error::Assignment(_) => "invalid_assignment",
                Error::InvalidSelector { .. } => "invalid_selector",
                Error::ParseRational(_) | Error::InvalidParams(_) => "invalid_params",
                _ => "invalid_input",
            },
            Failure::Usage(_) => "invalid_input",
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Core(e) => e.to_string(),
            Failure::Usage(m) => m.clone(),
        }
    }

    fn details(&self) -> Value {
        match self {
            Failure::Core(Error::SingularSummand { j, index }) => json!({ "j": j, "index": index }),
            Failure::Core(Error::GuardViolation { quantity }) => json!({ "quantity": quantity }),
            _ => Value::Null,
        }
    }
}

struct Invocation<'a> {
    argv: &'a [String],
    env: &'a Env,
}

impl Invocation<'_> {
    fn command_name(&self) -> &str {
        self.argv.first().map(String::as_str).unwrap_or("")
    }

    fn envelope(&self, key: &str, payload: Value) -> String {
        let mut map = serde_json::Map::new();
        map.insert("schema_version".into(), json!(SCHEMA_VERSION));
        map.insert("command".into(), json!({ "name": self.command_name(), "argv": self.argv }));
        map.insert(key.into(), payload);
        let mut text = serde_json::to_string_pretty(&Value::Object(map)).expect("JSON values serialize");
        text.push('\n');
        text
    }

    fn success(&self, code: i32, format: Format, payload: Value, text: String) -> Outcome {
        let stdout = match format {
            Format::Json => self.envelope("result", payload),
            Format::Text => text,
        };
        Outcome { code, stdout, stderr: String::new() }
    }

    fn failure(&self, format: Format, failure: Failure) -> Outcome {
        let stdout = match format {
            Format::Json => self.envelope(
                "error",
                json!({ "kind": failure.kind(), "message": failure.message(), "details": failure.details() }),
            ),
            Format::Text => String::new(),
        };
        Outcome {
            code: failure.code(),
            stdout,
            stderr: format!("error: {}\n", failure.message()),
        }
    }

    fn finish(&self, format: Format, result: Result<(i32, Value, String), Failure>) -> Outcome {
        match result {
            Ok((code, payload, text)) => self.success(code, format, payload, text),
            Err(f) => self.failure(format, f),
        }
    }

    fn list(&self, args: ListArgs) -> Outcome {
        let entries: Vec<Value> = self
            .env
            .registry
            .iter()
            .map(|i| json!({ "id": i.id, "variables": i.vars, "formula": i.formula, "group": i.group }))
            .collect();
        let mut text = String::new();
        for i in &self.env.registry {
            text.push_str(&format!("{:<9} {:<14} {}\n", i.id, i.signature(), i.formula));
        }
        self.success(exit::OK, args.out.format, json!({ "identities": entries }), text)
    }

    fn eval(&self, args: EvalArgs) -> Outcome {
        let result = (|| {
            let params = resolve_params(&args.params, self.env)?;
            let kind = SequenceKind::from(args.kind);
            let value = match args.method {
                Method::Iterative => sequences::term(&params, kind, args.n),
                Method::Doubling => sequences::fast_term(&params, kind, args.n),
                Method::Binet => sequences::binet_term(&params, kind, args.n)?,
            };
            let payload = json!({
                "kind": kind,
                "n": args.n,
                "method": args.method,
                "params": params,
                "value": value.to_string(),
            });
            Ok((exit::OK, payload, format!("{value}\n")))
        })();
        self.finish(args.out.format, result)
    }

    fn verify(&self, args: VerifyArgs) -> Outcome {
        let result = (|| {
            let params = resolve_params(&args.params, self.env)?;
            let asg = Assignment::parse(&args.assign)?;
            let ident = catalog::find(&self.env.registry, &args.id)?;
            let report = catalog::evaluate_identity(ident, &asg, &params, Default::default())?;
            let code = if report.equal { exit::OK } else { exit::INEQUALITY };
            let text = format!(
                "{} [{}]: lhs = {}, rhs = {}, {}\n",
                report.id,
                report.assignment,
                report.lhs,
                report.rhs,
                if report.equal { "equal" } else { "NOT EQUAL" }
            );
            Ok((code, to_value(&report), text))
        })();
        self.finish(args.out.format, result)
    }

    fn fuzz(&self, args: FuzzArgs) -> Outcome {
        let result = (|| {
            if args.max_index < 0 {
                return Err(Failure::Usage("--max-index must be nonnegative".into()));
            }
            let selected: Vec<Identity<Rational>> = if args.ids == "all" {
                self.env.registry.clone()
            } else {
                args.ids
                    .split(',')
                    .map(|id| catalog::find(&self.env.registry, id.trim()).cloned())
                    .collect::<Result<_, _>>()?
            };
            let sampler = SamplerConfig {
                max_component: args.max_component,
                ..SamplerConfig::symmetric(args.max_index)
            };
            let report = catalog::fuzz_identities(&selected, args.trials as usize, sampler, args.seed);
            let code = if report.all_passed() { exit::OK } else { exit::INEQUALITY };
            let mut text = String::new();
            for t in &report.tallies {
                text.push_str(&format!("{:<9} {}/{}", t.id, t.passed, t.trials));
                if let Some(ce) = &t.counterexample {
                    text.push_str(&format!(
                        "  first failure at trial {}: [{}] lhs = {}, rhs = {}",
                        ce.trial, ce.report.assignment, ce.report.lhs, ce.report.rhs
                    ));
                }
                text.push('\n');
            }
            let failing = report.tallies.iter().filter(|t| t.passed < t.trials).count();
            text.push_str(&format!(
                "{} identities, {} trials, seed {}: {}\n",
                report.tallies.len(),
                report.trials,
                report.seed,
                if failing == 0 { "all passed".to_string() } else { format!("{failing} failing") }
            ));
            Ok((code, to_value(&report), text))
        })();
        self.finish(args.out.format, result)
    }

    fn sum(&self, args: SumArgs) -> Outcome {
        let result = (|| {
            let params = resolve_params(&args.params, self.env)?;
            let sel = TheoremSelector::new(args.theorem, args.variant, args.kind.into())?;
            let asg = parse_sum_assignment(&args.assign)?;
            if args.scan {
                let scan = theorems::singularity_scan(&sel, &params, &asg);
                let singular = scan.iter().any(|e| e.zero);
                let mut text = String::new();
                for e in &scan {
                    text.push_str(&format!("j={} index={}{}\n", e.j, e.index, if e.zero { " zero" } else { "" }));
                }
                text.push_str(if singular { "singular\n" } else { "non-singular\n" });
                let payload = json!({
                    "selector": sel,
                    "assignment": asg,
                    "params": params,
                    "denominators": scan,
                    "singular": singular,
                });
                return Ok((exit::OK, payload, text));
            }
            let report = theorems::theorem_sum(&sel, &params, &asg)?;
            let code = if report.equal { exit::OK } else { exit::INEQUALITY };
            let mut text = format!(
                "{sel} n={} m={} r={} s={} k={}\n  direct      {}\n  closed form {}\n  {:<11} {}\n  {}\n",
                asg.n,
                asg.m,
                asg.r,
                asg.s,
                asg.k,
                report.direct,
                report.closed_form,
                report.lemma_id.to_string(),
                report.lemma,
                if report.equal { "equal" } else { "NOT EQUAL" }
            );
            if report.outside_hypothesis {
                text.push_str("  note: k = 0 lies outside the stated range k >= 1\n");
            }
            Ok((code, to_value(&report), text))
        })();
        self.finish(args.out.format, result)
    }

    fn bench(&self, args: BenchArgs) -> Outcome {
        let result = (|| {
            let p = parse_rational(&args.p)?;
            let q = parse_rational(&args.q)?;
            let run = match args.modulus {
                Some(m) => {
                    DynamicModulus::set(m)?;
                    let params = HoradamParams::new(
                        ModP::from_int(1),
                        ModP::from_int(1),
                        to_mod(&p)?,
                        to_mod(&q)?,
                    )?;
                    bench_run(&params, args.n)
                }
                None => bench_run(&HoradamParams::new(Rational::from_int(0), Rational::from_int(1), p, q)?, args.n),
            };
            let field = args.modulus.map_or("rational".to_string(), |m| format!("mod {m}"));
            let code = if run.agree { exit::OK } else { exit::INEQUALITY };
            let speedup = run.iterative.nanos as f64 / run.doubling.nanos.max(1) as f64;
            let text = format!(
                "n = {} over {field}\n  iterative {:>12} ns  {:>10} steps\n  doubling  {:>12} ns  {:>10} steps\n  speedup   {speedup:.1}x, results {}\n",
                args.n,
                run.iterative.nanos,
                run.iterative.steps,
                run.doubling.nanos,
                run.doubling.steps,
                if run.agree { "agree" } else { "DIFFER" }
            );
            let payload = json!({
                "n": args.n,
                "field": field,
                "iterative": run.iterative,
                "doubling": run.doubling,
                "agree": run.agree,
            });
            Ok((code, payload, text))
        })();
        self.finish(args.out.format, result)
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

#[derive(Serialize)]
struct Timing {
    u: String,
    v: String,
    steps: u64,
    nanos: u128,
}

struct BenchRun {
    iterative: Timing,
    doubling: Timing,
    agree: bool,
}

fn bench_run<T: Scalar>(params: &HoradamParams<T>, n: u64) -> BenchRun {
    let idx = i64::try_from(n).unwrap_or(i64::MAX);
    let start = Instant::now();
    let u_iter = sequences::term(params, SequenceKind::U, idx);
    let v_iter = sequences::term(params, SequenceKind::V, idx);
    let iter_nanos = start.elapsed().as_nanos();
    let start = Instant::now();
    let ((u_fast, v_fast), steps) = sequences::fast_uv_counted(params, n);
    let fast_nanos = start.elapsed().as_nanos();
    let agree = u_iter == u_fast && v_iter == v_fast;
    BenchRun {
        iterative: Timing {
            u: u_iter.to_string(),
            v: v_iter.to_string(),
            // both sequences step n − 1 times
            steps: 2 * n.saturating_sub(1),
            nanos: iter_nanos,
        },
        doubling: Timing {
            u: u_fast.to_string(),
            v: v_fast.to_string(),
            steps: u64::from(steps),
            nanos: fast_nanos,
        },
        agree,
    }
}

fn to_mod(x: &Rational) -> Result<ModP, Error> {
    let num = ModP::from_bigint(x.numer());
    let den = ModP::from_bigint(x.denom())
        .checked_inv()
        .ok_or(Error::InvalidParams("denominator vanishes modulo the prime"))?;
    Ok(num * den)
}

fn parse_field(text: &Option<String>) -> Result<Option<Rational>, Error> {
    text.as_deref().map(parse_rational).transpose()
}

fn load_preset(name: &str, env: &Env) -> Result<HoradamParams<Rational>, Failure> {
    if let Some(params) = sequences::preset(name) {
        return Ok(params);
    }
    let Some(dir) = &env.presets_dir else {
        return Err(Failure::Usage(format!("unknown preset `{name}`")));
    };
    read_preset_file(&dir.join(format!("{name}.preset")))
}

fn read_preset_file(path: &Path) -> Result<HoradamParams<Rational>, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read preset {}: {e}", path.display())))?;
    Ok(sequences::parse_preset(&text)?)
}

/// A preset (by name or file, not both) or Fibonacci supplies the base;
/// `--p --q --a --b` then override individual fields.
fn resolve_params(args: &ParamArgs, env: &Env) -> Result<HoradamParams<Rational>, Failure> {
    let base = match (&args.preset, &args.preset_file) {
        (Some(_), Some(_)) => return Err(Failure::Usage("--preset and --preset-file both given".into())),
        (Some(name), None) => load_preset(name, env)?,
        (None, Some(path)) => read_preset_file(path)?,
        (None, None) => sequences::preset("fibonacci").expect("built-in preset"),
    };
    let pick = |flag: &Option<String>, current: &Rational| -> Result<Rational, Error> {
        Ok(parse_field(flag)?.unwrap_or_else(|| current.clone()))
    };
    Ok(HoradamParams::new(
        pick(&args.a, base.a())?,
        pick(&args.b, base.b())?,
        pick(&args.p, base.p())?,
        pick(&args.q, base.q())?,
    )?)
}

/// `n=4,m=2,r=1,s=0,k=2`, every key exactly once.
fn parse_sum_assignment(text: &str) -> Result<SumAssignment, Failure> {
    let mut slots: [Option<i64>; 5] = [None; 5];
    const KEYS: [&str; 5] = ["n", "m", "r", "s", "k"];
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let bad = || Failure::Core(Error::Assignment(format!("cannot read `{part}`")));
        let (key, value) = part.split_once('=').ok_or_else(bad)?;
        let slot = KEYS.iter().position(|k| *k == key.trim()).ok_or_else(bad)?;
        let value: i64 = value.trim().parse().map_err(|_| bad())?;
        if slots[slot].replace(value).is_some() {
            return Err(bad());
        }
    }
    let get = |i: usize| {
        slots[i].ok_or_else(|| Failure::Core(Error::Assignment(format!("missing `{}`", KEYS[i]))))
    };
    Ok(SumAssignment::new(get(0)?, get(1)?, get(2)?, get(3)?, get(4)?))
}
