use std::path::PathBuf;

use horadam::catalog::{
    check_derivation, draw_params, evaluate, evaluate_identity, find, fuzz, manifest_markdown, registry, Assignment,
    Indices, SamplerConfig, Var,
};
use horadam::sequences::preset;
use horadam::{DynamicModulus, HoradamParams, ModP, Rational, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Q = Rational;

fn fib() -> HoradamParams<Q> {
    preset("fibonacci").unwrap()
}

fn asg(text: &str) -> Assignment {
    Assignment::parse(text).unwrap()
}

#[test]
fn classical_fibonacci_identities() {
    // Catalan: F_{n−m}F_{n+m} = F_n² − (−1)^{n−m}F_m², e.g. F_2·F_8 = 1·21 = 25 − 4
    let r = evaluate("cor2.70", &asg("n=5,m=3"), &fib()).unwrap();
    assert_eq!(r.lhs, Q::from_int(21));
    assert!(r.equal);
    // L_n² = L_{2n} + 2(−1)^n: L_5 = 11, L_10 = 123
    let r = evaluate("cor2.63", &asg("n=5"), &fib()).unwrap();
    assert_eq!(r.lhs, Q::from_int(121));
    assert_eq!(r.rhs, Q::from_int(121));
    // F_{2n} = F_n·L_n: F_12 = 144 = 8·18
    let r = evaluate("dbl.10", &asg("n=6"), &fib()).unwrap();
    assert_eq!(r.rhs, Q::from_int(144));
    // 5·F_m·F_n = L_{n+m} − (−1)^m L_{n−m}: 5·2·5 = L_8 + L_2 = 47 + 3
    let r = evaluate("mul.16", &asg("n=5,m=3"), &fib()).unwrap();
    assert_eq!(r.lhs, Q::from_int(50));
    assert!(r.equal);
}

#[test]
fn every_identity_holds_at_fixed_mixed_sign_indices() {
    let params = HoradamParams::<Q>::new(Q::from_ratio(-7, 2), Q::from_ratio(5, 3), Q::from_ratio(-2, 9), Q::from_ratio(4, 7)).unwrap();
    let full = Indices { n: -4, m: 6, r: -3, s: 2, t: -5, j: 3 };
    for ident in registry::<Q>() {
        let a = Assignment::project(&full, ident.vars);
        let report = evaluate(ident.id, &a, &params).unwrap();
        assert!(report.equal, "{} at {a}", ident.id);
    }
}

#[test]
fn identities_hold_in_a_prime_field() {
    DynamicModulus::set(1_000_003).unwrap();
    let report = fuzz::<ModP>(&["all"], 40, SamplerConfig::default(), 5).unwrap();
    for t in &report.tallies {
        assert_eq!(t.passed, t.trials, "{}", t.id);
    }
}

#[test]
fn derivations_are_consistent() {
    let reg = registry::<Q>();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut exact = 0;
    let mut implied = 0;
    for _ in 0..25 {
        let params = draw_params::<Q>(&mut rng, 9);
        let full = Indices {
            n: rng.gen_range(-8..=8),
            m: rng.gen_range(-8..=8),
            r: rng.gen_range(-8..=8),
            s: rng.gen_range(-8..=8),
            t: rng.gen_range(-8..=8),
            j: rng.gen_range(-8..=8),
        };
        for ident in &reg {
            let a = Assignment::project(&full, ident.vars);
            let Some(check) = check_derivation(&reg, ident, &a, &params).unwrap() else {
                continue;
            };
            assert!(check.source.equal, "{} from {}", ident.id, check.source.id);
            match check.sides_match {
                Some(true) => exact += 1,
                Some(false) => panic!("{} does not coincide with {} at {a}", ident.id, check.source.id),
                None => implied += 1,
            }
        }
    }
    assert!(exact > 0 && implied > 0);
}

#[test]
fn derived_entries_are_recorded() {
    let reg = registry::<Q>();
    let source = |id: &str| find(&reg, id).unwrap().derivation.map(|d| d.source);
    for (id, from) in [
        ("F", "H"),
        ("G", "H"),
        ("J", "H"),
        ("spec.21", "H"),
        ("spec.28", "J"),
        ("cor1.35", "H"),
        ("cor1.46", "F"),
        ("cor1.59", "H"),
        ("cor1.62", "J"),
        ("cor2.71", "cor1.45"),
        ("cor2.74", "cor1.52"),
    ] {
        assert_eq!(source(id), Some(from), "{id}");
    }
    // every specialization is an exact copy of a master identity
    for ident in reg.iter().filter(|i| i.id.starts_with("spec.")) {
        let d = ident.derivation.unwrap();
        assert!(d.exact && d.kind.is_some(), "{}", ident.id);
    }
}

#[test]
fn remark_substitution_for_cor1_46_changes_the_left_side() {
    // r = 0, s = −m in F gives u_m·w_{n+m} on the left, not u_{n−m}·w_{n+m};
    // the registered derivation uses s = m − n.
    let reg = registry::<Q>();
    let params = HoradamParams::<Q>::new(Q::from_int(3), Q::from_int(-2), Q::from_ratio(5, 4), Q::from_ratio(-3, 2)).unwrap();
    let f = find(&reg, "F").unwrap();
    let (n, m) = (3, 2);
    let remark = Assignment::project(&Indices { n, m, r: 0, s: -m, ..Default::default() }, f.vars);
    let printed = evaluate_identity(f, &remark, &params, Default::default()).unwrap();
    let target = evaluate("cor1.46", &asg(&format!("n={n},m={m}")), &params).unwrap();
    assert!(printed.equal && target.equal);
    assert_ne!(printed.lhs, target.lhs);
}

#[test]
fn assignments_follow_signatures() {
    for ident in registry::<Q>() {
        let full = Indices { n: 1, m: 2, r: 3, s: 4, t: 5, j: 6 };
        let a = Assignment::project(&full, ident.vars);
        assert_eq!(a.vars().collect::<Vec<Var>>(), ident.vars.to_vec());
        assert!(evaluate(ident.id, &a, &fib()).is_ok());
        let extra = a.clone().with(if ident.vars.contains(&Var::J) { Var::T } else { Var::J }, 0);
        if !ident.vars.contains(&Var::J) || !ident.vars.contains(&Var::T) {
            assert!(evaluate(ident.id, &extra, &fib()).is_err(), "{}", ident.id);
        }
    }
}

#[test]
fn fuzz_counts_are_seed_stable() {
    let a = fuzz::<Q>(&["all"], 30, SamplerConfig::symmetric(6), 1234).unwrap();
    let b = fuzz::<Q>(&["all"], 30, SamplerConfig::symmetric(6), 1234).unwrap();
    assert_eq!(a, b);
    assert!(a.all_passed());
    assert_eq!(a.tallies.len(), registry::<Q>().len());
}

#[test]
fn manifest_document_is_current() {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/IDENTITIES.md");
    let header = "# Identity registry\n\nGenerated from the registry; `cargo test` fails if it drifts.\n\n";
    let expected = format!("{header}{}", manifest_markdown());
    if std::env::var_os("HORADAM_BLESS").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, &expected).unwrap();
    }
    let actual = std::fs::read_to_string(&path).expect("docs/IDENTITIES.md exists");
    assert_eq!(actual, expected);
    let rows = actual.lines().filter(|l| l.starts_with("| `")).count();
    assert_eq!(rows, registry::<Q>().len());
}
