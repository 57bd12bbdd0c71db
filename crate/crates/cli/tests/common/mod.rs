#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

pub struct Case {
    pub name: &'static str,
    pub argv: &'static [&'static str],
    pub code: i32,
}

pub const CASES: &[Case] = &[
    Case { name: "list", argv: &["list", "--format", "json"], code: 0 },
    Case { name: "eval_fib_u10", argv: &["eval", "--preset", "fibonacci", "--kind", "u", "--n", "10", "--format", "json"], code: 0 },
    Case { name: "eval_lucas_v0", argv: &["eval", "--preset", "fibonacci", "--kind", "v", "--n", "0", "--format", "json"], code: 0 },
    Case { name: "eval_w_negative", argv: &["eval", "--p", "3/2", "--q", "-2", "--a", "1", "--b", "-1/3", "--kind", "w", "--n", "-4", "--method", "doubling", "--format", "json"], code: 0 },
    Case { name: "eval_binet_degenerate", argv: &["eval", "--p", "2", "--q", "1", "--kind", "u", "--n", "5", "--method", "binet", "--format", "json"], code: 3 },
    Case { name: "verify_h", argv: &["verify", "--id", "H", "--preset", "fibonacci", "--assign", "n=1,m=3,r=2,s=0", "--format", "json"], code: 0 },
    Case { name: "verify_h_r_eq_s", argv: &["verify", "--id", "H", "--assign", "n=2,m=4,r=5,s=5", "--format", "json"], code: 0 },
    Case { name: "verify_cor1_33", argv: &["verify", "--id", "cor1.33", "--a", "3", "--b", "2", "--assign", "n=2", "--format", "json"], code: 0 },
    Case { name: "verify_unknown", argv: &["verify", "--id", "nosuch", "--assign", "n=1", "--format", "json"], code: 2 },
    Case { name: "verify_bad_assignment", argv: &["verify", "--id", "H", "--assign", "n=1,m=3", "--format", "json"], code: 2 },
    Case { name: "fuzz_h_single", argv: &["fuzz", "--ids", "H", "--trials", "1", "--seed", "1", "--format", "json"], code: 0 },
    Case { name: "fuzz_all", argv: &["fuzz", "--ids", "all", "--trials", "500", "--seed", "7", "--max-index", "10", "--format", "json"], code: 0 },
    Case { name: "sum_t2", argv: &["sum", "--theorem", "2", "--variant", "1", "--preset", "fibonacci", "--a", "3", "--b", "2", "--assign", "n=4,m=2,r=1,s=0,k=2", "--format", "json"], code: 0 },
    Case { name: "sum_t6_w", argv: &["sum", "--theorem", "6", "--variant", "3", "--p", "2", "--q", "3/5", "--a", "1", "--b", "-1/2", "--assign", "n=5,m=-1,r=2,s=-3,k=3", "--format", "json"], code: 0 },
    Case { name: "sum_t5_singular", argv: &["sum", "--theorem", "5", "--variant", "1", "--preset", "fibonacci", "--assign", "n=2,m=2,r=1,s=0,k=2", "--format", "json"], code: 5 },
    Case { name: "sum_t5_scan", argv: &["sum", "--theorem", "5", "--variant", "1", "--preset", "fibonacci", "--assign", "n=2,m=2,r=1,s=0,k=2", "--scan", "--format", "json"], code: 0 },
    Case { name: "sum_guard", argv: &["sum", "--theorem", "2", "--variant", "1", "--assign", "n=4,m=2,r=1,s=1,k=2", "--format", "json"], code: 6 },
    Case { name: "sum_bad_variant", argv: &["sum", "--theorem", "3", "--variant", "3", "--assign", "n=4,m=2,r=1,s=0,k=2", "--format", "json"], code: 2 },
    Case { name: "bench_composite", argv: &["bench", "--mod", "10", "--format", "json"], code: 2 },
];

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn horadam(argv: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_horadam"))
        .args(argv)
        .env_remove("HORADAM_PRESETS")
        .output()
        .expect("binary runs")
}

/// Returns a description of the first mismatch, or None.
pub fn check_case(case: &Case, bless: bool) -> Option<String> {
    let out = horadam(case.argv);
    let code = out.status.code().unwrap_or(-1);
    if code != case.code {
        return Some(format!("{}: exit {code}, expected {}", case.name, case.code));
    }
    if code == 0 && !out.stderr.is_empty() {
        return Some(format!("{}: success wrote to stderr", case.name));
    }
    let path = golden_dir().join(format!("{}.json", case.name));
    if bless {
        std::fs::write(&path, &out.stdout).unwrap();
    }
    let expected = match std::fs::read(&path) {
        Ok(bytes) => bytes,
        Err(_) => return Some(format!("{}: missing golden {}", case.name, path.display())),
    };
    if out.stdout != expected {
        return Some(format!("{}: output differs from {}", case.name, path.display()));
    }
    None
}

pub fn blessing() -> bool {
    std::env::var_os("HORADAM_BLESS").is_some()
}
