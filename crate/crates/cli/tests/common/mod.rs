//! Golden-file cases shared by the CLI tests and the acceptance suite.
//!
//! Set `UPDATE_GOLDEN=1` to rewrite `tests/golden/*.out` from the current
//! binary.

#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

pub const BIN: &str = env!("CARGO_BIN_EXE_euler-scan");

pub struct Case {
    pub name: &'static str,
    pub fixture: Option<&'static str>,
    pub args: &'static [&'static str],
    pub code: i32,
}

const fn case(name: &'static str, fixture: &'static str, args: &'static [&'static str]) -> Case {
    Case {
        name,
        fixture: Some(fixture),
        args,
        code: 0,
    }
}

pub const FIXTURES: &[&str] = &["network11", "phat", "antichain3", "chain5", "empty"];

pub const CASES: &[Case] = &[
    case("network11_chi", "network11", &["chi"]),
    case("network11_chi_json", "network11", &["chi", "--json"]),
    case(
        "network11_integrate_h",
        "network11",
        &["integrate", "--function", "h"],
    ),
    case(
        "network11_integrate_h_json",
        "network11",
        &["integrate", "--function", "h", "--json"],
    ),
    case(
        "network11_integrate_h_t2",
        "network11",
        &["integrate", "--function", "h_t2"],
    ),
    case(
        "network11_integrate_h_b3",
        "network11",
        &["integrate", "--function", "h_b3", "--route", "mobius"],
    ),
    case(
        "network11_integrate_one",
        "network11",
        &["integrate", "--function", "one", "--route", "mobius"],
    ),
    case(
        "network11_reduce_chi_asc",
        "network11",
        &["reduce", "--mode", "chi", "--tie-break", "asc"],
    ),
    case(
        "network11_reduce_chi_desc",
        "network11",
        &["reduce", "--mode", "chi", "--tie-break", "desc"],
    ),
    case(
        "network11_reduce_chi_json",
        "network11",
        &["reduce", "--mode", "chi", "--json"],
    ),
    case(
        "network11_reduce_core",
        "network11",
        &["reduce", "--mode", "core"],
    ),
    case(
        "network11_dot_h",
        "network11",
        &["export-dot", "--function", "h"],
    ),
    case("network11_dot", "network11", &["export-dot"]),
    case("phat_chi", "phat", &["chi"]),
    case("phat_reduce_chi", "phat", &["reduce", "--mode", "chi"]),
    case("phat_reduce_core", "phat", &["reduce", "--mode", "core"]),
    case("phat_dot", "phat", &["export-dot"]),
    case("antichain3_chi", "antichain3", &["chi"]),
    case(
        "antichain3_reduce_core",
        "antichain3",
        &["reduce", "--mode", "core"],
    ),
    case("antichain3_dot", "antichain3", &["export-dot"]),
    case("chain5_chi", "chain5", &["chi"]),
    case(
        "chain5_reduce_core",
        "chain5",
        &["reduce", "--mode", "core"],
    ),
    case(
        "chain5_integrate_rank",
        "chain5",
        &["integrate", "--function", "rank"],
    ),
    case(
        "chain5_dot_rank",
        "chain5",
        &["export-dot", "--function", "rank"],
    ),
    case("empty_chi", "empty", &["chi"]),
    case("empty_reduce_chi", "empty", &["reduce", "--mode", "chi"]),
    case("empty_dot", "empty", &["export-dot"]),
    Case {
        name: "simulate_seed7",
        fixture: None,
        args: &[
            "simulate",
            "--layers",
            "4x4x3",
            "--targets",
            "10",
            "--corrupt",
            "chi-points",
            "--seed",
            "7",
        ],
        code: 0,
    },
    Case {
        name: "simulate_seed7_json",
        fixture: None,
        args: &[
            "simulate",
            "--layers",
            "4x4x3",
            "--targets",
            "10",
            "--corrupt",
            "chi-points",
            "--seed",
            "7",
            "--json",
        ],
        code: 0,
    },
    Case {
        name: "simulate_no_targets",
        fixture: None,
        args: &[
            "simulate",
            "--targets",
            "0",
            "--corrupt",
            "chi-points",
            "--seed",
            "3",
        ],
        code: 0,
    },
    // Element 10 is maximal, so it is never a chi-point.
    Case {
        name: "simulate_top_corrupted",
        fixture: None,
        args: &[
            "simulate",
            "--targets",
            "10",
            "--corrupt",
            "10=50",
            "--seed",
            "7",
        ],
        code: 2,
    },
];

pub fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn fixture_path(name: &str) -> PathBuf {
    crate_dir()
        .join("tests/fixtures")
        .join(format!("{name}.json"))
}

pub fn golden_path(name: &str) -> PathBuf {
    crate_dir().join("tests/golden").join(format!("{name}.out"))
}

/// Exit code and stdout.
pub fn run_case(case: &Case) -> (i32, Vec<u8>) {
    let mut cmd = Command::new(BIN);
    cmd.args(case.args);
    if let Some(f) = case.fixture {
        cmd.arg("--input").arg(fixture_path(f));
    }
    let out = cmd.output().expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

/// Runs every case twice. Returns one message per mismatch.
pub fn check_goldens() -> Vec<String> {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut problems = Vec::new();
    for case in CASES {
        let (code, out) = run_case(case);
        let (code2, out2) = run_case(case);
        if code != case.code || code2 != case.code {
            problems.push(format!(
                "{}: exit {code}/{code2}, expected {}",
                case.name, case.code
            ));
        }
        if out != out2 {
            problems.push(format!("{}: output differs between runs", case.name));
        }
        let path = golden_path(case.name);
        if update {
            std::fs::write(&path, &out).expect("golden written");
            continue;
        }
        match std::fs::read(&path) {
            Ok(expected) if expected == out => {}
            Ok(_) => problems.push(format!("{}: differs from {}", case.name, path.display())),
            Err(e) => problems.push(format!("{}: {e}", path.display())),
        }
    }
    problems
}
