use std::path::{Path, PathBuf};
use std::process::Command;

use weaknet::cli::{run_cli, EXIT_INVALID, EXIT_OK, EXIT_STEP_LIMIT, EXIT_STUCK};
use weaknet::fixtures;

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let path = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

struct Output {
    code: i32,
    out: String,
    err: String,
}

fn cli(args: &[&str]) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_cli(
        std::iter::once("weaknet").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    Output {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

#[test]
fn check_accepts_fixtures() {
    for f in ["omega.inet", "add.inet"] {
        let o = cli(&["check", &fixture(f)]);
        assert_eq!(o.code, EXIT_OK, "{}", o.err);
        assert!(o.out.is_empty() && o.err.is_empty());
    }
}

#[test]
fn check_reports_diagnostics_with_positions() {
    let p = scratch("needed_name.inet", "agent A/0\nnet { !x = A; }\n");
    let o = cli(&["check", p.to_str().unwrap()]);
    assert_eq!(o.code, EXIT_INVALID);
    assert!(o.err.contains("needed_name.inet:2:7: error[NeededOnName]"), "{}", o.err);

    let p = scratch("linearity.inet", "agent A/1 agent B/0\nrule A[n] >< B[]\n");
    let o = cli(&["check", p.to_str().unwrap()]);
    assert_eq!(o.code, EXIT_INVALID);
    assert!(o.err.contains("error[NameLinearity]"), "{}", o.err);
    assert!(o.err.contains("linearity.inet:2:"), "{}", o.err);

    let o = cli(&["check", "/nonexistent/file.inet"]);
    assert_eq!(o.code, EXIT_INVALID);
}

#[test]
fn run_omega() {
    let o = cli(&["run", &fixture("omega.inet")]);
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(o.out, "!P = Alxx;\n");
    assert!(o.err.is_empty());

    let o = cli(&["run", &fixture("omega.inet"), "--mode", "full"]);
    assert_eq!(o.out, "P = Alxx;\n");
}

#[test]
fn run_add_full_canonical() {
    let o = cli(&["run", &fixture("add.inet"), "--mode", "full", "--canon"]);
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(o.out, "Res = S(S(Z));\n");
}

#[test]
fn run_add_needed_canonical() {
    let o = cli(&["run", &fixture("add.inet"), "--canon"]);
    assert_eq!(o.code, EXIT_OK);
    let mut lines: Vec<&str> = o.out.lines().collect();
    lines.sort_unstable();
    assert_eq!(lines, ["!Res = S(n0);", "S(Z) = n1;", "Z = Add(n0, n1);"]);
}

#[test]
fn step_limit_exit_code() {
    let o = cli(&["run", &fixture("omega.inet"), "--max-steps", "3"]);
    assert_eq!(o.code, EXIT_STEP_LIMIT);
    assert_eq!(o.out, "Dup(x, App(x, y)) = Ax;\ny = R1(!P);\n");
    assert!(o.err.contains("step limit"));
}

#[test]
fn strict_rules_exit_code() {
    let o = cli(&["run", &fixture("omega.inet"), "--strict-rules"]);
    assert_eq!(o.code, EXIT_STUCK);
    assert!(o.err.contains("P >< Alxx") || o.err.contains("Alxx >< P"), "{}", o.err);

    // Without strict rules the same pair is a normal result.
    let o = cli(&["run", &fixture("omega.inet")]);
    assert_eq!(o.code, EXIT_OK);
}

#[test]
fn stats_file_and_trace() {
    let stats = Path::new(env!("CARGO_TARGET_TMPDIR")).join("omega_stats.json");
    let o = cli(&[
        "run",
        &fixture("omega.inet"),
        "--trace",
        "--stats",
        stats.to_str().unwrap(),
    ]);
    assert_eq!(o.code, EXIT_OK);
    let json = std::fs::read_to_string(&stats).unwrap();
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["interactions"], 5);
    assert_eq!(v["indirections"], 4);
    assert_eq!(v["delegations"], 5);
    assert_eq!(v["steps"], 14);
    assert_eq!(v["status"], "normal");

    let lines: Vec<&str> = o.err.lines().collect();
    assert_eq!(lines.len(), 14);
    for (i, line) in lines.iter().enumerate() {
        let fields: Vec<&str> = line.split('\t').collect();
        assert_eq!(fields.len(), 3, "{line}");
        assert_eq!(fields[0], (i + 1).to_string());
        assert!(["interaction", "indirection", "delegation"].contains(&fields[1]));
    }
    assert_eq!(lines.iter().filter(|l| l.contains("\tinteraction\t")).count(), 5);
}

#[test]
fn repeated_runs_print_identical_bytes() {
    let first = cli(&["run", &fixture("add.inet"), "--canon"]).out;
    for _ in 0..10 {
        assert_eq!(cli(&["run", &fixture("add.inet"), "--canon"]).out, first);
    }
}

#[test]
fn shuffled_runs_agree() {
    for seed in ["1", "7", "42"] {
        let o = cli(&["run", &fixture("omega.inet"), "--shuffle-seed", seed]);
        assert_eq!(o.out, "!P = Alxx;\n");
    }
}

#[test]
fn net_selection() {
    let p = scratch(
        "two_nets.inet",
        "agent A/0 agent B/0\nnet first { A = B; }\nnet second { !B = A; }\n",
    );
    let path = p.to_str().unwrap();
    let o = cli(&["run", path]);
    assert_eq!(o.code, EXIT_INVALID);
    assert!(!o.err.is_empty());
    assert_eq!(cli(&["run", path, "--net", "second"]).out, "!B = A;\n");
    assert_eq!(cli(&["run", path, "--net", "first"]).out, "A = B;\n");
    assert_eq!(cli(&["run", path, "--net", "third"]).code, EXIT_INVALID);
}

#[test]
fn bad_arguments() {
    assert_eq!(cli(&["run", &fixture("omega.inet"), "--mode", "lazy"]).code, EXIT_INVALID);
    assert_eq!(cli(&["frobnicate"]).code, EXIT_INVALID);
    assert_eq!(cli(&["--help"]).code, EXIT_OK);
}

fn bench_field<'a>(out: &'a str, key: &str) -> &'a str {
    out.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix('\t')))
        .unwrap_or_else(|| panic!("missing {key} in {out}"))
}

#[test]
fn bench_reports_steps() {
    let o = cli(&["bench", &fixture("omega.inet"), "--repeat", "100"]);
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(bench_field(&o.out, "runs"), "100");
    assert_eq!(bench_field(&o.out, "steps_per_run"), "14");
    assert_eq!(bench_field(&o.out, "total_steps"), "1400");
    assert!(o.out.contains("# timing\n"));
}

#[test]
fn bench_chain_ops_bound_is_depth_independent() {
    let mut ops = Vec::new();
    for depth in [10, 1000] {
        let p = scratch(&format!("chain_{depth}.inet"), &fixtures::delegation_chain(depth));
        let o = cli(&["bench", p.to_str().unwrap()]);
        assert_eq!(bench_field(&o.out, "steps_per_run"), (2 * depth + 1).to_string());
        ops.push(bench_field(&o.out, "max_ops_per_step").to_string());
    }
    assert_eq!(ops[0], ops[1]);
}

#[test]
fn gen_chain_matches_generator() {
    let o = cli(&["gen-chain", "3"]);
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(o.out, fixtures::delegation_chain(3));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_weaknet");
    let o = Command::new(bin).args(["run", &fixture("omega.inet")]).output().unwrap();
    assert_eq!(o.status.code(), Some(EXIT_OK));
    assert_eq!(String::from_utf8_lossy(&o.stdout), "!P = Alxx;\n");

    let o = Command::new(bin)
        .args(["run", &fixture("omega.inet"), "--max-steps", "3"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(EXIT_STEP_LIMIT));

    let o = Command::new(bin)
        .args(["run", &fixture("omega.inet"), "--strict-rules"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(EXIT_STUCK));

    let o = Command::new(bin).args(["check", "/nonexistent.inet"]).output().unwrap();
    assert_eq!(o.status.code(), Some(EXIT_INVALID));
}

#[test]
fn binary_handles_deep_chains() {
    let p = scratch("chain_10000.inet", &fixtures::delegation_chain(10_000));
    let o = Command::new(env!("CARGO_BIN_EXE_weaknet"))
        .args(["run", p.to_str().unwrap(), "--canon"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(EXIT_OK), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(String::from_utf8_lossy(&o.stdout), "!L = E;\n");
}
