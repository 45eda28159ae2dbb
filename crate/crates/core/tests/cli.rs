use std::process::Command;

use csf::cli::{self, main_with_args, run_with_registry};
use csf::registry::Registry;

fn csf(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = main_with_args(
        std::iter::once("csf").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json(args: &[&str]) -> serde_json::Value {
    let (_, out, err) = csf(args);
    serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out} {err}"))
}

#[test]
fn run_v3_strict() {
    let (code, out, _) = csf(&["run", "v3", "--n", "5", "--mode", "strict"]);
    assert_eq!(code, 0);
    assert!(out.contains("= 125"), "{out}");
}

#[test]
fn run_v3_zero_has_no_iterations() {
    let v = json(&["run", "v3", "--n", "0", "--format", "json"]);
    assert_eq!(v["result"], 0);
    let (_, csv, _) = csf(&["run", "v3", "--n", "0", "--format", "csv"]);
    let row: Vec<&str> = csv.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[8], "0");
}

#[test]
fn run_getmax_array() {
    let v = json(&["run", "getmax", "--array", "1,5,3", "--format", "json"]);
    assert_eq!(v["result"], 5);
}

#[test]
fn run_report_has_exact_fields() {
    let v = json(&[
        "run",
        "v5",
        "--n",
        "10",
        "--trace",
        "iterations",
        "--format",
        "json",
    ]);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    let mut expected = [
        "algorithm",
        "params",
        "mode",
        "result",
        "counters",
        "violations",
        "trace",
    ];
    expected.sort();
    let mut keys = keys;
    keys.sort();
    assert_eq!(keys, expected);
    assert_eq!(v["algorithm"], "v5");
    assert_eq!(v["mode"], "strict");
    assert_eq!(v["result"], 1000);
    assert_eq!(v["violations"].as_array().unwrap().len(), 0);
    assert!(!v["trace"].as_array().unwrap().is_empty());
}

#[test]
fn structured_output_is_byte_identical() {
    let args = [
        "run",
        "getbin",
        "--n",
        "77",
        "--trace",
        "iterations",
        "--format",
        "json",
    ];
    assert_eq!(csf(&args).1, csf(&args).1);
}

#[test]
fn trace_levels_grow() {
    let count = |level| {
        json(&[
            "run", "v3", "--n", "6", "--trace", level, "--format", "json",
        ])["trace"]
            .as_array()
            .unwrap()
            .len()
    };
    assert_eq!(count("none"), 0);
    assert!(count("blocks") < count("iterations"));
}

#[test]
fn unknown_procedure_lists_names() {
    let (code, _, err) = csf(&["run", "v9", "--n", "3"]);
    assert_eq!(code, cli::EXIT_USAGE);
    assert!(err.contains("v3") && err.contains("getbin"), "{err}");
}

#[test]
fn missing_input_is_usage_error() {
    assert_eq!(csf(&["run", "pow", "--n", "3"]).0, cli::EXIT_USAGE);
    assert_eq!(csf(&["run", "v3"]).0, cli::EXIT_USAGE);
    assert_eq!(csf(&["frobnicate"]).0, cli::EXIT_USAGE);
}

#[test]
fn refused_precondition_and_overflow_codes() {
    assert_eq!(
        csf(&["run", "getmax", "--array", ""]).0,
        cli::EXIT_PRECONDITION
    );
    assert_eq!(
        csf(&["run", "getbin", "--n", "0"]).0,
        cli::EXIT_PRECONDITION
    );
    assert_eq!(
        csf(&["run", "v3", "--n", "2097152", "--mode", "off"]).0,
        cli::EXIT_OVERFLOW
    );
    assert_eq!(
        csf(&["run", "pow", "--n", "2", "--m", "63"]).0,
        cli::EXIT_OVERFLOW
    );
}

#[test]
fn exit_codes_are_distinct() {
    let codes = [
        cli::EXIT_OK,
        cli::EXIT_INTERNAL,
        cli::EXIT_USAGE,
        cli::EXIT_VIOLATION,
        cli::EXIT_INSUFFICIENT,
        cli::EXIT_OVERFLOW,
        cli::EXIT_NONTERMINATION,
        cli::EXIT_BUDGET,
        cli::EXIT_PRECONDITION,
        cli::EXIT_MISMATCH,
    ];
    let mut sorted = codes.to_vec();
    sorted.dedup();
    assert_eq!(sorted.len(), codes.len());
    let (_, help, _) = csf(&["--help"]);
    for c in &codes[1..] {
        assert!(help.contains(&format!("  {c}  ")), "code {c} undocumented");
    }
}

#[test]
fn bench_csv_header_and_counts() {
    let (code, out, _) = csf(&["bench", "v3,v5", "--n", "1024", "--verify"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(
        lines.next(),
        Some("algorithm,n,result,adds,subs,compares,selects,iterations")
    );
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows[0][0], "v3");
    assert_eq!(rows[0][7], "1024");
    assert_eq!(rows[1][0], "v5");
    assert_eq!(rows[1][7], "10");
}

#[test]
fn bench_small_cases() {
    let (_, out, _) = csf(&["bench", "v1", "--n", "1"]);
    assert_eq!(out.lines().nth(1), Some("v1,1,1,2,2,4,0,1"));
    let (_, out, _) = csf(&["bench", "v3", "--n", "10"]);
    let row: Vec<&str> = out.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(row[3], "40");
}

#[test]
fn bench_rows_keep_input_order_and_mark_overflow() {
    let (code, out, _) = csf(&["bench", "v5,v2", "--n", "3000000,0..3", "--verify"]);
    assert_eq!(code, 0);
    let firsts: Vec<String> = out
        .lines()
        .skip(1)
        .map(|l| l.split(',').take(3).collect::<Vec<_>>().join(","))
        .collect();
    assert_eq!(
        firsts,
        [
            "v5,3000000,overflow",
            "v5,0,0",
            "v5,1,1",
            "v5,2,8",
            "v5,3,27",
            "v2,3000000,overflow",
            "v2,0,0",
            "v2,1,1",
            "v2,2,8",
            "v2,3,27"
        ]
    );
}

#[test]
fn bench_verifies_every_procedure() {
    let (code, _, err) = csf(&[
        "bench",
        "v1,v2,v3,v4,v5,getbin,getmax,pow",
        "--n",
        "1..40",
        "--verify",
        "--m",
        "4",
    ]);
    assert_eq!(code, 0, "{err}");
}

#[test]
fn check_plan_v3() {
    let (code, out, _) = csf(&["check-plan", "v3", "--bound", "8"]);
    assert_eq!(code, 0);
    assert!(out.contains("v3: sufficient"), "{out}");
    assert!(out.contains("Quadratic pragmatic: yes"));
    assert!(out.contains("Linear pragmatic: yes"));
}

#[test]
fn check_plan_v3_without_cube() {
    let (code, out, _) = csf(&["check-plan", "v3", "--drop", "Cube", "--bound", "8"]);
    assert_eq!(code, cli::EXIT_INSUFFICIENT);
    assert!(out.contains("insufficient"));
    assert!(
        out.contains("counterexample: params {N=0}, state {c=1, l=6, q=1, r=0}"),
        "{out}"
    );
}

#[test]
fn check_plan_v2_and_unknown_label() {
    assert_eq!(csf(&["check-plan", "v2", "--bound", "8"]).0, 0);
    let (code, _, err) = csf(&["check-plan", "v2", "--drop", "Nope"]);
    assert_eq!(code, cli::EXIT_USAGE);
    assert!(err.contains("Particularized"), "{err}");
}

#[test]
fn check_plan_json() {
    let v = json(&[
        "check-plan",
        "v3",
        "--drop",
        "Particularized",
        "--format",
        "json",
    ]);
    assert_eq!(v["sufficient"], false);
    assert_eq!(v["counterexample"]["params"]["N"], 1);
}

#[test]
fn list_uses_plan_notation() {
    let (code, out, _) = csf(&["list"]);
    assert_eq!(code, 0);
    assert!(out.contains("v3: [SG2 (Quadratic)"), "{out}");
    assert!(out.contains("getbin: SG1> (Log N)"), "{out}");
    for name in ["v1", "v2", "v3", "v4", "v5", "getbin", "getmax", "pow"] {
        assert!(
            out.lines().any(|l| l.starts_with(&format!("{name}  "))),
            "{name}"
        );
    }
}

#[test]
fn list_on_empty_registry() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_with_registry(&Registry::empty(), ["csf", "list"], &mut out, &mut err);
    assert_eq!(code, 0);
    assert!(out.is_empty());
}

#[test]
fn binary_budget_env_and_exit_status() {
    let bin = env!("CARGO_BIN_EXE_csf");
    let status = Command::new(bin)
        .args(["check-plan", "v5"])
        .env("CSF_ENUM_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(cli::EXIT_BUDGET));
    assert!(String::from_utf8_lossy(&status.stderr).contains("budget"));

    let bad = Command::new(bin)
        .args(["check-plan", "v5"])
        .env("CSF_ENUM_BUDGET", "lots")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(cli::EXIT_USAGE));

    let ok = Command::new(bin)
        .args(["run", "v4", "--n", "6"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("= 216"));
}

fn registry_with(procedure: csf::registry::Procedure) -> Registry {
    let mut reg = Registry::builtin();
    reg.register(procedure);
    reg
}

fn run_in(reg: &Registry, args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_with_registry(
        reg,
        std::iter::once("csf").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (code, String::from_utf8(out).unwrap())
}

#[test]
fn violation_exit_status_and_report() {
    let m = csf::mutants::curated()
        .into_iter()
        .find(|m| m.name == "v3-linear-plus-five")
        .unwrap();
    let reg = registry_with(csf::registry::Procedure::new(
        "v3",
        "mutated",
        csf::registry::Input::N,
        m.spec,
        |_, _| csf::csf::DomainBounds::new(),
    ));
    let (code, out) = run_in(&reg, &["run", "v3", "--n", "3", "--format", "json"]);
    assert_eq!(code, cli::EXIT_VIOLATION);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"], serde_json::Value::Null);
    let report = &v["violations"][0];
    assert_eq!(report["block"], 1);
    assert_eq!(report["iteration"], 1);
    assert_eq!(report["failed"], "Linear");
    assert_eq!(report["state"]["l"], 11);
}

#[test]
fn nontermination_exit_status() {
    use csf::csf::{Block, IterationCap, ProcedureSpec};
    let spin = ProcedureSpec::builder("spin")
        .subgoal(csf::csf::Subgoal::new("Done", |_, _| Ok(true)))
        .block(
            Block::looping(
                "while true",
                &[0],
                IterationCap::Fixed(50),
                |_, _, _| Ok(true),
                |_, _, _| Ok(()),
            )
            .with_setup(|_, s, _| {
                s.set("x", 0);
                Ok(())
            }),
        )
        .result("x")
        .build()
        .unwrap();
    let reg = registry_with(csf::registry::Procedure::new(
        "spin",
        "never stops",
        csf::registry::Input::N,
        spin,
        |_, _| csf::csf::DomainBounds::new(),
    ));
    assert_eq!(
        run_in(&reg, &["run", "spin", "--n", "1"]).0,
        cli::EXIT_NONTERMINATION
    );
}
