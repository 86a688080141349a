//! The benchmark harness driving real and scripted solvers.

use std::fs;
use std::os::unix::fs::PermissionsExt;
use std::path::{Path, PathBuf};
use std::process::Command;

use fpcp_cli::harness::{cross_validate, run_suite, write_csv, HarnessError, SuiteOptions, XCheck};
use fpcp_core::pipeline::{Preset, Verdict};

const SAT: &str = "(set-logic QF_FP)
(set-info :status sat)
(declare-fun x () Float16)
(assert (fp.gt (fp.mul RNE x x) (fp #b0 #b10000 #b0000000000)))
(check-sat)
";

const UNSAT: &str = "(set-logic QF_FP)
(set-info :status unsat)
(declare-fun x () Float16)
(assert (fp.lt (fp.mul RNE x x) (_ -zero 5 11)))
(check-sat)
";

fn opts(solver: PathBuf, configs: Vec<Preset>) -> SuiteOptions {
    SuiteOptions {
        solver,
        configs,
        timeout: 10.0,
        jobs: 2,
        xcheck: None,
    }
}

fn fpcp() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_fpcp"))
}

fn corpus(dir: &Path) {
    fs::write(dir.join("a_sat.smt2"), SAT).unwrap();
    fs::write(dir.join("b_unsat.smt2"), UNSAT).unwrap();
    fs::write(dir.join("notes.txt"), "ignored").unwrap();
}

/// A stand-in solver: a shell script printing `body`'s output.
fn script_solver(dir: &Path, body: &str) -> PathBuf {
    let p = dir.join("fake-solver.sh");
    fs::write(&p, format!("#!/bin/sh\n{body}\n")).unwrap();
    fs::set_permissions(&p, fs::Permissions::from_mode(0o755)).unwrap();
    p
}

#[test]
fn empty_directory_gives_an_empty_table() {
    let dir = tempfile::tempdir().unwrap();
    let (records, table) = run_suite(dir.path(), &opts(fpcp(), vec![Preset::DivCseCy])).unwrap();
    assert!(records.is_empty());
    let text = table.render();
    assert!(text.contains("ALL"), "{text}");
}

#[test]
fn suite_categorizes_and_writes_one_csv_row_per_run() {
    let dir = tempfile::tempdir().unwrap();
    corpus(dir.path());
    let configs = vec![Preset::None, Preset::DivCseCy];
    let (records, table) = run_suite(dir.path(), &opts(fpcp(), configs.clone())).unwrap();
    assert_eq!(records.len(), 2);
    assert!(records[0].runs.iter().all(|r| r.verdict == Verdict::Sat && r.model.contains("define-fun")));
    assert!(records[1].runs.iter().all(|r| r.verdict == Verdict::Unsat));
    for c in configs {
        assert!(table.column(c).is_some());
    }
    let mut buf = Vec::new();
    write_csv(&mut buf, &records).unwrap();
    let mut rd = csv::Reader::from_reader(buf.as_slice());
    assert_eq!(
        rd.headers().unwrap().iter().collect::<Vec<_>>(),
        ["instance", "config", "verdict", "seconds", "nodes", "validated"]
    );
    assert_eq!(rd.records().count(), 4);
}

#[test]
fn contradicting_the_declared_status_raises_an_alarm() {
    let dir = tempfile::tempdir().unwrap();
    corpus(dir.path());
    let liar = script_solver(dir.path(), "echo unsat");
    match run_suite(dir.path(), &opts(liar, vec![Preset::DivCseCy])) {
        Err(HarnessError::SoundnessAlarm { instance, .. }) => assert!(instance.contains("a_sat")),
        other => panic!("expected an alarm, got {other:?}"),
    }
}

#[test]
fn hung_solver_is_killed_and_counted_unknown() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("x.smt2"), "(check-sat)\n").unwrap();
    let sleeper = script_solver(dir.path(), "exec sleep 30");
    let mut o = opts(sleeper, vec![Preset::DivCseCy]);
    o.timeout = 0.2;
    let (records, _) = run_suite(dir.path(), &o).unwrap();
    let run = &records[0].runs[0];
    assert_eq!(run.verdict, Verdict::Unknown);
    assert!(run.seconds < 5.0, "{}", run.seconds);
}

#[test]
fn garbage_output_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    corpus(dir.path());
    let noisy = script_solver(dir.path(), "echo hello");
    assert!(matches!(
        run_suite(dir.path(), &opts(noisy, vec![Preset::None])),
        Err(HarnessError::BadOutput { .. })
    ));
}

fn z3_present() -> bool {
    Command::new("z3").arg("-version").output().is_ok()
}

#[test]
fn external_check_accepts_real_models_and_rejects_corrupted_ones() {
    if !z3_present() {
        eprintln!("z3 not on PATH; cross-check outcome limited to SKIP");
        assert_eq!(cross_validate(SAT, "", "z3 {}").unwrap(), XCheck::Skip);
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    corpus(dir.path());
    let mut o = opts(fpcp(), vec![Preset::DivCseCy]);
    o.xcheck = Some("z3 {}".into());
    let (records, _) = run_suite(dir.path(), &o).unwrap();
    let run = &records[0].runs[0];
    assert_eq!(run.validated, Some(XCheck::Pass));
    assert_eq!(records[1].runs[0].validated, None);
    let zero = "(define-fun x () (_ FloatingPoint 5 11) (_ +zero 5 11))";
    assert_eq!(cross_validate(SAT, zero, "z3 {}").unwrap(), XCheck::Fail);
}

#[test]
fn missing_external_solver_is_a_skip() {
    let model = "(define-fun x () (_ FloatingPoint 5 11) (_ +zero 5 11))";
    assert_eq!(cross_validate(SAT, model, "no-such-solver-binary {}").unwrap(), XCheck::Skip);
}

#[test]
fn bench_binary_prints_table_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("inst");
    fs::create_dir(&inst).unwrap();
    corpus(&inst);
    let csv_path = dir.path().join("out.csv");
    let o = Command::new(env!("CARGO_BIN_EXE_fpcp-bench"))
        .args(["--dir", &inst.display().to_string(), "--configs", "DIV,CSE", "--timeout", "10"])
        .args(["--csv", &csv_path.display().to_string()])
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let table = String::from_utf8_lossy(&o.stdout);
    for row in ["SAT", "UNSAT", "ALL"] {
        assert!(table.contains(row), "{table}");
    }
    assert_eq!(fs::read_to_string(csv_path).unwrap().lines().count(), 5);
}
