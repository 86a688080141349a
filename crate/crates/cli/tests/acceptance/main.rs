//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails. An optional argument selects criteria by substring.

mod oracle;

use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use fpcp_cli::corpus::{random_instance, RandomSpec};
use fpcp_cli::harness::{categorize, cross_validate, run_suite, SuiteOptions, XCheck};
use fpcp_core::domain::middle;
use fpcp_core::eval::{brute_force, check_m0, check_m1, values_of, Value};
use fpcp_core::pipeline::{build_models, print_model, solve_script, Preset, SolverConfig, Verdict};
use fpcp_core::rewrite::{
    decompose, detect_ineq_cycle, factor_cse, inline_closure, ArithOp, CycleVerdict, Domain, ElemConstraint, Lit,
    PredKind, Rel, UnaryOp,
};
use fpcp_core::smtlib::{parse_str, ModelM0, TermKind, VarId};
use fpcp_core::{FpDomain, FpFormat, FpValue, RoundingMode};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const CRITERIA: [Criterion; 11] = [
    ("projection soundness on (4,4)", projection_soundness),
    ("end-to-end completeness", completeness),
    ("rewrite equisatisfiability", equisatisfiability),
    ("newton reconstruction", newton_reconstruction),
    ("square recovery by cse", square_recovery),
    ("inequality cycle", inequality_cycle),
    ("middle table", middle_table),
    ("density ordering", density_ordering),
    ("ablation direction", ablation_direction),
    ("model validation", model_validation),
    ("timeout protocol", timeout_protocol),
];

fn main() -> ExitCode {
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (name, check) in CRITERIA {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let res = check();
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(detail) => println!("PASS {name}: {detail} ({secs:.1}s)"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail} ({secs:.1}s)");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixtures().join(name)).unwrap()
}

fn fpcp() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fpcp"))
}

fn f32v(x: f64) -> FpValue {
    FpValue::from_f64_exact(FpFormat::BINARY32, x).unwrap()
}

// ---------------------------------------------------------------------------

fn projection_soundness() -> Outcome {
    let fmt = FpFormat::new(4, 4).unwrap();
    let fp = Domain::Fp(FpDomain::full(fmt));
    let bl = Domain::Bool(fpcp_core::BoolDomain::UNKNOWN);
    let wide = oracle::fp_family(fmt, &oracle::lattice(fmt, 120));
    let narrow = oracle::fp_family(fmt, &oracle::lattice(fmt, 120));
    let coarse = oracle::fp_family(fmt, &oracle::lattice(fmt, 80));
    let bools = oracle::bool_family();
    let v = VarId;
    let mut cases = 0;
    let mut boxes = 0;
    let mut run = |what: String, r: Result<u64, String>| -> Result<(), String> {
        cases += 1;
        boxes += r.map_err(|e| format!("{what}: {e}"))?;
        Ok(())
    };
    for mode in RoundingMode::ALL {
        for op in [ArithOp::Add, ArithOp::Sub, ArithOp::Mul, ArithOp::Div] {
            let c = ElemConstraint::Arith { op, mode, z: v(0), x: v(1), y: v(2) };
            run(format!("{c:?}"), oracle::check_functional(&c, 0, &[narrow.clone(), wide.clone(), wide.clone()], &[fp, fp, fp]))?;
            let c = ElemConstraint::Arith { op, mode, z: v(0), x: v(1), y: v(1) };
            run(format!("{c:?}"), oracle::check_functional(&c, 0, &[wide.clone(), wide.clone()], &[fp, fp]))?;
            let c = ElemConstraint::Arith { op, mode, z: v(0), x: v(0), y: v(1) };
            run(format!("{c:?}"), oracle::check_generic(&c, &[wide.clone(), wide.clone()]))?;
        }
        let c = ElemConstraint::Square { mode, z: v(0), x: v(1) };
        run(format!("{c:?}"), oracle::check_functional(&c, 0, &[wide.clone(), wide.clone()], &[fp, fp]))?;
        let c = ElemConstraint::Square { mode, z: v(0), x: v(0) };
        run(format!("{c:?}"), oracle::check_generic(&c, std::slice::from_ref(&wide)))?;
    }
    for op in [UnaryOp::Neg, UnaryOp::Abs] {
        let c = ElemConstraint::Unary { op, z: v(0), x: v(1) };
        run(format!("{c:?}"), oracle::check_functional(&c, 0, &[wide.clone(), wide.clone()], &[fp, fp]))?;
        let c = ElemConstraint::Unary { op, z: v(0), x: v(0) };
        run(format!("{c:?}"), oracle::check_generic(&c, std::slice::from_ref(&wide)))?;
    }
    for max in [false, true] {
        let c = ElemConstraint::MinMax { max, z: v(0), x: v(1), y: v(2) };
        run(format!("{c:?}"), oracle::check_functional(&c, 0, &[narrow.clone(), wide.clone(), wide.clone()], &[fp, fp, fp]))?;
        let c = ElemConstraint::MinMax { max, z: v(0), x: v(1), y: v(1) };
        run(format!("{c:?}"), oracle::check_functional(&c, 0, &[wide.clone(), wide.clone()], &[fp, fp]))?;
        let c = ElemConstraint::MinMax { max, z: v(0), x: v(0), y: v(1) };
        run(format!("{c:?}"), oracle::check_generic(&c, &[wide.clone(), wide.clone()]))?;
    }
    for rel in [Rel::Eq, Rel::Ne, Rel::Lt, Rel::Le, Rel::Ident, Rel::NotIdent] {
        let c = ElemConstraint::Cmp { rel, x: v(0), y: v(1) };
        run(format!("{c:?}"), oracle::check_generic(&c, &[wide.clone(), wide.clone()]))?;
        let c = ElemConstraint::Cmp { rel, x: v(0), y: v(0) };
        run(format!("{c:?}"), oracle::check_generic(&c, std::slice::from_ref(&wide)))?;
        let c = ElemConstraint::ReifCmp { b: v(0), rel, x: v(1), y: v(2) };
        run(format!("{c:?}"), oracle::check_functional(&c, 0, &[bools.clone(), wide.clone(), wide.clone()], &[bl, fp, fp]))?;
        let c = ElemConstraint::ReifCmp { b: v(0), rel, x: v(1), y: v(1) };
        run(format!("{c:?}"), oracle::check_functional(&c, 0, &[bools.clone(), wide.clone()], &[bl, fp]))?;
    }
    let lit = |i: u32, positive: bool| Lit { var: v(i), positive };
    let clauses = [
        vec![lit(0, true)],
        vec![lit(0, false)],
        vec![lit(0, true), lit(1, true)],
        vec![lit(0, true), lit(1, false)],
        vec![lit(0, false), lit(1, false), lit(2, true)],
        vec![lit(0, true), lit(0, false)],
        vec![lit(0, true), lit(1, false), lit(0, true)],
    ];
    for cl in clauses {
        let n = cl.iter().map(|l| l.var.0 + 1).max().unwrap() as usize;
        let c = ElemConstraint::Clause(cl);
        run(format!("{c:?}"), oracle::check_generic(&c, &vec![bools.clone(); n]))?;
    }
    let c = ElemConstraint::Ite { b: v(0), z: v(1), x: v(2), y: v(3) };
    run(format!("{c:?}"), oracle::check_functional(&c, 1, &[bools.clone(), narrow.clone(), wide.clone(), wide.clone()], &[bl, fp, fp, fp]))?;
    let c = ElemConstraint::Ite { b: v(0), z: v(1), x: v(2), y: v(2) };
    run(format!("{c:?}"), oracle::check_functional(&c, 1, &[bools.clone(), wide.clone(), wide.clone()], &[bl, fp, fp]))?;
    let c = ElemConstraint::Ite { b: v(0), z: v(1), x: v(1), y: v(2) };
    run(format!("{c:?}"), oracle::check_generic(&c, &[bools.clone(), coarse.clone(), coarse.clone()]))?;
    for pred in [PredKind::IsNaN, PredKind::IsInfinite, PredKind::IsZero] {
        let c = ElemConstraint::Pred { pred, b: v(0), x: v(1) };
        run(format!("{c:?}"), oracle::check_functional(&c, 0, &[bools.clone(), wide.clone()], &[bl, fp]))?;
    }
    Ok(format!("{cases} constraint shapes, {boxes} boxes with solutions, 5 rounding modes, 0 violations"))
}

// ---------------------------------------------------------------------------

/// Mini-format instances, alternating formats so brute force stays cheap.
fn corpus() -> Vec<(u64, String)> {
    (0..240)
        .map(|seed| {
            let (fmt, vars) = match seed % 3 {
                0 => (FpFormat::new(2, 3).unwrap(), 4),
                1 => (FpFormat::new(3, 3).unwrap(), 3),
                _ => (FpFormat::new(2, 4).unwrap(), 3),
            };
            let mut spec = RandomSpec::mini(fmt);
            spec.max_vars = vars;
            (seed, random_instance(seed, &spec))
        })
        .collect()
}

fn no_timeout(u: usize) -> SolverConfig {
    SolverConfig {
        timeout: None,
        u,
        ..SolverConfig::default()
    }
}

fn completeness() -> Outcome {
    let mut sat = 0;
    let mut runs = 0;
    for (seed, src) in corpus() {
        let m0 = parse_str(&src).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure(m0.vars.len() <= 4 && m0.assertions.len() <= 8, || format!("seed {seed} exceeds the size bound"))?;
        let truth = brute_force(&m0, 10_000_000).ok_or(format!("seed {seed}: space too large"))?.is_some();
        sat += truth as usize;
        let x1 = m0.vars.len();
        for u in [0, 2, x1] {
            for cfg in [no_timeout(u), SolverConfig { cycle_check: false, cse: false, ..no_timeout(u) }] {
                runs += 1;
                let r = solve_script(&src, &cfg).map_err(|e| e.to_string())?;
                let expected = if truth { Verdict::Sat } else { Verdict::Unsat };
                ensure(r.verdict == expected, || {
                    format!("seed {seed} u={u} cse={}: got {}, brute force says {expected}\n{src}", cfg.cse, r.verdict)
                })?;
            }
        }
    }
    Ok(format!("240 instances ({sat} sat), {runs} solver runs with u in {{0, 2, |X1|}}, 0 disagreements"))
}

// ---------------------------------------------------------------------------

fn equisatisfiability() -> Outcome {
    let mut points = 0u64;
    for (seed, src) in corpus() {
        let m0: ModelM0 = parse_str(&src).unwrap();
        let m1 = inline_closure(&m0).map_err(|e| e.to_string())?;
        let m1c = factor_cse(&m1);
        let m2 = decompose(&m1).map_err(|e| e.to_string())?;
        let m2c = decompose(&m1c).map_err(|e| e.to_string())?;
        let spaces: Vec<Vec<Value>> = m0.vars.iter().map(|v| values_of(v.sort, 1 << 20).unwrap()).collect();
        let radix: Vec<usize> = spaces.iter().map(Vec::len).collect();
        let mut idx = vec![0; radix.len()];
        loop {
            let a: Vec<Value> = idx.iter().zip(&spaces).map(|(&i, s)| s[i]).collect();
            let s0 = check_m0(&m0, &a);
            let stages = [
                ("inlining", check_m1(&m1, &a)),
                ("cse", oracle::m1_extends(&m1c, &a)),
                ("decomposition", oracle::m2_extends(&m2, &a)),
                ("cse+decomposition", oracle::m2_extends(&m2c, &a)),
            ];
            points += 1;
            if let Some((stage, _)) = stages.iter().find(|(_, s)| *s != s0) {
                return Err(format!("seed {seed}: {stage} changes membership of {a:?} (original {s0})\n{src}"));
            }
            let mut k = 0;
            while k < idx.len() {
                idx[k] += 1;
                if idx[k] < radix[k] {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                break;
            }
        }
    }
    Ok(format!("240 instances, {points} assignments of X1 compared across inlining, cse and decomposition, 0 violations"))
}

// ---------------------------------------------------------------------------

const NEWTON_EXPECTED: &str = "
    (declare-fun x () (_ FloatingPoint 8 24))
    (declare-fun r () (_ FloatingPoint 8 24))
    (assert (= r (fp.add RNE x (fp.neg (fp.div RNE
        (fp.add RNE x (fp.neg (fp.div RNE (fp.mul RNE (fp.mul RNE x x) x) (fp #b0 #b10000001 #b10000000000000000000000))))
        (fp.add RNE (fp #b0 #b01111111 #b00000000000000000000000)
                    (fp.neg (fp.div RNE (fp.mul RNE x x) (fp #b0 #b10000000 #b00000000000000000000000)))))))))";

fn reconstructs_to(script: &str, expected: &str) -> Result<(), String> {
    let m1 = inline_closure(&parse_str(script).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let names: Vec<&str> = m1.vars.iter().map(|v| v.name.as_str()).collect();
    ensure(names == ["x", "r"], || format!("X1 = {names:?}"))?;
    ensure(m1.constraints.len() == 1, || format!("{} constraints", m1.constraints.len()))?;
    let macros = m1
        .terms
        .post_order(&m1.constraints)
        .into_iter()
        .filter(|&t| matches!(m1.terms.node(t).kind, TermKind::Macro(_)))
        .count();
    ensure(macros == 0, || format!("{macros} macro references remain"))?;
    let e = inline_closure(&parse_str(expected).unwrap()).unwrap();
    let same_name = |a: VarId, b: VarId| m1.var(a).name == e.var(b).name;
    ensure(m1.terms.tree_eq(m1.constraints[0], &e.terms, e.constraints[0], &same_name), || {
        "constraint tree differs from the expected expression".into()
    })
}

fn newton_reconstruction() -> Outcome {
    let fixed = read_fixture("newton_step_fixed.smt2");
    reconstructs_to(&fixed, NEWTON_EXPECTED).map_err(|e| format!("corrected script: {e}"))?;
    let verbatim = read_fixture("newton_step.smt2");
    // the verbatim script divides f'(x) by f(x)
    let numerator = "(fp.add RNE x (fp.neg (fp.div RNE (fp.mul RNE (fp.mul RNE x x) x) (fp #b0 #b10000001 #b10000000000000000000000))))";
    let denominator = "(fp.add RNE (fp #b0 #b01111111 #b00000000000000000000000)
                    (fp.neg (fp.div RNE (fp.mul RNE x x) (fp #b0 #b10000000 #b00000000000000000000000))))";
    let verbatim_expected = format!(
        "(declare-fun x () (_ FloatingPoint 8 24))(declare-fun r () (_ FloatingPoint 8 24))
         (assert (= r (fp.add RNE x (fp.neg (fp.div RNE {denominator} {numerator})))))"
    );
    reconstructs_to(&verbatim, &verbatim_expected).map_err(|e| format!("verbatim script: {e}"))?;
    Ok("X1 = {x, r}, no macros, one constraint equal to the expected tree (the verbatim script matches with its division operands as written)".into())
}

// ---------------------------------------------------------------------------

const SQUARE_SCRIPT: &str = "
    (declare-fun x () Float32)(declare-fun y () Float32)(declare-fun z () Float32)
    (assert (= (fp.mul RNE (fp.add RNE x y) (fp.add RNE x y)) z))";

fn square_recovery() -> Outcome {
    let count = |cse: bool| -> Result<(usize, usize), String> {
        let m = build_models(parse_str(SQUARE_SCRIPT).unwrap(), cse).map_err(|e| e.to_string())?;
        let squares = m.m2.constraints.iter().filter(|c| matches!(c, ElemConstraint::Square { .. })).count();
        Ok((m.m2.auxiliary_vars().len(), squares))
    };
    let naive = count(false)?;
    let shared = count(true)?;
    ensure(naive == (2, 0), || format!("without cse: {} auxiliaries, {} squares", naive.0, naive.1))?;
    ensure(shared == (1, 1), || format!("with cse: {} auxiliaries, {} squares", shared.0, shared.1))?;
    Ok("without cse 2 auxiliaries and no square; with cse 1 auxiliary and 1 square".into())
}

// ---------------------------------------------------------------------------

fn cycle_script(sort: &str) -> String {
    format!(
        "(set-logic QF_FP)
         (declare-fun X () {sort})(declare-fun Y () {sort})(declare-fun Z () {sort})
         (assert (fp.gt X Z))
         (assert (fp.leq Y Z))
         (assert (= X Y))
         (check-sat)"
    )
}

fn run_cli(args: &[&str], script: &str) -> Result<(String, String, i32), String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("instance.smt2");
    std::fs::write(&path, script).map_err(|e| e.to_string())?;
    let out = fpcp().args(args).arg(&path).output().map_err(|e| e.to_string())?;
    Ok((
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
        out.status.code().unwrap_or(-1),
    ))
}

fn stat(stderr: &str, key: &str) -> Option<u64> {
    stderr
        .lines()
        .find_map(|l| l.strip_prefix(key)?.strip_prefix('=')?.trim().parse().ok())
}

fn inequality_cycle() -> Outcome {
    let m = build_models(parse_str(&cycle_script("Float32")).unwrap(), true).map_err(|e| e.to_string())?;
    let CycleVerdict::Unsat(w) = detect_ineq_cycle(&m.m2) else {
        return Err("no cycle detected".into());
    };
    ensure(w.len() == 3, || format!("witness has {} constraints", w.len()))?;
    let (out, _, code) = run_cli(&["--stats"], &cycle_script("Float32"))?;
    ensure(out.lines().next() == Some("unsat") && code == 20, || format!("Float32 with the check: {out:?}"))?;
    let (out, err, code) = run_cli(&["--no-cycle-check", "--stats", "--timeout", "120"], &cycle_script("Float16"))?;
    ensure(out.lines().next() == Some("unsat") && code == 20, || format!("Float16 without the check: {out:?}"))?;
    let nodes = stat(&err, "nodes").unwrap_or(0);
    Ok(format!(
        "witness of 3 constraints; unsat by search alone on Float16 in {nodes} nodes (Float32 left to the symbolic check)"
    ))
}

// ---------------------------------------------------------------------------

fn middle_table() -> Outcome {
    let table = [(-5.0, 10.0, 0.0), (0.5, 3.0, 1.0), (2.0, 8.0, 5.0)];
    for (l, u, want) in table {
        let got = middle(f32v(l), f32v(u));
        ensure(got == f32v(want), || format!("middle({l}, {u}) = {}, expected {want}", got.to_f64()))?;
    }
    Ok("middle(-5,10) = 0, middle(0.5,3) = 1, middle(2,8) = 5".into())
}

fn density_ordering() -> Outcome {
    let unit = FpDomain::interval(f32v(0.0), f32v(1.0));
    let far = FpDomain::interval(f32v(1e5), f32v(1e5 + 1.0));
    let dist = far.hi() - far.lo();
    ensure(unit.density() > far.density(), || format!("{} <= {}", unit.density(), far.density()))?;
    ensure(dist == 128, || format!("ordinal distance {dist}"))?;
    ensure(far.cardinality() == 129, || format!("cardinality {}", far.cardinality()))?;
    Ok(format!(
        "density [0,1] = {:.3e} > density [1e5,1e5+1] = {}, ordinal distance 128",
        unit.density(),
        far.density()
    ))
}

// ---------------------------------------------------------------------------

fn suite_options(configs: Vec<Preset>, xcheck: Option<String>) -> SuiteOptions {
    SuiteOptions {
        solver: PathBuf::from(env!("CARGO_BIN_EXE_fpcp")),
        configs,
        timeout: 30.0,
        jobs: 2,
        xcheck,
    }
}

fn ablation_direction() -> Outcome {
    let dir = fixtures().join("ablation");
    let (records, _) = run_suite(&dir, &suite_options(Preset::ALL.to_vec(), None)).map_err(|e| e.to_string())?;
    ensure(records.len() >= 20, || format!("only {} instances", records.len()))?;
    let mut total = [0u64; 5];
    for r in &records {
        categorize(r).map_err(|e| e.to_string())?;
        for (k, run) in r.runs.iter().enumerate() {
            ensure(run.verdict != Verdict::Unknown, || format!("{} unknown under {}", r.instance.display(), run.config))?;
            ensure(run.nodes < 10_000, || format!("{} needs {} nodes under {}", r.instance.display(), run.nodes, run.config))?;
            total[k] += run.nodes;
        }
    }
    let col = |p: Preset| total[Preset::ALL.iter().position(|&q| q == p).unwrap()];
    ensure(col(Preset::DivCse) < col(Preset::None), || {
        format!("DIV+CSE {} nodes vs NONE {}", col(Preset::DivCse), col(Preset::None))
    })?;
    let parts: Vec<String> = Preset::ALL.iter().zip(total).map(|(p, n)| format!("{p}={n}")).collect();
    Ok(format!("{} instances, verdicts agree, total nodes {}", records.len(), parts.join(" ")))
}

// ---------------------------------------------------------------------------

fn z3_available() -> bool {
    Command::new("z3").arg("-version").output().is_ok_and(|o| o.status.success())
}

fn model_validation() -> Outcome {
    let mut sources: Vec<(String, String)> = corpus()
        .into_iter()
        .map(|(seed, src)| (format!("seed {seed}"), src))
        .collect();
    for name in ["newton_step.smt2", "newton_step_fixed.smt2", "newton_counterexample.smt2"] {
        sources.push((name.into(), read_fixture(name)));
    }
    for p in fpcp_cli::harness::instances(&fixtures().join("ablation")).map_err(|e| e.to_string())? {
        sources.push((p.display().to_string(), std::fs::read_to_string(&p).unwrap()));
    }
    let z3 = z3_available();
    let (mut sat, mut crossed) = (0, 0);
    for (name, src) in &sources {
        let r = solve_script(src, &SolverConfig::default()).map_err(|e| format!("{name}: {e}"))?;
        if r.verdict != Verdict::Sat {
            continue;
        }
        sat += 1;
        let model = r.model.as_ref().unwrap();
        // re-check from the printed text, not from the solver's values
        let printed = print_model(model);
        let text = fpcp_cli::harness::conjoin_model(src, &printed).map_err(|e| e.to_string())?;
        let m0 = parse_str(&text).map_err(|e| format!("{name}: {e}"))?;
        let assign: Vec<Value> = model.iter().map(|(_, v)| *v).collect();
        ensure(r.validated && check_m0(&m0, &assign), || format!("{name}: model fails re-evaluation\n{printed}"))?;
        if z3 {
            match cross_validate(src, &printed, "z3 {}").map_err(|e| e.to_string())? {
                XCheck::Pass => crossed += 1,
                XCheck::Fail => return Err(format!("{name}: z3 rejects the model\n{printed}")),
                XCheck::Skip => {}
            }
        }
    }
    let external = if z3 {
        format!("{crossed}/{sat} confirmed by z3")
    } else {
        "external cross-check skipped, z3 not on PATH".into()
    };
    Ok(format!("{sat} sat models, all pass exact re-evaluation; {external}"))
}

// ---------------------------------------------------------------------------

fn timeout_protocol() -> Outcome {
    let script = read_fixture("hard_commuted_square.smt2");
    let start = Instant::now();
    let (out, _, code) = run_cli(&["--timeout", "1"], &script)?;
    let wall = start.elapsed();
    ensure(out.lines().next() == Some("unknown"), || format!("verdict {out:?}"))?;
    ensure(code == 0, || format!("exit code {code}"))?;
    ensure(wall <= Duration::from_secs(2), || format!("took {:.2}s", wall.as_secs_f64()))?;
    Ok(format!("unknown, exit 0, {:.2}s wall", wall.as_secs_f64()))
}
