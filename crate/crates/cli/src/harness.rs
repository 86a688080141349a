//! Benchmark harness: runs `fpcp` over a directory of instances under
//! several configurations, aggregates the results and cross-checks models.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;
use std::time::{Duration, Instant};

use fpcp_core::pipeline::{Preset, Verdict};
use fpcp_core::smtlib::{parse_sexprs, parse_str, print_m0, tokenize, SExpr};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("soundness alarm on {instance}: {details}")]
    SoundnessAlarm { instance: String, details: String },
    #[error("malformed solver output for {instance} under {config}: {output:?}")]
    BadOutput { instance: String, config: Preset, output: String },
}

/// One (instance, configuration) run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub config: Preset,
    pub verdict: Verdict,
    pub seconds: f64,
    pub nodes: u64,
    /// Outcome of the external cross-check, if one was requested.
    pub validated: Option<XCheck>,
    /// `define-fun` lines printed on sat.
    pub model: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub instance: PathBuf,
    /// From `(set-info :status ...)`.
    pub expected: Option<Verdict>,
    pub runs: Vec<RunResult>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Category {
    Sat,
    Unsat,
    /// Unknown under every configuration and no expected status.
    Unclassified,
}

/// Verdict-derived category; configurations contradicting each other or
/// the expected status raise a soundness alarm.
pub fn categorize(r: &BenchRecord) -> Result<Category, HarnessError> {
    let mut seen: Option<Verdict> = None;
    for run in &r.runs {
        if run.verdict == Verdict::Unknown {
            continue;
        }
        match seen {
            Some(v) if v != run.verdict => {
                return Err(alarm(r, "configurations disagree"));
            }
            _ => seen = Some(run.verdict),
        }
    }
    if let (Some(v), Some(e)) = (seen, r.expected) {
        if e != Verdict::Unknown && v != e {
            return Err(alarm(r, &format!("answered {v}, expected {e}")));
        }
    }
    Ok(match seen.or(r.expected) {
        Some(Verdict::Sat) => Category::Sat,
        Some(Verdict::Unsat) => Category::Unsat,
        _ => Category::Unclassified,
    })
}

fn alarm(r: &BenchRecord, what: &str) -> HarnessError {
    let runs: Vec<String> = r.runs.iter().map(|x| format!("{}={}", x.config, x.verdict)).collect();
    HarnessError::SoundnessAlarm {
        instance: r.instance.display().to_string(),
        details: format!("{what} ({})", runs.join(", ")),
    }
}

/// Per-configuration aggregate over one category.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Cell {
    pub instances: usize,
    pub solved: usize,
    pub timeouts: usize,
    pub seconds: f64,
    pub nodes: u64,
}

impl Cell {
    fn add(&mut self, run: &RunResult) {
        self.instances += 1;
        if run.verdict == Verdict::Unknown {
            self.timeouts += 1;
        } else {
            self.solved += 1;
        }
        self.seconds += run.seconds;
        self.nodes += run.nodes;
    }

    pub fn percent_solved(&self) -> f64 {
        if self.instances == 0 {
            0.0
        } else {
            100.0 * self.solved as f64 / self.instances as f64
        }
    }

    fn merge(&self, o: &Cell) -> Cell {
        Cell {
            instances: self.instances + o.instances,
            solved: self.solved + o.solved,
            timeouts: self.timeouts + o.timeouts,
            seconds: self.seconds + o.seconds,
            nodes: self.nodes + o.nodes,
        }
    }
}

/// Rows SAT, UNSAT and ALL, one column per configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryTable {
    pub configs: Vec<Preset>,
    pub sat: Vec<Cell>,
    pub unsat: Vec<Cell>,
    pub all: Vec<Cell>,
    pub unclassified: usize,
}

impl SummaryTable {
    pub fn build(records: &[BenchRecord], configs: &[Preset]) -> Result<Self, HarnessError> {
        let mut sat = vec![Cell::default(); configs.len()];
        let mut unsat = vec![Cell::default(); configs.len()];
        let mut unclassified = 0;
        for r in records {
            let row = match categorize(r)? {
                Category::Sat => &mut sat,
                Category::Unsat => &mut unsat,
                Category::Unclassified => {
                    unclassified += 1;
                    continue;
                }
            };
            for run in &r.runs {
                if let Some(i) = configs.iter().position(|&c| c == run.config) {
                    row[i].add(run);
                }
            }
        }
        let all = sat.iter().zip(&unsat).map(|(a, b)| a.merge(b)).collect();
        Ok(SummaryTable {
            configs: configs.to_vec(),
            sat,
            unsat,
            all,
            unclassified,
        })
    }

    /// Column of configuration `c`.
    pub fn column(&self, c: Preset) -> Option<usize> {
        self.configs.iter().position(|&x| x == c)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = write!(out, "{:<7}", "");
        for c in &self.configs {
            let _ = write!(out, " | {:^30}", c.name());
        }
        out.push('\n');
        let _ = write!(out, "{:<7}", "");
        for _ in &self.configs {
            let _ = write!(out, " | {:>7} {:>4} {:>9} {:>8}", "solved", "TO", "time(s)", "nodes");
        }
        out.push('\n');
        for (name, row) in [("SAT", &self.sat), ("UNSAT", &self.unsat), ("ALL", &self.all)] {
            let _ = write!(out, "{name:<7}");
            for cell in row {
                let _ = write!(
                    out,
                    " | {:>6.2}% {:>4} {:>9.2} {:>8}",
                    cell.percent_solved(),
                    cell.timeouts,
                    cell.seconds,
                    cell.nodes
                );
            }
            out.push('\n');
        }
        if self.unclassified > 0 {
            let _ = writeln!(out, "unclassified instances: {}", self.unclassified);
        }
        out
    }
}

/// The `:status` declared by a script, if any.
pub fn expected_status(src: &str) -> Option<Verdict> {
    let toks = tokenize(src).ok()?;
    let exprs = parse_sexprs(&toks).ok()?;
    exprs.iter().find_map(|e| {
        let l = e.as_list()?;
        if l.len() == 3 && l[0].as_symbol() == Some("set-info") && l[1].to_string() == ":status" {
            l[2].as_symbol()?.parse().ok()
        } else {
            None
        }
    })
}

/// How the harness invokes the solver.
#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub solver: PathBuf,
    pub configs: Vec<Preset>,
    pub timeout: f64,
    pub jobs: usize,
    /// External command with `{}` standing for the instance path.
    pub xcheck: Option<String>,
}

/// Extra wall time granted to a run before it is killed.
pub const GRACE: Duration = Duration::from_secs(2);

/// Runs the solver on one instance in a subprocess.
pub fn run_one(opts: &SuiteOptions, instance: &Path, config: Preset) -> Result<RunResult, HarnessError> {
    let start = Instant::now();
    let mut child = Command::new(&opts.solver)
        .arg("--preset")
        .arg(config.name())
        .arg("--timeout")
        .arg(opts.timeout.to_string())
        .arg("--stats")
        .arg("--model")
        .arg(instance)
        .stdin(Stdio::null())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()?;
    let mut stdout = child.stdout.take().unwrap();
    let mut stderr = child.stderr.take().unwrap();
    let out_reader = thread::spawn(move || {
        let mut s = String::new();
        let _ = stdout.read_to_string(&mut s);
        s
    });
    let err_reader = thread::spawn(move || {
        let mut s = String::new();
        let _ = stderr.read_to_string(&mut s);
        s
    });
    let limit = Duration::from_secs_f64(opts.timeout) + GRACE;
    let killed = loop {
        if child.try_wait()?.is_some() {
            break false;
        }
        if start.elapsed() > limit {
            let _ = child.kill();
            let _ = child.wait();
            break true;
        }
        thread::sleep(Duration::from_millis(5));
    };
    let seconds = start.elapsed().as_secs_f64();
    let out = out_reader.join().unwrap_or_default();
    let err = err_reader.join().unwrap_or_default();
    let stat = |key: &str| {
        err.lines()
            .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
            .and_then(|v| v.trim().parse::<u64>().ok())
    };
    let mut lines = out.lines();
    let verdict = if killed {
        Verdict::Unknown
    } else {
        match lines.next().map(str::parse::<Verdict>) {
            Some(Ok(v)) => v,
            _ => {
                return Err(HarnessError::BadOutput {
                    instance: instance.display().to_string(),
                    config,
                    output: format!("{out}{err}"),
                })
            }
        }
    };
    let model: String = lines.map(|l| format!("{l}\n")).collect();
    let validated = match (&opts.xcheck, verdict) {
        (Some(cmd), Verdict::Sat) => Some(cross_validate(&fs::read_to_string(instance)?, &model, cmd)?),
        _ => None,
    };
    Ok(RunResult {
        config,
        verdict,
        seconds,
        nodes: stat("nodes").unwrap_or(0),
        validated,
        model,
    })
}

/// `.smt2` files under `dir`, sorted.
pub fn instances(dir: &Path) -> Result<Vec<PathBuf>, HarnessError> {
    let mut out = Vec::new();
    for e in fs::read_dir(dir)? {
        let p = e?.path();
        if p.extension().is_some_and(|x| x == "smt2") {
            out.push(p);
        }
    }
    out.sort();
    Ok(out)
}

/// Runs every configuration on every instance of `dir`, `jobs` at a time.
pub fn run_suite(dir: &Path, opts: &SuiteOptions) -> Result<(Vec<BenchRecord>, SummaryTable), HarnessError> {
    let files = instances(dir)?;
    let tasks: Vec<(usize, Preset)> = (0..files.len())
        .flat_map(|i| opts.configs.iter().map(move |&c| (i, c)))
        .collect();
    let results: Mutex<Vec<Option<Result<RunResult, HarnessError>>>> =
        Mutex::new((0..tasks.len()).map(|_| None).collect());
    let next = AtomicUsize::new(0);
    thread::scope(|s| {
        for _ in 0..opts.jobs.max(1) {
            s.spawn(|| loop {
                let t = next.fetch_add(1, Ordering::SeqCst);
                let Some(&(i, c)) = tasks.get(t) else { break };
                let r = run_one(opts, &files[i], c);
                results.lock().unwrap()[t] = Some(r);
            });
        }
    });
    let mut results = results.into_inner().unwrap().into_iter();
    let mut records = Vec::with_capacity(files.len());
    for f in &files {
        let src = fs::read_to_string(f)?;
        let mut runs = Vec::new();
        for _ in &opts.configs {
            runs.push(results.next().unwrap().unwrap()?);
        }
        records.push(BenchRecord {
            instance: f.clone(),
            expected: expected_status(&src),
            runs,
        });
    }
    let table = SummaryTable::build(&records, &opts.configs)?;
    Ok((records, table))
}

/// Per-run rows: `instance,config,verdict,seconds,nodes,validated`.
pub fn write_csv<W: Write>(w: W, records: &[BenchRecord]) -> Result<(), HarnessError> {
    let mut wr = csv::Writer::from_writer(w);
    wr.write_record(["instance", "config", "verdict", "seconds", "nodes", "validated"])?;
    for r in records {
        for run in &r.runs {
            let validated = match run.validated {
                None => String::new(),
                Some(x) => x.to_string(),
            };
            wr.write_record([
                r.instance.display().to_string(),
                run.config.name().to_string(),
                run.verdict.to_string(),
                format!("{:.6}", run.seconds),
                run.nodes.to_string(),
                validated,
            ])?;
        }
    }
    wr.flush()?;
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XCheck {
    Pass,
    Fail,
    /// The external solver could not be started.
    Skip,
}

impl std::fmt::Display for XCheck {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            XCheck::Pass => "PASS",
            XCheck::Fail => "FAIL",
            XCheck::Skip => "SKIP",
        })
    }
}

/// The instance with the model's values asserted.
pub fn conjoin_model(instance_src: &str, model: &str) -> Result<String, HarnessError> {
    let bad = |e: String| HarnessError::Io(io::Error::new(io::ErrorKind::InvalidData, e));
    let m0 = parse_str(instance_src).map_err(|e| bad(e.to_string()))?;
    let mut out = print_m0(&m0);
    out.truncate(out.len() - "(check-sat)\n".len());
    let toks = tokenize(model).map_err(|e| bad(e.to_string()))?;
    for e in parse_sexprs(&toks).map_err(|e| bad(e.to_string()))? {
        let items: Vec<&SExpr> = e.as_list().map(|l| l.iter().collect()).unwrap_or_default();
        match items.as_slice() {
            [head, name, _, _, value] if head.as_symbol() == Some("define-fun") => {
                let _ = writeln!(out, "(assert (= {name} {value}))");
            }
            _ => return Err(bad(format!("not a model entry: {e}"))),
        }
    }
    out.push_str("(check-sat)\n");
    Ok(out)
}

/// Asks an external solver whether the instance conjoined with the model is
/// satisfiable. `cmd` is split on whitespace; `{}` is the file path.
pub fn cross_validate(instance_src: &str, model: &str, cmd: &str) -> Result<XCheck, HarnessError> {
    let text = conjoin_model(instance_src, model)?;
    let file = tempfile_path();
    fs::write(&file, text)?;
    let parts: Vec<String> = cmd
        .split_whitespace()
        .map(|p| p.replace("{}", &file.display().to_string()))
        .collect();
    let Some((prog, args)) = parts.split_first() else {
        return Ok(XCheck::Skip);
    };
    let res = Command::new(prog).args(args).stdin(Stdio::null()).output();
    let _ = fs::remove_file(&file);
    match res {
        Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(XCheck::Skip),
        Err(e) => Err(e.into()),
        Ok(o) => {
            let first = String::from_utf8_lossy(&o.stdout).lines().next().unwrap_or("").trim().to_string();
            Ok(if first == "sat" { XCheck::Pass } else { XCheck::Fail })
        }
    }
}

fn tempfile_path() -> PathBuf {
    static COUNTER: AtomicUsize = AtomicUsize::new(0);
    let n = COUNTER.fetch_add(1, Ordering::SeqCst);
    std::env::temp_dir().join(format!("fpcp-xcheck-{}-{n}.smt2", std::process::id()))
}
