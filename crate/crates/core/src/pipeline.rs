//! End-to-end solving of an SMT-LIB script.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::eval::{check_m0, Value};
use crate::rewrite::{
    decompose, detect_ineq_cycle, factor_cse, flatten_macros, inline_closure, ConstraintGraph, CycleVerdict,
    ModelM1, ModelM2, RewriteError,
};
use crate::search::{self, SearchConfig, SearchOutcome, SearchStats};
use crate::smtlib::{parse_str, quote_symbol, ModelM0, ParseError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    None,
    Div,
    Cse,
    DivCse,
    DivCseCy,
}

impl Preset {
    pub const ALL: [Preset; 5] = [Preset::None, Preset::Div, Preset::Cse, Preset::DivCse, Preset::DivCseCy];

    pub fn name(self) -> &'static str {
        match self {
            Preset::None => "NONE",
            Preset::Div => "DIV",
            Preset::Cse => "CSE",
            Preset::DivCse => "DIV+CSE",
            Preset::DivCseCy => "DIV+CSE+CY",
        }
    }

    /// `(cse, diversification, cycle_check)`
    pub fn toggles(self) -> (bool, bool, bool) {
        match self {
            Preset::None => (false, false, false),
            Preset::Div => (false, true, false),
            Preset::Cse => (true, false, false),
            Preset::DivCse => (true, true, false),
            Preset::DivCseCy => (true, true, true),
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown preset {0:?} (expected NONE, DIV, CSE, DIV+CSE or DIV+CSE+CY)")]
pub struct UnknownPreset(pub String);

impl FromStr for Preset {
    type Err = UnknownPreset;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownPreset(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    pub timeout: Option<Duration>,
    pub u: usize,
    pub cse: bool,
    pub diversification: bool,
    pub cycle_check: bool,
    /// Stop with `unknown` after this many search nodes.
    pub node_limit: Option<u64>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            timeout: Some(Duration::from_secs(60)),
            u: 5,
            cse: true,
            diversification: true,
            cycle_check: true,
            node_limit: None,
        }
    }
}

impl SolverConfig {
    pub fn from_preset(p: Preset) -> Self {
        SolverConfig::default().with_preset(p)
    }

    pub fn with_preset(self, p: Preset) -> Self {
        let (cse, diversification, cycle_check) = p.toggles();
        SolverConfig {
            cse,
            diversification,
            cycle_check,
            ..self
        }
    }

    /// The `u` used by search; 0 when diversification is off.
    pub fn effective_u(&self) -> usize {
        if self.diversification {
            self.u
        } else {
            0
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Sat,
    Unsat,
    Unknown,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Sat => 10,
            Verdict::Unsat => 20,
            Verdict::Unknown => 0,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Sat => "sat",
            Verdict::Unsat => "unsat",
            Verdict::Unknown => "unknown",
        })
    }
}

impl FromStr for Verdict {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sat" => Ok(Verdict::Sat),
            "unsat" => Ok(Verdict::Unsat),
            "unknown" => Ok(Verdict::Unknown),
            other => Err(format!("not a verdict: {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Rewrite(#[from] RewriteError),
}

/// Vertex and edge counts of a constraint graph.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GraphSize {
    pub nodes: usize,
    pub edges: usize,
}

impl From<&ConstraintGraph> for GraphSize {
    fn from(g: &ConstraintGraph) -> Self {
        GraphSize {
            nodes: g.node_count(),
            edges: g.edge_count(),
        }
    }
}

/// Every intermediate model of one run.
#[derive(Debug, Clone)]
pub struct Models {
    pub m0: ModelM0,
    pub naive: ModelM1,
    pub m1: ModelM1,
    pub m2: ModelM2,
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub verdict: Verdict,
    /// Declared variables and their values, on `sat`.
    pub model: Option<Vec<(String, Value)>>,
    /// Whether the model satisfied the original assertions.
    pub validated: bool,
    /// Wall time including parsing and rewriting.
    pub elapsed: Duration,
    pub stats: SearchStats,
    /// Constraints of M2 forming a contradictory cycle, when one was found.
    pub cycle: Option<Vec<usize>>,
    /// Graph of the script read naively, macros as variables.
    pub graph_before: GraphSize,
    /// Graph of the decomposed model.
    pub graph_after: GraphSize,
    pub models: Models,
}

/// Runs the rewriting stages without searching.
pub fn build_models(m0: ModelM0, cse: bool) -> Result<Models, RewriteError> {
    let naive = flatten_macros(&m0)?;
    let m1 = inline_closure(&m0)?;
    let m1 = if cse { factor_cse(&m1) } else { m1 };
    let m2 = decompose(&m1)?;
    Ok(Models { m0, naive, m1, m2 })
}

pub fn solve_script(src: &str, cfg: &SolverConfig) -> Result<RunReport, SolveError> {
    let start = Instant::now();
    let m0 = parse_str(src)?;
    Ok(solve_from(m0, cfg, start)?)
}

pub fn solve_m0(m0: ModelM0, cfg: &SolverConfig) -> Result<RunReport, RewriteError> {
    solve_from(m0, cfg, Instant::now())
}

fn solve_from(m0: ModelM0, cfg: &SolverConfig, start: Instant) -> Result<RunReport, RewriteError> {
    let models = build_models(m0, cfg.cse)?;
    let graph_before = GraphSize::from(&ConstraintGraph::of_m1(&models.naive));
    let graph_after = GraphSize::from(&ConstraintGraph::of_m2(&models.m2));
    let mut report = RunReport {
        verdict: Verdict::Unknown,
        model: None,
        validated: false,
        elapsed: Duration::ZERO,
        stats: SearchStats::default(),
        cycle: None,
        graph_before,
        graph_after,
        models,
    };
    if cfg.cycle_check {
        if let CycleVerdict::Unsat(w) = detect_ineq_cycle(&report.models.m2) {
            report.verdict = Verdict::Unsat;
            report.cycle = Some(w);
            report.elapsed = start.elapsed();
            return Ok(report);
        }
    }
    let scfg = SearchConfig {
        u: cfg.effective_u(),
        deadline: cfg.timeout.map(|t| start + t),
        node_limit: cfg.node_limit,
    };
    let (outcome, stats) = search::solve(&report.models.m2, &scfg);
    report.stats = stats;
    match outcome {
        SearchOutcome::Unsat => report.verdict = Verdict::Unsat,
        SearchOutcome::Unknown => report.verdict = Verdict::Unknown,
        SearchOutcome::Sat(values) => {
            let m0 = &report.models.m0;
            let m2 = &report.models.m2;
            let assign: Vec<Value> = m0
                .vars
                .iter()
                .map(|d| {
                    let i = m2.vars.iter().position(|v| v.name == d.name).expect("declared variable in M2");
                    values[i]
                })
                .collect();
            report.validated = check_m0(m0, &assign);
            // an unvalidated model is never reported
            report.verdict = if report.validated { Verdict::Sat } else { Verdict::Unknown };
            report.model = Some(m0.vars.iter().map(|d| d.name.clone()).zip(assign).collect());
        }
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

/// `define-fun` lines giving each variable its value.
pub fn print_model(model: &[(String, Value)]) -> String {
    let mut out = String::new();
    for (name, v) in model {
        let (sort, lit) = match v {
            Value::Fp(x) => (
                format!("(_ FloatingPoint {} {})", x.format().ebits(), x.format().sbits()),
                x.to_string(),
            ),
            Value::Bool(b) => ("Bool".to_string(), b.to_string()),
            Value::Rm(m) => ("RoundingMode".to_string(), m.smt_name().to_string()),
        };
        out.push_str(&format!("(define-fun {} () {sort} {lit})\n", quote_symbol(name)));
    }
    out
}
