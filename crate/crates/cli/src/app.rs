//! The `fpcp` command.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::Duration;

use clap::Parser;
use fpcp_core::pipeline::{print_model, solve_script, Preset, RunReport, SolverConfig, Verdict};
use fpcp_core::rewrite::{emit_smt2, ConstraintGraph};

#[derive(Debug, Parser)]
#[command(name = "fpcp", about = "Constraint-programming solver for QF_FP SMT-LIB scripts")]
pub struct Args {
    /// Wall-clock limit in seconds, parsing and rewriting included.
    #[arg(long, default_value_t = 60.0)]
    pub timeout: f64,
    /// Prohibition depth for diversification.
    #[arg(long, default_value_t = 5)]
    pub u: usize,
    /// NONE, DIV, CSE, DIV+CSE or DIV+CSE+CY.
    #[arg(long, conflicts_with_all = ["no_cse", "no_div", "no_cycle_check"])]
    pub preset: Option<Preset>,
    #[arg(long)]
    pub no_cse: bool,
    /// Disables diversification (u = 0).
    #[arg(long)]
    pub no_div: bool,
    #[arg(long)]
    pub no_cycle_check: bool,
    /// Print the values of the declared variables on sat.
    #[arg(long)]
    pub model: bool,
    /// Print statistics as key=value lines on stderr.
    #[arg(long)]
    pub stats: bool,
    /// Write the constraint graph of the reconstructed model in DOT format.
    #[arg(long, value_name = "PATH")]
    pub dot: Option<PathBuf>,
    /// Write the reconstructed model back as SMT-LIB.
    #[arg(long, value_name = "PATH")]
    pub emit_smt2: Option<PathBuf>,
    /// Accepted for compatibility; search is deterministic.
    #[arg(long)]
    pub seed: Option<u64>,
    pub file: PathBuf,
}

impl Args {
    pub fn config(&self) -> Result<SolverConfig, String> {
        if !(self.timeout.is_finite() && self.timeout > 0.0) {
            return Err(format!("invalid timeout {}", self.timeout));
        }
        let base = SolverConfig {
            timeout: Some(Duration::from_secs_f64(self.timeout)),
            u: self.u,
            ..SolverConfig::default()
        };
        Ok(match self.preset {
            Some(p) => base.with_preset(p),
            None => SolverConfig {
                cse: !self.no_cse,
                diversification: !self.no_div,
                cycle_check: !self.no_cycle_check,
                ..base
            },
        })
    }
}

/// Exit status for input errors.
pub const EXIT_INPUT_ERROR: i32 = 1;
/// Exit status for usage errors.
pub const EXIT_USAGE_ERROR: i32 = 2;

/// Runs one solve; returns the process exit status.
pub fn run(args: &Args, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cfg = match args.config() {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE_ERROR;
        }
    };
    let src = match fs::read_to_string(&args.file) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "error: cannot read {}: {e}", args.file.display());
            return EXIT_INPUT_ERROR;
        }
    };
    let report = match solve_script(&src, &cfg) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {}: {e}", args.file.display());
            return EXIT_INPUT_ERROR;
        }
    };
    let _ = writeln!(out, "{}", report.verdict);
    if args.model && report.verdict == Verdict::Sat {
        if let Some(m) = &report.model {
            let _ = write!(out, "{}", print_model(m));
        }
    }
    if args.stats {
        write_stats(err, &report, &cfg);
    }
    if let Some(p) = &args.dot {
        if let Err(e) = fs::write(p, ConstraintGraph::of_m1(&report.models.m1).to_dot()) {
            let _ = writeln!(err, "error: cannot write {}: {e}", p.display());
            return EXIT_INPUT_ERROR;
        }
    }
    if let Some(p) = &args.emit_smt2 {
        if let Err(e) = fs::write(p, emit_smt2(&report.models.m1)) {
            let _ = writeln!(err, "error: cannot write {}: {e}", p.display());
            return EXIT_INPUT_ERROR;
        }
    }
    report.verdict.exit_code()
}

fn write_stats(err: &mut dyn Write, r: &RunReport, cfg: &SolverConfig) {
    let s = &r.stats;
    let lines = [
        ("verdict", r.verdict.to_string()),
        ("time_ms", format!("{:.3}", r.elapsed.as_secs_f64() * 1e3)),
        ("cse", cfg.cse.to_string()),
        ("u", cfg.effective_u().to_string()),
        ("cycle_check", cfg.cycle_check.to_string()),
        ("cycle_found", r.cycle.is_some().to_string()),
        ("nodes", s.nodes.to_string()),
        ("backtracks", s.backtracks.to_string()),
        ("max_depth", s.max_depth.to_string()),
        ("revisions", s.prop.revisions.to_string()),
        ("prunes", s.prop.prunes.to_string()),
        ("empty_events", s.prop.empty_events.to_string()),
        ("budget_exhaustions", s.prop.budget_exhaustions.to_string()),
        ("graph_before_nodes", r.graph_before.nodes.to_string()),
        ("graph_before_edges", r.graph_before.edges.to_string()),
        ("graph_after_nodes", r.graph_after.nodes.to_string()),
        ("graph_after_edges", r.graph_after.edges.to_string()),
        ("m2_vars", r.models.m2.vars.len().to_string()),
        ("m2_constraints", r.models.m2.constraints.len().to_string()),
        ("validated", r.validated.to_string()),
    ];
    for (k, v) in lines {
        let _ = writeln!(err, "{k}={v}");
    }
}
