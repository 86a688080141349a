use std::fs::File;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use fpcp_cli::harness::{run_suite, write_csv, SuiteOptions};
use fpcp_core::pipeline::Preset;

#[derive(Debug, Parser)]
#[command(name = "fpcp-bench", about = "Run fpcp over a directory of SMT-LIB instances")]
struct Args {
    #[arg(long)]
    dir: PathBuf,
    /// Comma-separated presets.
    #[arg(long, value_delimiter = ',', default_value = "NONE,DIV,CSE,DIV+CSE,DIV+CSE+CY")]
    configs: Vec<Preset>,
    /// Per-run limit in seconds.
    #[arg(long, default_value_t = 60.0)]
    timeout: f64,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// External solver command; `{}` is replaced by the instance path.
    #[arg(long)]
    xcheck: Option<String>,
    #[arg(long)]
    csv: Option<PathBuf>,
    /// The fpcp binary; defaults to the one next to this executable.
    #[arg(long)]
    solver: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let solver = args.solver.clone().unwrap_or_else(|| {
        let exe = std::env::current_exe().expect("current executable");
        exe.with_file_name(format!("fpcp{}", std::env::consts::EXE_SUFFIX))
    });
    let opts = SuiteOptions {
        solver,
        configs: args.configs.clone(),
        timeout: args.timeout,
        jobs: args.jobs,
        xcheck: args.xcheck.clone(),
    };
    let (records, table) = match run_suite(&args.dir, &opts) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    if let Some(p) = &args.csv {
        let res = File::create(p).map_err(Into::into).and_then(|f| write_csv(f, &records));
        if let Err(e) = res {
            eprintln!("error: {}: {e}", p.display());
            return ExitCode::from(1);
        }
    }
    print!("{}", table.render());
    let failed: Vec<_> = records
        .iter()
        .flat_map(|r| r.runs.iter().map(move |x| (r, x)))
        .filter(|(_, x)| x.validated == Some(fpcp_cli::harness::XCheck::Fail))
        .collect();
    for (r, x) in &failed {
        eprintln!("cross-check FAIL: {} under {}", r.instance.display(), x.config);
    }
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
