use std::io;
use std::process::ExitCode;

use clap::Parser;
use fpcp_cli::app::{run, Args};

fn main() -> ExitCode {
    let args = Args::parse();
    let code = run(&args, &mut io::stdout().lock(), &mut io::stderr().lock());
    ExitCode::from(code as u8)
}
