use std::process::ExitCode;

use clap::Parser;
use extclosed_cli::{run, Invocation};

fn main() -> ExitCode {
    let inv = Invocation::try_parse().unwrap_or_else(|e| e.exit());
    let code = run(&inv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    ExitCode::from(code)
}
