use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use vcalc::{run, Cli, Failure, Outcome};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let code = match run(&cli, &mut out) {
        Ok(Outcome::Success) => 0,
        Ok(Outcome::ChecksFailed) => 1,
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            2
        }
        Err(Failure::Internal(e)) => {
            eprintln!("error: {e:#}");
            1
        }
    };
    let _ = out.flush();
    ExitCode::from(code)
}
