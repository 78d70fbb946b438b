use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use crw_cli::{run, Cli, EXIT_ENGINE};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli);
    eprint!("{}", outcome.stderr);
    let written = match &cli.cfg.out {
        Some(path) => std::fs::write(path, &outcome.stdout),
        None => std::io::stdout().write_all(outcome.stdout.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(EXIT_ENGINE as u8);
    }
    ExitCode::from(outcome.code as u8)
}
