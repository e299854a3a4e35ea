use std::process::ExitCode;

use clap::Parser;
use dandelin_cli::args::Cli;
use dandelin_cli::{run, EXIT_USAGE};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
