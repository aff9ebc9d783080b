mod commands;
mod config;

use std::process::ExitCode;

use clap::Parser;

use config::Cli;

/// Exit codes: 2 for configuration problems, 3 for data/model problems.
fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
