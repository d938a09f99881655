//! `eoa`: factor sweeps, law verification batches, sudden-death search and
//! a reduced self-test. Exit codes: 0 success, 1 verification failure,
//! 2 usage error.

mod args;
mod death;
mod output;
mod selftest;
mod series;
mod verify;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

/// Why a command did not succeed; selects the exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failed(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
        }
    }
}

/// Rejections of the user's parameters are usage errors; anything raised
/// mid-computation is a failure.
pub fn usage(e: eoa_core::Error) -> CliError {
    CliError::Usage(e.to_string())
}

pub fn failed(e: eoa_core::Error) -> CliError {
    CliError::Failed(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Series(a) => series::run(&a),
        Command::Verify(a) => verify::run(&a),
        Command::SuddenDeath(a) => death::run(&a),
        Command::Selftest(a) => selftest::run(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::Usage(m) => eprintln!("error: {m}"),
                CliError::Failed(m) => eprintln!("failure: {m}"),
            }
            ExitCode::from(e.code())
        }
    }
}
