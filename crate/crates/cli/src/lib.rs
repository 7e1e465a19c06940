//! Command-line front end for `sdwitness-core`.
//!
//! [`run`] parses arguments (after splicing in an optional `--config` file),
//! dispatches to a subcommand and returns the process exit code.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod fmt;
pub mod svg;

use std::ffi::OsString;

use clap::Parser;

use args::{Cli, Command};
use commands::emit;
use error::{exit, CliResult};

/// Discrepancies echoed to stderr by `verify`.
const MAX_LISTED: usize = 20;

fn dispatch(cli: &Cli) -> CliResult<i32> {
    let (body, out, code) = match &cli.command {
        Command::Bounds(a) => (commands::bounds::run(a)?, &a.out, exit::OK),
        Command::Region(a) => (commands::region::run(a)?, &a.out, exit::OK),
        Command::Tolerance(a) => (commands::tolerance::run(a)?, &a.out, exit::OK),
        Command::Test(a) => (commands::test::run(a)?, &a.out, exit::OK),
        Command::Verify(a) => {
            let (body, report) = commands::verify::run(a)?;
            let failures = report.failures();
            for line in failures.iter().take(MAX_LISTED) {
                eprintln!("discrepancy: {line}");
            }
            if failures.len() > MAX_LISTED {
                eprintln!(
                    "… and {} more (all listed in the report)",
                    failures.len() - MAX_LISTED
                );
            }
            (
                body,
                &a.out,
                if report.ok {
                    exit::OK
                } else {
                    exit::DISCREPANCY
                },
            )
        }
    };
    emit(out, &body)?;
    Ok(code)
}

/// Runs the CLI on `argv` (program name first) and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let result = config::expand(argv).and_then(|argv| match Cli::try_parse_from(argv) {
        Ok(cli) => dispatch(&cli),
        Err(e) => {
            let code = e.exit_code();
            // help and version go to stdout with code 0
            let _ = e.print();
            Ok(if code == 0 { exit::OK } else { exit::USAGE })
        }
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
