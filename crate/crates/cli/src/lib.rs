//! The `mobius` command line.

pub mod args;
pub mod bench;
pub mod error;
pub mod input;
pub mod report;
pub mod transform;
pub mod verify;
pub mod weight;

use std::ffi::OsString;
use std::io::{Read, Write};

use clap::Parser;

use args::{Cli, Command};
use error::{exit, CliError};

/// Runs one invocation and returns the exit status.
pub fn run<I, T>(argv: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Transform(a) => transform::run(a, stdin, stdout, stderr),
        Command::Weight(a) => weight::run(a, stdin, stdout, stderr),
        Command::Verify(a) => verify::run(a, stdout, &verify::candidates()),
        Command::Bench(a) => bench::run(a, stdin, stdout, stderr),
    };
    match result {
        Ok(()) => exit::OK,
        Err(e) => report_error(&e, stderr),
    }
}

fn report_error(e: &CliError, stderr: &mut dyn Write) -> i32 {
    let _ = writeln!(stderr, "error: {e}");
    e.exit_code()
}
