//! Command-line front-end and file formats for `asdist-core`.

pub mod cli;
pub mod commands;
pub mod model_file;
pub mod report;

use clap::Parser;

use crate::cli::Cli;
use crate::commands::{execute, Failure};

/// Exit status, standard output and standard error of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Execution {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

pub fn run<I, T>(args: I) -> Execution
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Execution { code: EXIT_INVALID, stdout: String::new(), stderr: text }
            } else {
                Execution { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    let format = cli.command.common().format;
    match execute(&cli.command) {
        Ok(outcome) => Execution {
            code: if outcome.mismatch { EXIT_MISMATCH } else { 0 },
            stdout: outcome.report.render(format),
            stderr: String::new(),
        },
        Err(Failure::Invalid(msg)) => {
            Execution { code: EXIT_INVALID, stdout: String::new(), stderr: format!("error: {msg}\n") }
        }
        Err(Failure::Internal(msg)) => Execution {
            code: EXIT_INTERNAL,
            stdout: String::new(),
            stderr: format!("internal consistency failure: {msg}\n"),
        },
    }
}
