//! Command-line front end for WABL defuzzification.
//!
//! Commands:
//!
//! * `compute`: WABL value of every record in an input document;
//! * `rank`: records ordered by descending WABL value;
//! * `verify`: closed forms checked against summation and quadrature;
//! * `weights`: the pattern weight table for `--k` and `--t`.
//!
//! Exit status is 0 on success, 1 for input errors and 2 for computation
//! errors. Every failing record is reported, not just the first.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod input;
pub mod render;

use std::ffi::OsString;

use clap::Parser;

use crate::args::{Cli, Command, RunArgs};
use crate::commands::Report;
use crate::config::{read, RunConfig, WeightSource};
use crate::error::CliError;
use crate::input::InputDocument;

/// Output of one invocation.
#[derive(Debug, Clone, Default)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub exit_code: u8,
}

impl From<Report> for Outcome {
    fn from(r: Report) -> Self {
        Self {
            exit_code: r.exit_code(),
            stdout: r.stdout,
            stderr: r.stderr,
        }
    }
}

impl From<CliError> for Outcome {
    fn from(e: CliError) -> Self {
        Self {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            exit_code: 1,
        }
    }
}

fn load(args: &RunArgs) -> Result<(InputDocument, RunConfig), CliError> {
    let cfg = RunConfig::from_args(args)?;
    let text = read(&args.input)?;
    let doc = InputDocument::parse(&text, &args.input.display().to_string())?;
    Ok((doc, cfg))
}

pub fn run(cli: Cli) -> Outcome {
    let result = match cli.command {
        Command::Compute(args) => load(&args).map(|(doc, cfg)| commands::compute(&doc, &cfg)),
        Command::Rank(args) => load(&args).map(|(doc, cfg)| commands::rank(&doc, &cfg)),
        Command::Verify(args) => load(&args).and_then(|(doc, cfg)| commands::verify(&doc, &cfg)),
        Command::Weights(args) => WeightSource::from_args(&args.levels)
            .and_then(|source| commands::weights(&source, args.format)),
    };
    match result {
        Ok(report) => report.into(),
        Err(e) => e.into(),
    }
}

/// Parses `argv` (including the program name) and runs the command.
/// Usage errors exit with status 1; `--help` and `--version` with 0.
pub fn run_from<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(argv) {
        Ok(cli) => run(cli),
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: rendered,
                    exit_code: 1,
                }
            } else {
                Outcome {
                    stdout: rendered,
                    stderr: String::new(),
                    exit_code: 0,
                }
            }
        }
    }
}
