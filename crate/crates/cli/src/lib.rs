//! The `stern` command-line harness: argument parsing, output formats and
//! parallel sweeps over `stern-core`.

pub mod args;
pub mod commands;
pub mod desk;
pub mod dot;
pub mod output;
pub mod sweep;

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};

use clap::Parser;

use crate::args::Cli;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] stern_core::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Usage(String),
}

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Runs the harness on `argv`; returns the process exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli, stdout) {
        Ok(failed) => {
            if failed {
                EXIT_VIOLATION
            } else {
                EXIT_PASS
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<bool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = cli.jobs {
        builder = builder.num_threads(jobs as usize);
    }
    let pool = builder.build().map_err(|e| CliError::Usage(e.to_string()))?;
    let format = match &cli.command {
        args::Command::Automaton(a) if a.emit.is_some() => args::Format::Dot,
        _ => cli.format,
    };
    let lines = pool.install(|| commands::execute(&cli.command, format))?;
    let failed = lines.iter().any(output::Line::failed);
    match &cli.out {
        Some(path) => {
            let mut file = BufWriter::new(File::create(path)?);
            output::render(&lines, format, &mut file)?;
            file.flush()?;
        }
        None => {
            output::render(&lines, format, stdout)?;
            stdout.flush()?;
        }
    }
    Ok(failed)
}
