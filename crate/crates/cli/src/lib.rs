//! Command-line front end for the `wittcalc` library.

pub mod args;
pub mod commands;
pub mod error;
pub mod registry;
pub mod report;

use std::fs::File;
use std::io::{self, Write};

use clap::Parser;

pub use args::{Cli, Format};
pub use error::CliError;
pub use report::Report;

/// Exit status for a completed run whose check held (or a scan).
pub const EXIT_OK: i32 = 0;
/// Exit status for a completed check that found a violation.
pub const EXIT_VIOLATION: i32 = 1;
/// Exit status for usage and precondition errors.
pub const EXIT_USAGE: i32 = 2;

/// Runs the parsed command, honouring `--jobs`.
pub fn run(cli: &Cli) -> Result<Report, CliError> {
    match cli.jobs {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(usize::from(n))
                .build()?;
            pool.install(|| commands::execute(&cli.command))
        }
        None => commands::execute(&cli.command),
    }
}

/// Renders a run to bytes and picks the exit status.
pub fn run_to_bytes(cli: &Cli) -> Result<(Vec<u8>, i32), CliError> {
    let report = run(cli)?;
    let bytes = report.render(cli.format)?;
    let code = if report.failed {
        EXIT_VIOLATION
    } else {
        EXIT_OK
    };
    Ok((bytes, code))
}

/// Full process behaviour: parse, run, write, and return the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match run_to_bytes(&cli).and_then(|(bytes, code)| emit(&cli, &bytes).map(|()| code)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn emit(cli: &Cli, bytes: &[u8]) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => {
            let mut file = File::create(path)?;
            file.write_all(bytes)?;
            file.flush()?;
        }
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()?;
        }
    }
    Ok(())
}
