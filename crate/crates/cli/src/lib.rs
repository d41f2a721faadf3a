//! Command-line front end for the `wkb-core` solvers.
//!
//! Exit codes: 0 success, 2 invalid input, 3 no bound state in the
//! requested range, 4 numerical failure (the message names the operation).
//! 1 is reserved for I/O errors.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::ffi::OsString;
use std::fs;
use std::io::Write;

use clap::Parser;

use args::{Cli, Command};
pub use error::{CliError, EXIT_CONVERGENCE, EXIT_OK, EXIT_UNBOUND, EXIT_USAGE};

pub fn execute(command: &Command) -> Result<commands::Rendered, CliError> {
    match command {
        Command::Spectrum(a) => commands::spectrum(a),
        Command::Angular(a) => commands::angular(a),
        Command::Wavefunction(a) => commands::wavefunction(a),
        Command::Compare(a) => commands::compare(a),
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                EXIT_USAGE
            } else {
                let _ = out.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    match execute(&cli.command) {
        Ok(rendered) => {
            for w in &rendered.warnings {
                let _ = writeln!(err, "warning: {w}");
            }
            let written = match &rendered.out {
                Some(path) => fs::write(path, &rendered.text)
                    .map_err(|e| CliError::io(format!("cannot write {}: {e}", path.display()))),
                None => out
                    .write_all(rendered.text.as_bytes())
                    .map_err(|e| CliError::io(format!("cannot write output: {e}"))),
            };
            match written {
                Ok(()) => EXIT_OK,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    e.code
                }
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code
        }
    }
}
