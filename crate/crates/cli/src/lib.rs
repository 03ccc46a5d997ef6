//! Command-line front end for the teleportation simulation library: state
//! construction from JSON descriptions or family shorthands, protocol runs
//! (exact and sampled), condition checks, entanglement reports, and family
//! sweeps, with deterministic JSON/CSV output.

pub mod args;
pub mod commands;
pub mod render;
pub mod spec;

use std::io::Write;

/// Current version of every emitted record layout.
pub const SCHEMA_VERSION: &str = "1";

/// Executes a parsed invocation and returns the process exit code, writing
/// the report to `--out` or standard output and diagnostics to standard
/// error.
pub fn run(cli: &args::Cli) -> i32 {
    match commands::execute(cli) {
        Ok(output) => {
            let mut body = output.body;
            if !body.ends_with('\n') {
                body.push('\n');
            }
            let write_result = match output.path {
                Some(path) => std::fs::write(&path, body)
                    .map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => std::io::stdout()
                    .write_all(body.as_bytes())
                    .map_err(|e| format!("cannot write to stdout: {e}")),
            };
            match write_result {
                Ok(()) => output.exit_code,
                Err(message) => {
                    eprintln!("error: {message}");
                    1
                }
            }
        }
        Err(message) => {
            eprintln!("error: {message}");
            1
        }
    }
}
