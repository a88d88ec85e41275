//! The `heron` command line: searches, embeddings, residue checks and table
//! reproduction, with JSON-lines output and resumable sharded searches.

pub mod checkpoint;
pub mod commands;
pub mod error;
pub mod golden;
pub mod record;
pub mod reproduce;

use clap::Parser;

pub use commands::{run, Cli};
pub use error::{CliError, Outcome};

/// Parses the process arguments, runs the command and returns the exit code.
pub fn main_entry() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(cli) {
        Ok(outcome) => outcome.exit_code(),
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
