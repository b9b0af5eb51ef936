//! Command-line front end for `nakagami-aber`: single-point evaluation, SNR
//! sweeps, discrepancy studies, timing benchmarks and self-tests.
//!
//! Exit codes: 0 success, 1 self-test failure, 2 usage error,
//! 3 numerical non-convergence, 4 I/O failure.

pub mod args;
pub mod bench;
pub mod commands;
pub mod config;
pub mod csv;
pub mod error;
pub mod grid;
pub mod plot;
pub mod selftest;

use std::ffi::OsString;

use args::Command;
pub use error::{CliError, CliResult};

/// Parse `argv` (including the program name) and run the chosen command.
pub fn run(argv: Vec<OsString>) -> CliResult<()> {
    let cli = config::parse_args(argv)?;
    match &cli.command {
        Command::Aber(a) => commands::run_aber(a),
        Command::Sweep(a) => commands::run_sweep(a),
        Command::Discrepancy(a) => commands::run_discrepancy(a),
        Command::Bench(a) => commands::run_bench(a),
        Command::Selftest(a) => commands::run_selftest(a),
    }
}
