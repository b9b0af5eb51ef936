use std::process::ExitCode;

use nakagami_aber_cli::CliError;

fn main() -> ExitCode {
    match nakagami_aber_cli::run(std::env::args_os().collect()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                // clap formats its own usage/help text.
                CliError::Clap(inner) => {
                    let _ = inner.print();
                }
                other => eprintln!("error: {other}"),
            }
            ExitCode::from(e.exit_code())
        }
    }
}
