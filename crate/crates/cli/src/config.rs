//! Optional `key=value` config files. Every key is the long name of a flag of
//! the chosen subcommand; values given on the command line take precedence.

use std::ffi::OsString;
use std::path::Path;

use clap::parser::ValueSource;
use clap::{ArgAction, CommandFactory, FromArgMatches};

use crate::args::Cli;
use crate::error::{CliError, CliResult};

/// Parse `argv` (including the program name), merging in the file named by
/// `--config` if present.
pub fn parse_args(argv: Vec<OsString>) -> CliResult<Cli> {
    let matches = Cli::command().try_get_matches_from(argv.clone())?;
    let Some((name, sub)) = matches.subcommand() else {
        return Ok(Cli::from_arg_matches(&matches)?);
    };
    let Some(path) = sub.try_get_one::<std::path::PathBuf>("config").ok().flatten() else {
        return Ok(Cli::from_arg_matches(&matches)?);
    };

    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let command = Cli::command();
    let sub_command = command
        .find_subcommand(name)
        .expect("matched subcommand is defined");

    let mut extra = Vec::new();
    for (key, value) in parse_pairs(&text, path)? {
        let arg = sub_command
            .get_arguments()
            .find(|a| a.get_long() == Some(key.as_str()))
            .filter(|a| a.get_id() != "config")
            .ok_or_else(|| CliError::Usage(format!("{}: unknown config key `{key}`", path.display())))?;
        if sub.value_source(arg.get_id().as_str()) == Some(ValueSource::CommandLine) {
            continue;
        }
        match arg.get_action() {
            ArgAction::SetTrue => match value.as_str() {
                "true" | "1" | "yes" => extra.push(OsString::from(format!("--{key}"))),
                "false" | "0" | "no" => {}
                _ => {
                    return Err(CliError::Usage(format!(
                        "{}: `{key}` expects true or false, got `{value}`",
                        path.display()
                    )))
                }
            },
            _ => extra.push(OsString::from(format!("--{key}={value}"))),
        }
    }

    let mut merged = argv;
    merged.extend(extra);
    Ok(Cli::from_arg_matches(&Cli::command().try_get_matches_from(merged)?)?)
}

fn parse_pairs(text: &str, path: &Path) -> CliResult<Vec<(String, String)>> {
    let mut pairs = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Usage(format!("{}:{}: expected key=value", path.display(), index + 1))
        })?;
        let key = key.trim().trim_start_matches("--").to_string();
        pairs.push((key, value.trim().to_string()));
    }
    Ok(pairs)
}
