//! `key=value` config files. Entries become flags placed right after the
//! subcommand, so anything given later on the command line overrides them.

use std::ffi::OsString;
use std::path::Path;

use clap::{Command, CommandFactory};

use crate::args::Cli;
use crate::CliError;

pub fn parse(text: &str) -> Result<Vec<(String, String)>, CliError> {
    let mut entries = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) =
            line.split_once('=').ok_or_else(|| CliError::Config(format!("line {}: expected key=value", n + 1)))?;
        let key = key.trim().trim_start_matches("--").replace('_', "-");
        if key.is_empty() {
            return Err(CliError::Config(format!("line {}: empty key", n + 1)));
        }
        entries.push((key, value.trim().to_string()));
    }
    Ok(entries)
}

fn config_path(argv: &[OsString]) -> Option<OsString> {
    let mut iter = argv.iter();
    while let Some(arg) = iter.next() {
        let s = arg.to_string_lossy();
        if s == "--config" {
            return iter.next().cloned();
        }
        if let Some(path) = s.strip_prefix("--config=") {
            return Some(path.into());
        }
    }
    None
}

/// Position just after the deepest subcommand token, and that subcommand.
fn leaf(argv: &[OsString], root: &Command) -> (usize, Command) {
    let mut cmd = root.clone();
    let mut pos = 1;
    for (i, arg) in argv.iter().enumerate().skip(1) {
        let s = arg.to_string_lossy();
        if s.starts_with('-') {
            continue;
        }
        if let Some(sub) = cmd.find_subcommand(s.as_ref()).cloned() {
            cmd = sub;
            pos = i + 1;
        }
    }
    (pos, cmd)
}

fn is_switch(cmd: &Command, root: &Command, key: &str) -> bool {
    cmd.get_arguments()
        .chain(root.get_arguments())
        .find(|a| a.get_long() == Some(key))
        .is_some_and(|a| !a.get_action().takes_values())
}

pub fn merge(argv: Vec<OsString>) -> Result<Vec<OsString>, CliError> {
    let Some(path) = config_path(&argv) else {
        return Ok(argv);
    };
    let text = std::fs::read_to_string(Path::new(&path))
        .map_err(|e| CliError::Config(format!("{}: {e}", Path::new(&path).display())))?;
    let entries = parse(&text)?;
    let root = Cli::command();
    let (pos, cmd) = leaf(&argv, &root);
    let mut injected = Vec::new();
    for (key, value) in entries {
        if key == "config" {
            return Err(CliError::Config("config files cannot include other config files".into()));
        }
        if is_switch(&cmd, &root, &key) {
            match value.as_str() {
                "true" | "1" | "yes" | "" => injected.push(OsString::from(format!("--{key}"))),
                "false" | "0" | "no" => {}
                other => return Err(CliError::Config(format!("{key}: expected a boolean, got {other}"))),
            }
        } else {
            injected.push(OsString::from(format!("--{key}={value}")));
        }
    }
    let mut merged = argv;
    merged.splice(pos..pos, injected);
    Ok(merged)
}
