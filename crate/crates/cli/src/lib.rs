//! Library side of the `wps` binary.

pub mod commands;
pub mod config;
pub mod report;
pub mod suite;

use std::io::Write;

use clap::Parser;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("computation failed: {0}")]
    Compute(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn compute(e: impl std::fmt::Display) -> Self {
        CliError::Compute(e.to_string())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

/// Parses `args`, runs the command and writes the report; returns the
/// process exit code (0 pass, 1 failed check, 2 usage error).
pub fn main_with(args: impl IntoIterator<Item = String>) -> i32 {
    let cli = match commands::Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match commands::execute(&cli).and_then(|o| emit(&cli, &o).map(|_| o)) {
        Ok(o) => i32::from(!o.report.pass),
        Err(e) => {
            eprintln!("wps: {e}");
            e.exit_code()
        }
    }
}

fn emit(cli: &commands::Cli, o: &commands::Outcome) -> Result<(), CliError> {
    let json = o.report.to_json();
    match &cli.output {
        Some(p) => std::fs::write(p, json)?,
        None => std::io::stdout().write_all(json.as_bytes())?,
    }
    match &cli.timings {
        Some(p) => std::fs::write(p, serde_json::to_string_pretty(&o.timings).expect("serializable"))?,
        None => eprint!("{}", o.timings.render()),
    }
    Ok(())
}
