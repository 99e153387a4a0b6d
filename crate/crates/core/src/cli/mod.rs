mod args;
mod commands;

use std::fmt;
use std::io::IsTerminal;
use std::process::ExitCode;

use clap::Parser;

pub use args::Cli;

/// A failed command. Domain errors exit 1, IO and parse errors exit 2.
#[derive(Debug)]
pub enum CliError {
    Domain(String),
    Input(String),
}

impl CliError {
    pub fn domain(msg: impl fmt::Display) -> Self {
        CliError::Domain(msg.to_string())
    }

    pub fn input(msg: impl fmt::Display) -> Self {
        CliError::Input(msg.to_string())
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Input(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Domain(m) | CliError::Input(m) => m,
        }
    }
}

pub fn use_color() -> bool {
    std::env::var_os("SLRSIM_NO_COLOR").is_none() && std::io::stderr().is_terminal()
}

/// `error:` or `warning:` prefix, in colour on a terminal.
pub fn label(kind: &str) -> String {
    if !use_color() {
        return format!("{kind}:");
    }
    let code = if kind == "error" { "31" } else { "33" };
    format!("\x1b[1;{code}m{kind}:\x1b[0m")
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{} {}", label("error"), e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
