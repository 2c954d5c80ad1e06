//! `mnp`: computations in free metabelian nilpotent groups from the shell.

mod commands;
mod input;
mod verify;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::commands::{CliError, Outcome};

#[derive(Parser, Debug)]
#[command(name = "mnp", version, about = "Free metabelian nilpotent groups and their automorphisms")]
pub struct Cli {
    /// Number of generators (taken from JSON input when omitted).
    #[arg(long, global = true)]
    pub rank: Option<usize>,
    /// Nilpotency class (taken from JSON input when omitted).
    #[arg(long, global = true)]
    pub class: Option<usize>,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Number of samples for sampled checks.
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Canonical form of a word.
    Nf { word: String },
    /// Whether two words are equal in the group.
    Eq { left: String, right: String },
    /// Image of an element under an endomorphism.
    Apply { spec: String, element: String },
    /// `g ∘ f` of two specs, or of two generalized inner data sets.
    Compose { g: String, f: String },
    /// Inverse of an IA automorphism or of generalized inner data.
    Invert { input: String },
    /// Whether an automorphism is inner, with a conjugator.
    IsInner { spec: String },
    /// Generalized inner data for an automorphism, or a certificate that
    /// none exists. Polynomial data (pairs with "epsilon") is accepted too.
    Synthesize { input: String },
    /// Checks the matrix oracle against the collector.
    OracleSelftest,
    /// Runs one of the built-in verification suites.
    VerifyPaper {
        #[arg(value_parser = verify::SUITES)]
        suite: String,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let json = cli.json;
    let result = commands::run(&cli);
    let mut out = std::io::stdout().lock();
    match result {
        Ok(Outcome { text, json: value, failed }) => {
            if json {
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&value).expect("serializable"));
            } else {
                let _ = writeln!(out, "{}", text.trim_end());
            }
            ExitCode::from(if failed { 4 } else { 0 })
        }
        Err(CliError { code, message }) => {
            if json {
                let _ = writeln!(out, "{}", serde_json::json!({ "error": message, "exit_code": code }));
            }
            eprintln!("mnp: {message}");
            ExitCode::from(code)
        }
    }
}
