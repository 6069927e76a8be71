//! Command-line runner for the septic pipelines: prime-field search,
//! node-count verification, the characteristic-zero derivation, real root
//! isolation and the check of the table of known 15-nodal parameters.

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::Result;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

pub mod alpha;
pub mod derive;
pub mod search;
pub mod table1;
pub mod verify;

/// Exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    /// Expected counts or checks not met.
    pub const FAILED: i32 = 1;
    pub const INVALID_PRIME: i32 = 2;
    pub const BUDGET_EXHAUSTED: i32 = 3;
    pub const NOT_A_ROOT: i32 = 4;
    pub const FORMULA_MISMATCH: i32 = 5;
}

pub const SCHEMA_VERSION: u32 = 1;
pub const MINPOLY: &str = "7*alpha^3+7*alpha+1";

#[derive(Debug, Parser)]
#[command(
    name = "septic",
    version,
    about = "Node counts for the D7-symmetric septic family"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Scan parameter tuples over a prime field for many-nodal plane curves.
    Search(search::SearchArgs),
    /// Run the six-step node-count pipeline.
    Verify(verify::VerifyArgs),
    /// Derive the condition on alpha over Q(alpha).
    Derive(derive::DeriveArgs),
    /// Isolate the real root of 7*alpha^3+7*alpha+1.
    AlphaReal(alpha::AlphaArgs),
    /// Check every row of the table of known 15-nodal parameters.
    Table1Check(table1::Table1Args),
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Print the JSON envelope instead of the text summary.
    #[arg(long)]
    pub json: bool,
    /// Also write the JSON envelope to this path (a directory for `search`).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Wrapper carried by every JSON output.
#[derive(Debug, Serialize)]
pub struct Envelope<'a, T: Serialize> {
    pub schema_version: u32,
    pub minpoly: &'static str,
    pub command: &'a str,
    pub exit_code: i32,
    pub result: T,
}

pub fn envelope_json<T: Serialize>(command: &str, exit_code: i32, result: T) -> Result<String> {
    Ok(serde_json::to_string_pretty(&Envelope {
        schema_version: SCHEMA_VERSION,
        minpoly: MINPOLY,
        command,
        exit_code,
        result,
    })?)
}

/// Writes `text` atomically.
pub fn write_file(path: &Path, text: &str) -> Result<()> {
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, text)?;
    std::fs::rename(tmp, path)?;
    Ok(())
}

/// Emits either the JSON envelope or the text summary, and the JSON file if
/// requested.
pub fn emit<T: Serialize>(
    out: &mut dyn Write,
    opts: &OutputArgs,
    command: &str,
    code: i32,
    result: &T,
    text: &str,
) -> Result<()> {
    let json = envelope_json(command, code, result)?;
    if opts.json {
        writeln!(out, "{json}")?;
    } else {
        write!(out, "{text}")?;
    }
    if let Some(path) = &opts.out {
        write_file(path, &json)?;
    }
    Ok(())
}

/// Runs one parsed command and returns its exit code.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Search(a) => search::run(&a, out),
        Command::Verify(a) => verify::run(&a, out),
        Command::Derive(a) => derive::run(&a, out),
        Command::AlphaReal(a) => alpha::run(&a, out),
        Command::Table1Check(a) => table1::run(&a, out),
    }
}
