//! Library side of the `homdend` binary: argument definitions, command
//! dispatch and report rendering. Every command returns a [`Report`] holding
//! both the human-readable text and the JSON form.

pub mod commands;
pub mod error;
pub mod format;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use homdend_core::DEFAULT_DEGREE_CAP;
use serde_json::Value;

pub use error::CliError;

pub const DEGREE_CAP_VAR: &str = "HOMDEND_DEGREE_CAP";

#[derive(Debug, Parser)]
#[command(
    name = "homdend",
    version,
    about = "Exact cohomology and deformations of hom-dendriform structures"
)]
pub struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Also write the report to this file.
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,
    /// Skip structure validation on load.
    #[arg(long, global = true)]
    pub no_validate: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Input {
    /// Structure file (JSON, schema 1).
    pub file: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the validators on a structure file and its attached operators.
    Check(Input),
    /// Betti table and class representatives.
    Cohomology {
        #[command(flatten)]
        input: Input,
        /// ass, dend, coass or codend; defaults to the structure's own flavor.
        #[arg(long)]
        flavor: Option<String>,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
    },
    /// Basis of the alpha-commuting derivations.
    Derivations(Input),
    /// Induced associative and pre-Lie products and their brackets.
    Induced(Input),
    /// Dendriform structure of a Rota-Baxter operator on a hom-associative algebra.
    FromRotaBaxter(Input),
    /// Dendriform structure on the module of an O-operator.
    FromOOperator(Input),
    /// Transpose algebras into coalgebras and back.
    Dualize(Input),
    /// Formal deformations given by the file's `deformation` terms.
    Deform {
        #[arg(value_enum)]
        action: DeformAction,
        #[command(flatten)]
        input: Input,
        /// Truncation order; missing terms are zero. Defaults to the number of terms.
        #[arg(long)]
        order: Option<usize>,
    },
    /// Run the seeded property suites.
    Selftest {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Run a single suite.
        #[arg(long)]
        suite: Option<String>,
        /// Override the number of random cases per suite.
        #[arg(long)]
        cases: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DeformAction {
    Check,
    Classify,
    Trivialize,
    Extend,
}

/// Output of a command. `failed` marks a computed negative verdict (an
/// invalid structure in `check`, a failing suite) that exits with code 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub text: String,
    pub json: Value,
    pub failed: bool,
}

impl Report {
    pub fn render(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string_pretty(&self.json).expect("plain data");
            s.push('\n');
            s
        } else if self.text.ends_with('\n') {
            self.text.clone()
        } else {
            format!("{}\n", self.text)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    pub validate: bool,
    pub degree_cap: usize,
}

impl Options {
    /// Reads the degree cap from the environment.
    pub fn from_env(validate: bool) -> Result<Options, CliError> {
        let degree_cap = match std::env::var(DEGREE_CAP_VAR) {
            Ok(v) => v
                .trim()
                .parse()
                .ok()
                .filter(|&c: &usize| c >= 2)
                .ok_or_else(|| {
                    CliError::Usage(format!(
                        "{DEGREE_CAP_VAR} must be an integer >= 2, got '{v}'"
                    ))
                })?,
            Err(_) => DEFAULT_DEGREE_CAP,
        };
        Ok(Options {
            validate,
            degree_cap,
        })
    }
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let opts = Options::from_env(!cli.no_validate)?;
    commands::dispatch(&cli.command, &opts)
}
