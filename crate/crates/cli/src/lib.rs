//! Command-line front end for `superlocc`: state files, certificates, reports.
//!
//! Exit codes: 0 success, 2 input error (bad arguments, malformed or invalid
//! files), 3 numerical failure (vanishing superposition, replay mismatch).

pub mod certificate;
mod commands;
pub mod parallel;
pub mod report;
pub mod statefile;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use superlocc::bounds::Theorem;
use thiserror::Error;

pub use crate::report::OutputFormat;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Numerical(_) => EXIT_NUMERICAL,
        }
    }
}

impl From<superlocc::Error> for CliError {
    fn from(e: superlocc::Error) -> Self {
        match e {
            superlocc::Error::VanishingSuperposition { .. } => CliError::Numerical(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "superlocc", version, about = "LOCC comparability, superposition and entanglement bounds for pure bipartite states")]
pub struct Cli {
    /// Output format for standard output.
    #[arg(long, value_enum, global = true, default_value_t = OutputFormat::Kv)]
    pub format: OutputFormat,
    /// Accept state files whose squared norm is off by more than 1e-9 and rescale them.
    #[arg(long, global = true)]
    pub renormalize: bool,
    /// Worker threads for sampling commands (output does not depend on it).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeasureName {
    /// Entropy of entanglement (bits).
    E,
    /// Squared generalized concurrence.
    C2,
    /// Negativity.
    N,
    /// Logarithmic negativity (base from --base).
    Ln,
    /// Rényi entropy of order --delta (nats).
    Renyi,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compare two states under deterministic LOCC.
    Classify { a: PathBuf, b: PathBuf },
    /// Evaluate entanglement measures of a state.
    Measure {
        state: PathBuf,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "e,c2,n,ln")]
        measures: Vec<MeasureName>,
        /// Rényi order.
        #[arg(long)]
        delta: Option<f64>,
        /// Logarithm base for log-negativity.
        #[arg(long, default_value_t = 2.0)]
        base: f64,
    },
    /// Superpose two states: (alpha|psi> + beta|phi>) / sqrt(K).
    Superpose {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        /// Defaults to sqrt(1 - alpha^2).
        #[arg(long, allow_negative_numbers = true)]
        beta: Option<f64>,
        psi: PathBuf,
        phi: PathBuf,
        /// Write the normalized superposition as a state file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the entanglement bounds on one instance or a random survey.
    Bounds(BoundsArgs),
    /// Validate the comparability table rows by sampling.
    Tables(TablesArgs),
    /// Search for one instance satisfying a table row.
    Witness(WitnessArgs),
    /// Re-derive certificates and check the recorded values.
    Replay {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Row document for scenario certificates (default: built-in rows).
        #[arg(long)]
        rows: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    /// Comma-separated theorem ids (T1..T9, Chain11) or "all".
    #[arg(long, value_delimiter = ',', default_value = "all")]
    pub theorems: Vec<String>,
    /// Bound instance document.
    #[arg(long, conflicts_with = "random", required_unless_present = "random")]
    pub instance: Option<PathBuf>,
    /// Number of random instances to survey.
    #[arg(long, requires = "seed")]
    pub random: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Sample components on disjoint supports (exactly orthogonal).
    #[arg(long, requires = "random")]
    pub orthogonal_only: bool,
    /// Rényi order for T5 and T6.
    #[arg(long)]
    pub delta: Option<f64>,
    /// Logarithm base for T3 and T4.
    #[arg(long)]
    pub base: Option<f64>,
    /// Drop zero coefficients from min/max scans.
    #[arg(long)]
    pub exclude_zeros: bool,
    /// Directory for counterexample certificates.
    #[arg(long)]
    pub certificates: Option<PathBuf>,
    /// Also write the CSV summary here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TablesArgs {
    /// Cases to run (I..V, comma-separated); default all.
    #[arg(long, value_delimiter = ',', value_parser = parse_case)]
    pub case: Vec<superlocc::scenarios::Case>,
    /// Only these row ids (comma-separated).
    #[arg(long = "row", value_delimiter = ',')]
    pub row_ids: Vec<String>,
    #[arg(long)]
    pub samples: u64,
    #[arg(long)]
    pub seed: u64,
    /// Row document (default: built-in rows).
    #[arg(long)]
    pub rows: Option<PathBuf>,
    /// Write the CSV report here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Sample components on disjoint supports.
    #[arg(long)]
    pub disjoint: bool,
    /// Directory for disagreement certificates.
    #[arg(long)]
    pub certificates: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct WitnessArgs {
    #[arg(long)]
    pub row: String,
    #[arg(long)]
    pub budget: u64,
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub rows: Option<PathBuf>,
    #[arg(long)]
    pub disjoint: bool,
}

/// Expands a theorem list; `all` stands for every theorem. Duplicates are dropped.
pub fn parse_theorems(items: &[String]) -> Result<Vec<Theorem>, CliError> {
    let mut out = Vec::new();
    for s in items {
        let add = if s.trim().eq_ignore_ascii_case("all") {
            Theorem::ALL.to_vec()
        } else {
            vec![Theorem::parse(s).ok_or_else(|| CliError::Input(format!("unknown theorem '{s}'")))?]
        };
        for t in add {
            if !out.contains(&t) {
                out.push(t);
            }
        }
    }
    Ok(out)
}

fn parse_case(s: &str) -> Result<superlocc::scenarios::Case, String> {
    superlocc::scenarios::Case::parse(s).ok_or_else(|| format!("unknown case '{s}'"))
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return if code == 0 { EXIT_OK } else { EXIT_INPUT };
        }
    };
    match commands::dispatch(&cli, out, err) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
