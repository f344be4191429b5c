//! Command-line front end. Every command prints a [`RunReport`] as JSON and exits
//! 0 / 1 / 2 for positive / negative / inconclusive, 64 on malformed input and 65
//! when a Gram does not represent its polynomial.

mod commands;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::Error;
pub use report::{exit, RunReport};

#[derive(Debug, Parser)]
#[command(name = "fwcone", version, about = "Factor-width cone membership and certificates")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Worker threads for block projections.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    /// Seed for randomized steps (none of the current commands draw random numbers).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide membership in FW_k^n.
    CheckFw {
        matrix: PathBuf,
        k: usize,
        /// JSON list of 0-based supports to decompose over.
        #[arg(long)]
        supports: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
        #[arg(long, default_value_t = 20_000)]
        max_iter: usize,
    },
    /// Check every k×k principal submatrix for psd-ness.
    CheckDual {
        matrix: PathBuf,
        k: usize,
        /// Relative tolerance; 0 decides exact input exactly.
        #[arg(long, default_value_t = 0.0)]
        tol: f64,
    },
    /// Test a form for a sum of k-nomial squares, optionally after a multiplier.
    Soks {
        poly: PathBuf,
        k: usize,
        /// Gram matrix JSON; an optional "basis" field lists its monomial order.
        #[arg(long)]
        gram: Option<PathBuf>,
        /// Multiplier power r in (Σ λ_i² x_i²)^r.
        #[arg(short = 'r', default_value_t = 0)]
        r: u32,
        /// Comma-separated multiplier weights (default all ones).
        #[arg(long, value_delimiter = ',')]
        lambda: Option<Vec<String>>,
        /// Without --gram, copy the quadratic's Gram under each multiplier term
        /// instead of splitting coefficients evenly.
        #[arg(long)]
        multiplier_gram: bool,
        /// JSON list of 0-based supports over Gram indices; overrides a "supports"
        /// field in the Gram file.
        #[arg(long)]
        supports: Option<PathBuf>,
        #[arg(long, default_value_t = 20_000)]
        max_iter: usize,
    },
    /// Threshold (n-1)/(k-1) for p_n^a, and a verdict when a is given.
    Pna { n: usize, k: usize, a: Option<String> },
    /// Search for a separating dual certificate.
    Certify { matrix: PathBuf, k: usize },
    /// Eigenvalues of a symmetric matrix.
    Eig { matrix: PathBuf },
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::MALFORMED } else { exit::POSITIVE };
            let _ = write!(if e.use_stderr() { err as &mut dyn Write } else { out as &mut dyn Write }, "{e}");
            return code;
        }
    };
    match commands::dispatch(&cli) {
        Ok(mut report) => {
            report.seed = cli.global.seed;
            report.threads = cli.global.threads;
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            report.exit_code
        }
        Err(e) => {
            let _ = writeln!(err, "fwcone: {e}");
            error_code(&e)
        }
    }
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::GramMismatch(_) => exit::GRAM_MISMATCH,
        Error::NonConvergence { .. } | Error::FixtureCorrupt(_) => exit::INTERNAL,
        _ => exit::MALFORMED,
    }
}
