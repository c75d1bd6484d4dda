//! `mpcodes`: build, analyze, check, verify and search matrix-product codes.
//!
//! Exit codes: `check` uses 0 holds, 1 fails, 2 inconclusive; `verify` and
//! `search` use 0 for success and 1 for disagreement or no candidate. Usage
//! errors exit 10, I/O errors 11, malformed input 12, other failures 13.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "mpcodes",
    version,
    about = "Matrix-product codes over finite fields"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print `[n,k,d]` for a code, MP or matrix file.
    Info {
        file: PathBuf,
        #[command(flatten)]
        caps: Caps,
        #[command(flatten)]
        out: Output,
    },
    /// Expand an MP description into a code file.
    Mp {
        file: PathBuf,
        #[command(flatten)]
        caps: Caps,
        #[command(flatten)]
        out: Output,
    },
    /// Galois dual of an MP code.
    Dual {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        ell: u32,
        #[command(flatten)]
        caps: Caps,
        #[command(flatten)]
        out: Output,
    },
    /// Decide self-orthogonality or dual-containment from the constituents.
    Check {
        file: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long, default_value_t = 0)]
        ell: u32,
        #[command(flatten)]
        caps: Caps,
        #[command(flatten)]
        out: Output,
    },
    /// Cross-check structured results and file claims by brute force.
    Verify {
        /// MP files; may be omitted with `--random`.
        files: Vec<PathBuf>,
        /// Galois level; defaults to the level named by the file's claims, else 0.
        #[arg(long)]
        ell: Option<u32>,
        /// Also verify this many seeded random instances.
        #[arg(long, default_value_t = 0)]
        random: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest codeword count the oracle enumerates.
        #[arg(long, default_value_t = mpcodes::oracle::DEFAULT_CAP, value_parser = positive)]
        oracle_cap: u64,
        #[command(flatten)]
        caps: Caps,
        #[command(flatten)]
        out: Output,
    },
    /// Randomized constructive search for constituents.
    Search {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long, default_value_t = 0)]
        ell: u32,
        /// Constituent length.
        #[arg(long)]
        n: usize,
        /// Constituent dimensions, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
        /// Smallest accepted minimum distance.
        #[arg(long)]
        target: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Candidates to collect.
        #[arg(long, default_value_t = 1, value_parser = positive_usize)]
        count: usize,
        #[command(flatten)]
        caps: Caps,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    So,
    Dc,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Caps {
    /// Largest q^k enumerated for minimum distance.
    #[arg(long, default_value_t = 1 << 24, value_parser = positive)]
    pub enum_cap: u64,
    /// Work budget for the low-weight distance search.
    #[arg(long, default_value_t = 1 << 26, value_parser = positive)]
    pub lw_cap: u64,
    /// Search attempts; for `check`, the most block pairs tried (twice as many
    /// row subsets).
    #[arg(long, value_parser = positive)]
    pub search_cap: Option<u64>,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    /// Write the produced file here (a directory for `search`).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// One `key: value` line per fact.
    #[arg(long)]
    pub machine: bool,
}

fn positive(s: &str) -> Result<u64, String> {
    match s.parse::<u64>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

fn positive_usize(s: &str) -> Result<usize, String> {
    positive(s).map(|v| v as usize)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if usage { commands::EXIT_USAGE } else { 0 });
        }
    };
    match commands::run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
