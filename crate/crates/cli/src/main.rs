mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use dstaylor::verify::ReportFormat;

#[derive(Parser, Debug)]
#[command(
    name = "dstaylor",
    version,
    about = "Double-sided Taylor approximations and their verification"
)]
pub struct Cli {
    /// Working precision in bits.
    #[arg(long, global = true, default_value_t = 256, value_parser = clap::value_parser!(u32).range(64..))]
    pub precision: u32,

    /// Number of sample points for chain checks.
    #[arg(long, global = true, default_value_t = 101, value_parser = clap::value_parser!(u64).range(3..))]
    pub grid: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 12)]
    pub seed: u64,

    /// Print coefficients as 40-digit decimals instead of exact values.
    #[arg(long, global = true)]
    pub decimal: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List catalog functions.
    List,
    /// Print the coefficients of a first or second approximation.
    Bound {
        function: String,
        #[arg(value_enum)]
        kind: BoundKind,
        degree: usize,
    },
    /// Check a nesting chain with the function inserted between the bounds.
    Chain {
        function: String,
        /// Comma-separated ascending degrees, e.g. `0,2,4`.
        #[arg(value_delimiter = ',', required = true)]
        degrees: Vec<usize>,
        /// Evaluate in the mirrored variable `a + b - x`.
        #[arg(long)]
        mirror: bool,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => ReportFormat::Json,
            Format::Csv => ReportFormat::Csv,
            Format::Text => ReportFormat::Text,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BoundKind {
    First,
    Second,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Steckin,
    Wilker,
    Identity12,
    Constants,
    All,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
