//! `pmscheme` command-line tool.

mod cache;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "pmscheme",
    version,
    about = "Eigenvalues of the perfect matching association scheme"
)]
pub struct Cli {
    /// Directory for cached oracle tables.
    #[arg(
        long,
        env = "PMSCHEME_DATA_DIR",
        default_value = ".pmscheme",
        global = true
    )]
    pub data_dir: PathBuf,

    /// Seed for the oracle's random combinations.
    #[arg(long, env = "PMSCHEME_SEED", default_value_t = 1, global = true)]
    pub seed: u64,

    /// Largest n for brute-force intersection numbers.
    #[arg(long, env = "PMSCHEME_MAX_ORACLE_N", default_value_t = 8, global = true,
          value_parser = clap::value_parser!(u16).range(2..))]
    pub max_oracle_n: u16,

    /// Largest n for breadth-first diameter search.
    #[arg(long, env = "PMSCHEME_MAX_DIAMETER_N", default_value_t = 7, global = true,
          value_parser = clap::value_parser!(u16).range(2..))]
    pub max_diameter_n: u16,

    /// Neither read nor write the table cache.
    #[arg(long, global = true)]
    pub no_cache: bool,

    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Print the matrix of eigenvalues for one n.
    Table {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Source::Auto)]
        source: Source,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check one of the stated properties.
    Verify {
        #[command(subcommand)]
        kind: VerifyKind,
    },
    /// Spectral gap of one relation.
    Gap {
        #[arg(long)]
        mu: String,
        /// Pad `mu` with parts equal to 1 up to this size.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Diameter of one relation graph by breadth-first search.
    Diameter {
        #[arg(long)]
        mu: String,
    },
    /// Recover the power-sum expression of a family from oracle columns.
    Fit {
        /// Non-unit parts of the family, e.g. `3,2`.
        prefix: String,
        /// Inclusive range of n, e.g. `5..8`.
        #[arg(long, default_value = "5..8")]
        n_range: String,
        /// Extra n used only to check the result.
        #[arg(long)]
        holdout: Option<usize>,
    },
    /// Smallest gap and largest diameter over all relations of one n.
    Scan {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum VerifyKind {
    /// `[n-1,1]` carries the second largest eigenvalue of every applicable column.
    Conjecture {
        #[arg(long)]
        n: usize,
    },
    /// Trace of `A_μ²` against the table, for every column.
    Trace {
        #[arg(long)]
        n: usize,
    },
    /// Increment inequality of a catalog family at one n.
    Induction {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
    },
    /// Valency and `[n-1,1]` ratios under part merges.
    Ratios {
        #[arg(long)]
        n: usize,
    },
    /// Intersection numbers and the table satisfy the scheme identities.
    SchemeAxioms {
        #[arg(long)]
        n: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Auto,
    Oracle,
    Formulas,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Pretty,
}

/// Result of a command that ran to completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

fn exit_code(err: &anyhow::Error) -> u8 {
    use pmscheme::Error as E;
    match err.downcast_ref::<E>() {
        Some(E::AmbiguousRows(_) | E::Degenerate(_) | E::Internal(_)) => 3,
        Some(E::Inconsistent(_)) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
